#include <algorithm>

#include "../parallel.hpp"
#include "uskolem/error.hpp"
#include "uskolem/skolem/skolem.hpp"

namespace uss::skolem {
namespace {

constexpr std::uint64_t kChunk = std::uint64_t{1} << 15;

bool any_correlated(const std::vector<WindowScanner::Rep>& reps, const WindowParams& params) {
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j)
            if (correlated(reps[i].q, reps[i].a, reps[j].q, reps[j].a, params)) return true;
    return false;
}

Reason classify(std::size_t r, bool has_correlated, const WindowParams& params) {
    if (!(static_cast<double>(r) > params.threshold)) return Reason::TooFewReps;
    return has_correlated ? Reason::CorrelatedPair : Reason::Member;
}

void check_window_range(const BigInt& n, const WindowParams& params) {
    if (n < params.X || n > params.two_x())
        throw DomainError("n = " + n.get_str() + " lies outside the window [2^" + std::to_string(params.w) +
                          ", 2^" + std::to_string(params.w + 1) + "]");
}

bool fits_fast_path(const WindowParams& params) { return params.w <= 62; }

Representation to_representation(const WindowScanner::Rep& r) {
    return {r.q, big_from_u64(r.P), r.a, arith::Certainty::Prime};
}

}  // namespace

std::string_view to_string(Reason r) {
    switch (r) {
        case Reason::BelowRange: return "BelowRange";
        case Reason::NoWindowPrimes: return "NoWindowPrimes";
        case Reason::TooFewReps: return "TooFewReps";
        case Reason::CorrelatedPair: return "CorrelatedPair";
        case Reason::Member: return "Member";
    }
    return "?";
}

arith::Certainty WindowVerdict::weakest_certainty() const {
    for (const auto& r : reps)
        if (r.certainty == arith::Certainty::ProbablePrime) return arith::Certainty::ProbablePrime;
    return arith::Certainty::Prime;
}

WindowScanner::WindowScanner(const WindowParams& params, const Context& ctx) : params_(params), ctx_(ctx) {
    if (!fits_fast_path(params)) throw ContractViolation("WindowScanner: window too large for 64-bit scan");
}

WindowScanner::Result WindowScanner::evaluate(std::uint64_t n, std::vector<Rep>& reps) const {
    reps.clear();
    if (params_.q_primes.empty()) return {Reason::NoWindowPrimes, false};
    for (const std::uint64_t q : params_.q_primes) {
        const std::uint64_t residue = n % q;
        for (const std::int64_t a : params_.a_values) {
            if (static_cast<std::uint64_t>(a) % q != residue) continue;
            const std::uint64_t P = (n - static_cast<std::uint64_t>(a)) / q;
            if (ctx_.is_prime(P)) reps.push_back({q, P, a});
        }
    }
    const bool corr = any_correlated(reps, params_);
    return {classify(reps.size(), corr, params_), corr};
}

std::vector<Representation> representations(const BigInt& n, const WindowParams& params, const Context& ctx) {
    check_window_range(n, params);
    std::vector<Representation> out;
    if (fits_fast_path(params)) {
        std::vector<WindowScanner::Rep> reps;
        WindowScanner(params, ctx).evaluate(to_u64(n), reps);
        for (const auto& r : reps) out.push_back(to_representation(r));
        return out;
    }
    for (const std::uint64_t q : params.q_primes) {
        const std::uint64_t residue = mod_u64(n, q);
        for (const std::int64_t a : params.a_values) {
            if (static_cast<std::uint64_t>(a) % q != residue) continue;
            BigInt P = n - a;
            mpz_divexact_ui(P.get_mpz_t(), P.get_mpz_t(), q);
            const auto pr = ctx.check_prime(P);
            if (pr.is_prime()) out.push_back({q, std::move(P), a, pr.certainty});
        }
    }
    return out;
}

WindowVerdict window_verdict(const BigInt& n, const WindowParams& params, const Context& ctx) {
    WindowVerdict v;
    v.w = params.w;
    v.reps = representations(n, params, ctx);
    if (params.q_primes.empty()) {
        v.reason = Reason::NoWindowPrimes;
        return v;
    }
    for (std::size_t i = 0; i < v.reps.size() && !v.has_correlated_pair; ++i)
        for (std::size_t j = i + 1; j < v.reps.size(); ++j)
            if (correlated(v.reps[i], v.reps[j], params)) {
                v.has_correlated_pair = true;
                break;
            }
    v.reason = classify(v.reps.size(), v.has_correlated_pair, params);
    return v;
}

Membership in_s(const BigInt& n, const Context& ctx) {
    Membership m;
    if (n < pow2(kMinWindow)) return m;
    const int top = static_cast<int>(bit_length(n)) - 1;  // 2^top <= n < 2^{top+1}
    std::vector<int> windows;
    if (mpz_popcount(n.get_mpz_t()) == 1 && top - 1 >= kMinWindow) windows.push_back(top - 1);
    windows.push_back(top);

    std::optional<WindowVerdict> best;
    for (const int w : windows) {
        m.windows_checked.push_back(w);
        auto v = window_verdict(n, window_params(w), ctx);
        if (!best || v.reason > best->reason) best = std::move(v);
        if (best->member()) break;
    }
    m.member = best->member();
    m.window = best->w;
    m.reason = best->reason;
    m.reps = std::move(best->reps);
    return m;
}

void enumerate_window(int w, std::optional<std::pair<BigInt, BigInt>> subrange, const Context& ctx,
                      const MemberSink& sink) {
    const WindowParams params = window_params(w);
    BigInt lo = params.X, hi = params.two_x();
    if (subrange) {
        lo = std::max(lo, subrange->first);
        hi = std::min(hi, subrange->second);
    }
    if (lo > hi || params.q_primes.empty()) return;
    if (hi - lo > big_from_u64(ctx.limits().scan_cap))
        throw ResourceError("enumerate_window: range of " + BigInt(hi - lo + 1).get_str() +
                            " integers exceeds the scan cap " + std::to_string(ctx.limits().scan_cap) +
                            "; split it into subranges");

    if (!fits_fast_path(params)) {
        for (BigInt n = lo; n <= hi; ++n) {
            auto v = window_verdict(n, params, ctx);
            if (v.member()) sink(n, v.reps);
        }
        return;
    }

    const WindowScanner scanner(params, ctx);
    const std::uint64_t first = to_u64(lo), last = to_u64(hi);
    const unsigned threads = std::max(1u, ctx.limits().threads);
    using Found = std::vector<std::pair<std::uint64_t, std::vector<WindowScanner::Rep>>>;
    for (std::uint64_t group = first; group <= last;) {
        const std::uint64_t group_len = std::min<std::uint64_t>(last - group + 1, kChunk * threads);
        std::vector<Found> found(threads);
        detail::parallel_blocks(group_len, threads, [&](unsigned t, std::uint64_t b, std::uint64_t e) {
            std::vector<WindowScanner::Rep> reps;
            for (std::uint64_t i = b; i < e; ++i) {
                if (scanner.evaluate(group + i, reps).reason == Reason::Member) found[t].emplace_back(group + i, reps);
            }
        });
        for (const auto& block : found)
            for (const auto& [n, reps] : block) {
                std::vector<Representation> out;
                out.reserve(reps.size());
                for (const auto& r : reps) out.push_back(to_representation(r));
                sink(big_from_u64(n), out);
            }
        group += group_len;
    }
}

}  // namespace uss::skolem
