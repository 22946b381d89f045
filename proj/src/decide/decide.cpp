#include "uskolem/decide/decide.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "uskolem/arith/primality.hpp"
#include "uskolem/error.hpp"

namespace uss::decide {
namespace {

constexpr std::uint64_t kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                          43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

double log_big(const BigInt& a) {
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, a.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

std::uint64_t mix(const BigInt& n, std::uint64_t seed) {
    std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ULL;
    for (const char c : n.get_str(16)) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
    return h;
}

}  // namespace

std::string_view to_string(Certainty c) { return c == Certainty::Exact ? "Exact" : "Probable"; }

BigInt constant_A(const lrs::Lrs& s) {
    BigInt A = 10;
    for (const auto& v : s.coeffs) A = std::max(A, BigInt(abs(v)));
    for (const auto& v : s.inits) A = std::max(A, BigInt(abs(v)));
    return A;
}

arith::TowerExpr zero_bound(const lrs::Lrs& s) {
    if (s.zero || s.order() < 2) throw DomainError("zero_bound needs a non-zero recurrence of order at least 2");
    const BigInt A = constant_A(s);
    const double logA = log_big(A);
    // exp_3(A^2) = exp_4(2 log A) once A^2 leaves double range
    const arith::TowerExpr first = 2 * logA < 700 ? arith::TowerExpr(3, std::exp(2 * logA)) : arith::TowerExpr(4, 2 * logA);
    const double k = static_cast<double>(s.order());
    const arith::TowerExpr second(5, 1e10 * std::pow(k, 6));
    return arith::tower_max(first, second);
}

ZeroCheck is_zero(const lrs::Lrs& s, const BigInt& n, Policy policy, const Context& ctx) {
    if (s.zero) return {true, Certainty::Exact, 0, 0};
    for (const auto p : kSmallPrimes)
        if (lrs::term_mod(s, n, p) != 0) return {false, Certainty::Exact, 0, p};

    if (policy == Policy::ExactBelowCap && n <= big_from_u64(ctx.limits().exact_cap)) {
        const BigInt u = lrs::term_exact(s, n, ctx.limits().exact_cap);
        if (u == 0) return {true, Certainty::Exact, 0, 0};
        for (std::uint64_t p = 101;; p += 2)
            if (arith::is_prime_u64(p) && mod_u64(abs(u), p) != 0) return {false, Certainty::Exact, 0, p};
    }

    std::mt19937_64 rng(mix(n, ctx.limits().seed));
    int used = 0;
    while (used < kProbableModuli) {
        const std::uint64_t m = (std::uint64_t{1} << 61) | (rng() >> 3) | 1;
        if (!arith::is_prime_u64(m)) continue;
        ++used;
        if (lrs::term_mod(s, n, m) != 0) return {false, Certainty::Exact, 0, m};
    }
    return {true, Certainty::Probable, used, 0};
}

FilterResult rep_mod_filter(const lrs::Lrs& s, const BigInt& n, const std::vector<skolem::Representation>& reps) {
    if (reps.empty()) throw DomainError("rep_mod_filter: no representations given");
    for (const auto& r : reps) {
        const bool nonzero = fits_u64(r.P) ? lrs::term_mod(s, n, to_u64(r.P)) != 0 : lrs::term_mod(s, n, r.P) != 0;
        if (nonzero) return {false, r.P};
    }
    return {};
}

ZeroReport find_zeros_in_s(const lrs::Lrs& input, const BigInt& N, Policy policy, const Context& ctx) {
    if (N > big_from_u64(ctx.limits().scan_cap))
        throw ResourceError("find_zeros_in_s: N = " + N.get_str() + " exceeds the scan cap " +
                            std::to_string(ctx.limits().scan_cap));
    ZeroReport rep;
    rep.searched_to = N;

    const lrs::Lrs minimal = lrs::minimize(input);
    if (minimal.zero) {
        rep.zero_progressions.emplace_back(0, 1);
        rep.components.push_back({0, 0, true, lrs::format_lrs(minimal), std::nullopt});
        rep.notes.push_back("the sequence is identically zero: every n is a zero");
        return rep;
    }

    const auto dec = lrs::decompose(minimal);
    rep.modulus = dec.modulus;
    const double scale = 2.0 * static_cast<double>(dec.modulus);
    for (const auto& c : dec.components) {
        ComponentSummary cs{c.residue, c.sequence.order(), c.is_zero(), lrs::format_lrs(c.sequence), std::nullopt};
        if (c.is_zero()) {
            rep.zero_progressions.emplace_back(c.residue, dec.modulus);
        } else if (c.sequence.order() >= 2) {
            cs.bound = zero_bound(c.sequence).scaled_bound(scale);
            rep.theorem_bound = rep.theorem_bound ? arith::tower_max(*rep.theorem_bound, *cs.bound) : *cs.bound;
        } else {
            rep.notes.push_back("component " + std::to_string(c.residue) + " mod " + std::to_string(dec.modulus) +
                                " has order 1 (a nonzero geometric sequence) and no zeros");
        }
        rep.components.push_back(std::move(cs));
    }

    const auto searchable = [&](std::uint64_t i) {
        const auto& c = dec.components[i];
        return !c.is_zero() && c.sequence.order() >= 2;
    };
    bool any_search = false;
    for (std::uint64_t i = 0; i < dec.modulus; ++i) any_search = any_search || searchable(i);

    BigInt last = -1;
    const BigInt M = big_from_u64(dec.modulus);
    for (int w = skolem::kMinWindow; any_search && pow2(w) <= N; ++w) {
        const BigInt hi = std::min(BigInt(pow2(w + 1)), N);
        skolem::enumerate_window(w, std::pair<BigInt, BigInt>{pow2(w), hi}, ctx,
                                 [&](const BigInt& n, const std::vector<skolem::Representation>& reps) {
            if (n <= last) return;
            last = n;
            ++rep.members_seen;
            const std::uint64_t i = mod_u64(n, dec.modulus);
            if (!searchable(i)) return;
            const auto& comp = dec.components[i].sequence;
            const BigInt j = (n - i) / M;
            if (!rep_mod_filter(minimal, n, reps).consistent_with_zero) {
                ++rep.filtered_out;
                return;
            }
            const auto z = is_zero(comp, j, policy, ctx);
            if (z.zero) rep.zeros.push_back({n, z.certainty, z.primes_used});
        });
    }

    if (!rep.zero_progressions.empty())
        rep.notes.push_back("identically zero components: their members of the set are all zeros and are reported "
                            "as progressions, not listed");
    if (rep.theorem_bound && arith::tower_cmp(arith::TowerExpr::real(N.get_d()), *rep.theorem_bound) < 0)
        rep.notes.push_back("searched to N = " + N.get_str() + ", below the zero bound " + rep.theorem_bound->str() +
                            "; zeros beyond N are not excluded");
    if (std::any_of(rep.zeros.begin(), rep.zeros.end(), [](const Zero& z) { return z.certainty == Certainty::Probable; }))
        rep.notes.push_back("probable zeros vanish modulo 64 random 62-bit primes; a nonzero u_n has at most about "
                            "n log2(rho) prime factors, which bounds the chance of a false zero");
    return rep;
}

}  // namespace uss::decide
