#include "uskolem/density/density.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "../parallel.hpp"
#include "uskolem/arith/iterated_log.hpp"
#include "uskolem/arith/number_theory.hpp"
#include "uskolem/error.hpp"
#include "uskolem/skolem/skolem.hpp"

namespace uss::density {
namespace {

using skolem::Reason;

struct Tally {
    std::uint64_t scanned = 0, M0 = 0, M1 = 0, M2 = 0, excluded = 0, with_reps = 0, corr_any = 0, probable = 0;

    void add(std::uint64_t r, Reason reason, bool corr, std::uint64_t probable_reps) {
        ++scanned;
        M1 += r;
        M2 += r * r;
        with_reps += r > 0;
        corr_any += corr;
        probable += probable_reps;
        if (reason == Reason::Member || reason == Reason::CorrelatedPair) {
            ++M0;
            excluded += reason == Reason::CorrelatedPair;
        }
    }
    Tally& operator+=(const Tally& o) {
        scanned += o.scanned;
        M0 += o.M0;
        M1 += o.M1;
        M2 += o.M2;
        excluded += o.excluded;
        with_reps += o.with_reps;
        corr_any += o.corr_any;
        probable += o.probable;
        return *this;
    }
};

void require_under_cap(const BigInt& X, const Context& ctx, const char* what) {
    if (X > big_from_u64(ctx.limits().scan_cap))
        throw ResourceError(std::string(what) + ": window size " + X.get_str() + " exceeds the scan cap " +
                            std::to_string(ctx.limits().scan_cap) + "; use sampling");
}

// Floyd's algorithm: `count` distinct offsets in [0, size), ascending.
std::vector<BigInt> sample_offsets(const BigInt& size, std::uint64_t count, std::uint64_t seed) {
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(static_cast<unsigned long>(seed));
    std::set<BigInt> chosen;
    for (BigInt j = size - count; j < size; ++j) {
        BigInt t = rng.get_z_range(BigInt(j + 1));
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    return {chosen.begin(), chosen.end()};
}

Tally scan_u64(const skolem::WindowParams& params, const std::vector<std::uint64_t>* points, std::uint64_t first,
               std::uint64_t count, const Context& ctx) {
    const skolem::WindowScanner scanner(params, ctx);
    const unsigned threads = std::max(1u, ctx.limits().threads);
    std::vector<Tally> parts(threads);
    detail::parallel_blocks(count, threads, [&](unsigned t, std::uint64_t b, std::uint64_t e) {
        std::vector<skolem::WindowScanner::Rep> reps;
        for (std::uint64_t i = b; i < e; ++i) {
            const std::uint64_t n = points ? (*points)[i] : first + i;
            const auto res = scanner.evaluate(n, reps);
            parts[t].add(reps.size(), res.reason, res.has_correlated_pair, 0);
        }
    });
    Tally total;
    for (const auto& p : parts) total += p;
    return total;
}

Tally scan_big(const skolem::WindowParams& params, const std::vector<BigInt>& points, const Context& ctx) {
    const unsigned threads = std::max(1u, ctx.limits().threads);
    std::vector<Tally> parts(threads);
    detail::parallel_blocks(points.size(), threads, [&](unsigned t, std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t i = b; i < e; ++i) {
            const auto v = skolem::window_verdict(points[i], params, ctx);
            std::uint64_t probable = 0;
            for (const auto& r : v.reps) probable += r.certainty == arith::Certainty::ProbablePrime;
            parts[t].add(v.reps.size(), v.reason, v.has_correlated_pair, probable);
        }
    });
    Tally total;
    for (const auto& p : parts) total += p;
    return total;
}

struct PrimeRange {
    std::uint64_t lo, hi;  // primes P with X <= qP + a <= 2X
};

PrimeRange prime_range(const skolem::WindowParams& p, std::uint64_t q, std::int64_t a) {
    const std::uint64_t X = to_u64(p.X), ua = static_cast<std::uint64_t>(a);
    return {(X - ua + q - 1) / q, (2 * X - ua) / q};
}

void require_table(const Context& ctx, std::uint64_t hi, const char* what) {
    if (hi > ctx.primes().limit())
        throw ResourceError(std::string(what) + ": needs primes up to " + std::to_string(hi) + " but the sieve stops at " +
                            std::to_string(ctx.primes().limit()));
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
    BigInt r;
    const BigInt A = big_from_u64(a % m), M = big_from_u64(m);
    if (mpz_invert(r.get_mpz_t(), A.get_mpz_t(), M.get_mpz_t()) == 0) throw ContractViolation("inverse_mod");
    return to_u64(r);
}

}  // namespace

std::string_view to_string(SampleMode m) { return m == SampleMode::Full ? "Full" : "Sampled"; }

WindowStats moment_scan(int w, std::optional<Sample> sample, const Context& ctx) {
    const auto params = skolem::window_params(w);
    WindowStats s;
    s.w = w;
    s.X = params.X;
    s.mode = sample ? SampleMode::Sampled : SampleMode::Full;
    s.sample = sample;
    const BigInt size = params.X + 1;

    if (sample) {
        if (sample->count == 0 || big_from_u64(sample->count) > size)
            throw DomainError("moment_scan: sample count must lie in [1, X + 1]");
        if (sample->count > ctx.limits().scan_cap)
            throw ResourceError("moment_scan: sample count exceeds the scan cap");
    }

    Tally t;
    if (params.q_primes.empty()) {
        // r(n) = 0 everywhere, no scan needed.
        if (!sample && !fits_u64(size)) throw ResourceError("moment_scan: window too large to count");
        t.scanned = sample ? sample->count : to_u64(size);
    } else if (!sample) {
        require_under_cap(params.X, ctx, "moment_scan");
        t = scan_u64(params, nullptr, to_u64(params.X), to_u64(size), ctx);
    } else {
        auto offsets = sample_offsets(size, sample->count, sample->seed);
        for (auto& o : offsets) o += params.X;
        if (params.w <= 62) {
            std::vector<std::uint64_t> pts;
            pts.reserve(offsets.size());
            for (const auto& o : offsets) pts.push_back(to_u64(o));
            t = scan_u64(params, &pts, 0, pts.size(), ctx);
        } else {
            t = scan_big(params, offsets, ctx);
        }
    }

    s.scanned = t.scanned;
    s.M0 = t.M0;
    s.M1 = t.M1;
    s.M2 = t.M2;
    s.excluded_correlated = t.excluded;
    s.with_reps = t.with_reps;
    s.correlated_any = t.corr_any;
    s.members = t.M0 - t.excluded;
    s.probable_tags = t.probable;
    s.density_estimate = s.scanned ? static_cast<double>(s.members) / static_cast<double>(s.scanned) : 0.0;
    return s;
}

std::uint64_t first_moment_oracle(int w, const Context& ctx) {
    const auto params = skolem::window_params(w);
    if (params.q_primes.empty()) return 0;
    require_under_cap(params.X, ctx, "first_moment_oracle");
    std::uint64_t total = 0;
    for (const auto q : params.q_primes)
        for (const auto a : params.a_values) {
            const auto [lo, hi] = prime_range(params, q, a);
            require_table(ctx, hi, "first_moment_oracle");
            if (lo <= hi) total += ctx.primes().count(lo, hi);
        }
    return total;
}

std::uint64_t second_moment_pair_count(int w, const Context& ctx) {
    const auto params = skolem::window_params(w);
    if (params.q_primes.empty()) return 0;
    require_under_cap(params.X, ctx, "second_moment_pair_count");
    const auto& table = ctx.primes();
    std::uint64_t total = 0;
    for (const auto q : params.q_primes)
        for (const auto a : params.a_values) {
            const auto [lo, hi] = prime_range(params, q, a);
            require_table(ctx, hi, "second_moment_pair_count");
            if (lo > hi) continue;
            for (const auto q2 : params.q_primes)
                for (const auto a2 : params.a_values) {
                    if (q == q2 && a == a2) {
                        total += table.count(lo, hi);
                    } else if (q == q2) {
                        // P' = P + (a - a') / q
                        const std::int64_t d = a - a2;
                        if (d % static_cast<std::int64_t>(q) != 0) continue;
                        const std::int64_t shift = d / static_cast<std::int64_t>(q);
                        table.for_each_prime(lo, hi, [&](std::uint64_t P) {
                            const std::int64_t P2 = static_cast<std::int64_t>(P) + shift;
                            if (P2 >= 2 && ctx.is_prime(static_cast<std::uint64_t>(P2))) ++total;
                        });
                    } else {
                        // P = P0 + q't and P' = (qP + a - a') / q'
                        const std::int64_t diff = ((a2 - a) % static_cast<std::int64_t>(q2) + static_cast<std::int64_t>(q2)) %
                                                  static_cast<std::int64_t>(q2);
                        const std::uint64_t P0 = static_cast<std::uint64_t>(diff) * inverse_mod(q, q2) % q2;
                        std::uint64_t P = lo + (P0 + q2 - lo % q2) % q2;
                        for (; P <= hi; P += q2) {
                            if (!table.is_prime(P)) continue;
                            const std::int64_t num = static_cast<std::int64_t>(q * P) + a - a2;
                            if (num <= 0) continue;
                            const std::uint64_t P2 = static_cast<std::uint64_t>(num) / q2;
                            if (ctx.is_prime(P2)) ++total;
                        }
                    }
                }
        }
    return total;
}

Predictions predictions(int w) {
    const auto params = skolem::window_params(w);
    const double log3 = arith::iterated_log_from_log(params.log_x, 3);
    const double X = std::ldexp(1.0, w);
    return {X * std::sqrt(log3), X * log3};
}

Census correlated_census(int w, std::optional<Sample> sample, const Context& ctx) {
    const auto s = moment_scan(w, sample, ctx);
    const auto params = skolem::window_params(w);
    return {s.correlated_any, s.scanned, std::ldexp(1.0, w) / std::cbrt(params.log_x), s.probable_tags};
}

MeanG mean_g_check(std::uint64_t Y) {
    if (Y > 100'000'000) throw DomainError("mean_g_check: Y must be at most 10^8");
    MeanG out;
    out.Y = Y;
    // g(2m) = g(m), so sum g(m) over m <= Y/2.
    const std::uint64_t M = Y / 2;
    long double sum = 0, comp = 0;
    if (M >= 1) {
        const std::uint64_t root = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::sqrt(static_cast<double>(M))) + 1);
        const auto small = arith::PrimeTable::build(root).primes(3, root);
        constexpr std::uint64_t kSeg = std::uint64_t{1} << 16;
        std::vector<std::uint64_t> rem(kSeg);
        std::vector<long double> val(kSeg);
        for (std::uint64_t lo = 1; lo <= M; lo += kSeg) {
            const std::uint64_t len = std::min(kSeg, M - lo + 1);
            for (std::uint64_t i = 0; i < len; ++i) {
                rem[i] = lo + i;
                val[i] = 1.0L;
            }
            for (const std::uint64_t p : small) {
                const long double factor = static_cast<long double>(p - 1) / static_cast<long double>(p - 2);
                for (std::uint64_t m = (lo + p - 1) / p * p; m < lo + len; m += p) {
                    const std::uint64_t i = m - lo;
                    val[i] *= factor;
                    while (rem[i] % p == 0) rem[i] /= p;
                }
            }
            for (std::uint64_t i = 0; i < len; ++i) {
                std::uint64_t r = rem[i] >> std::countr_zero(rem[i]);
                long double g = val[i];
                if (r > 1) g *= static_cast<long double>(r - 1) / static_cast<long double>(r - 2);
                const long double y = g - comp;
                const long double t = sum + y;
                comp = (t - sum) - y;
                sum = t;
            }
        }
    }
    out.lhs = sum;
    const auto C = arith::euler_products(1'000'000);
    out.rhs = static_cast<double>(Y) / C.value;
    out.rhs_tail = out.rhs * C.tail_bound / (C.value - C.tail_bound);
    out.rel_err = out.rhs > 0 ? static_cast<double>(std::fabs(out.lhs - out.rhs) / out.rhs) : 0.0;
    return out;
}

std::string csv_header() {
    return "w,X,scanned,M0,M1,M2,excluded_correlated,m1_pred,m2_pred,density_estimate,mode,seed";
}

std::string csv_row(const WindowStats& s) {
    const auto pred = predictions(s.w);
    char reals[128];
    std::snprintf(reals, sizeof reals, "%.10g,%.10g,%.10g", pred.m1_pred, pred.m2_pred, s.density_estimate);
    std::string row = std::to_string(s.w) + "," + s.X.get_str() + "," + std::to_string(s.scanned) + "," +
                      std::to_string(s.M0) + "," + std::to_string(s.M1) + "," + std::to_string(s.M2) + "," +
                      std::to_string(s.excluded_correlated) + "," + reals + "," + std::string(to_string(s.mode)) + ",";
    if (s.sample) row += std::to_string(s.sample->seed);
    return row;
}

}  // namespace uss::density
