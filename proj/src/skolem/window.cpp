#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "uskolem/arith/iterated_log.hpp"
#include "uskolem/arith/primality.hpp"
#include "uskolem/error.hpp"
#include "uskolem/skolem/skolem.hpp"

namespace uss::skolem {
namespace {

using HighPrecision = boost::multiprecision::cpp_bin_float_50;

// Integers closer than this to a double endpoint are re-decided in 50 digits.
constexpr double kEndpointGuard = 1e-9;

HighPrecision hp_iterated_log_from_log(const HighPrecision& y, int j) {
    if (j == 1) return y;
    if (y <= 0) return HighPrecision(1);
    HighPrecision inner = hp_iterated_log_from_log(log(y), j - 1);
    return inner > 1 ? inner : HighPrecision(1);
}

struct PreciseEndpoints {
    HighPrecision a_lo, a_hi, b_lo, b_hi, gap;
};

PreciseEndpoints precise_endpoints(int w) {
    const HighPrecision L = HighPrecision(w) * log(HighPrecision(2));
    const HighPrecision root3 = sqrt(hp_iterated_log_from_log(L, 3));
    return {hp_iterated_log_from_log(L, 2), sqrt(L), L / root3, 2 * L / root3, sqrt(L)};
}

// v >= endpoint (ge) or v <= endpoint (!ge), settling near-ties precisely.
bool compare_guarded(double v, double endpoint, bool ge, int w,
                     HighPrecision PreciseEndpoints::*field) {
    if (std::abs(v - endpoint) > kEndpointGuard) return ge ? v >= endpoint : v <= endpoint;
    const HighPrecision precise = precise_endpoints(w).*field;
    return ge ? HighPrecision(v) >= precise : HighPrecision(v) <= precise;
}

}  // namespace

WindowParams window_params(int w) {
    if (w < kMinWindow) throw DomainError("window_params: w must be >= 10");
    WindowParams p;
    p.w = w;
    p.X = pow2(static_cast<unsigned long>(w));
    p.log_x = w * std::log(2.0);
    const double log2x = arith::iterated_log_from_log(p.log_x, 2);
    const double log3x = arith::iterated_log_from_log(p.log_x, 3);
    p.a_interval = {log2x, std::sqrt(p.log_x)};
    p.b_interval = {p.log_x / std::sqrt(log3x), 2 * p.log_x / std::sqrt(log3x)};
    p.threshold = arith::iterated_log_from_log(p.log_x, 4);
    p.gap = std::sqrt(p.log_x);

    const auto q_first = static_cast<std::int64_t>(std::floor(p.a_interval.lo)) - 1;
    const auto q_last = static_cast<std::int64_t>(std::ceil(p.a_interval.hi)) + 1;
    for (std::int64_t q = std::max<std::int64_t>(q_first, 2); q <= q_last; ++q) {
        const double v = static_cast<double>(q);
        if (!compare_guarded(v, p.a_interval.lo, true, w, &PreciseEndpoints::a_lo)) continue;
        if (!compare_guarded(v, p.a_interval.hi, false, w, &PreciseEndpoints::a_hi)) continue;
        if (arith::is_prime_u64(static_cast<std::uint64_t>(q))) p.q_primes.push_back(static_cast<std::uint64_t>(q));
    }
    const auto a_first = static_cast<std::int64_t>(std::floor(p.b_interval.lo)) - 1;
    const auto a_last = static_cast<std::int64_t>(std::ceil(p.b_interval.hi)) + 1;
    for (std::int64_t a = a_first; a <= a_last; ++a) {
        const double v = static_cast<double>(a);
        if (!compare_guarded(v, p.b_interval.lo, true, w, &PreciseEndpoints::b_lo)) continue;
        if (!compare_guarded(v, p.b_interval.hi, false, w, &PreciseEndpoints::b_hi)) continue;
        p.a_values.push_back(a);
    }
    return p;
}

bool correlated(std::uint64_t q1, std::int64_t a1, std::uint64_t q2, std::int64_t a2,
                const WindowParams& params) {
    if (q1 == q2 || a1 == a2) return false;
    const auto iq1 = static_cast<std::int64_t>(q1), iq2 = static_cast<std::int64_t>(q2);
    for (const std::int64_t eta : {1, -1}) {
        const std::int64_t d = (a1 + eta * iq1) - (a2 + eta * iq2);
        const double dist = static_cast<double>(d < 0 ? -d : d);
        // dist < gap, i.e. not (dist >= gap)
        if (!compare_guarded(dist, params.gap, true, params.w, &PreciseEndpoints::gap)) return true;
    }
    return false;
}

bool correlated(const Representation& r1, const Representation& r2, const WindowParams& params) {
    return correlated(r1.q, r1.a, r2.q, r2.a, params);
}

}  // namespace uss::skolem
