#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "uskolem/bigint.hpp"
#include "uskolem/context.hpp"

namespace uss::density {

struct Sample {
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
};

enum class SampleMode { Full, Sampled };
std::string_view to_string(SampleMode m);

/// Moments of r(n) over the scanned part of the window [X, 2X].
/// M1 and M2 sum r(n) and r(n)^2 over every scanned n; M0 counts r(n) > tau.
struct WindowStats {
    int w = 0;
    BigInt X;
    std::uint64_t scanned = 0;
    std::uint64_t M0 = 0;
    std::uint64_t M1 = 0;
    std::uint64_t M2 = 0;
    std::uint64_t excluded_correlated = 0;  ///< r(n) > tau but some pair is correlated
    std::uint64_t with_reps = 0;            ///< r(n) >= 1
    std::uint64_t correlated_any = 0;       ///< at least one correlated pair, regardless of r(n)
    std::uint64_t members = 0;              ///< M0 - excluded_correlated
    std::uint64_t probable_tags = 0;        ///< representations resting on probable primes
    double density_estimate = 0;            ///< members / scanned
    SampleMode mode = SampleMode::Full;
    std::optional<Sample> sample;
};

/// Full scan when `sample` is empty (requires X <= scan cap), otherwise a
/// uniform sample without replacement of sample->count integers of [X, 2X].
/// Results depend only on (w, sample), never on the thread count.
/// A window with no prime in A(X) yields exact all-zero stats without scanning.
WindowStats moment_scan(int w, std::optional<Sample> sample, const Context& ctx);

/// sum_{n in [X, 2X]} r(n) as a triple count over (q, a, P).
/// ResourceError when X exceeds the scan cap or 2X/q exceeds the sieve.
std::uint64_t first_moment_oracle(int w, const Context& ctx);

/// Ordered pairs of representations of a common n in [X, 2X], counted by
/// solving qP + a = q'P' + a' for every quadruple (q, a, q', a').
std::uint64_t second_moment_pair_count(int w, const Context& ctx);

struct Predictions {
    double m1_pred = 0;  ///< X sqrt(log_3 X)
    double m2_pred = 0;  ///< X log_3 X
};
Predictions predictions(int w);

struct Census {
    std::uint64_t count = 0;  ///< n with at least one correlated pair
    std::uint64_t scanned = 0;
    double bound_ref = 0;     ///< X / (log X)^{1/3}
    std::uint64_t probable_tags = 0;
};
Census correlated_census(int w, std::optional<Sample> sample, const Context& ctx);

struct MeanG {
    std::uint64_t Y = 0;
    long double lhs = 0;  ///< sum of g(n) over even n <= Y
    double rhs = 0;       ///< Y / C
    double rhs_tail = 0;  ///< bound on the truncation error of rhs
    double rel_err = 0;
};
/// DomainError for Y > 10^8.
MeanG mean_g_check(std::uint64_t Y);

/// Header and row for the CSV report.
std::string csv_header();
std::string csv_row(const WindowStats& s);

}  // namespace uss::density
