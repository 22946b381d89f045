#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "uskolem/arith/primality.hpp"
#include "uskolem/bigint.hpp"
#include "uskolem/context.hpp"

namespace uss::skolem {

/// The set is the union of the windows S(2^w) for w >= kMinWindow.
inline constexpr int kMinWindow = 10;

/// Closed real interval.
struct Interval {
    double lo = 0;
    double hi = 0;
};

/// Parameters of the window [X, 2X] with X = 2^w.
struct WindowParams {
    int w = 0;
    BigInt X;
    double log_x = 0;          ///< w log 2
    Interval a_interval;       ///< [log_2 X, sqrt(log X)], where the primes q live
    Interval b_interval;       ///< [log X / sqrt(log_3 X), 2 log X / sqrt(log_3 X)], the shifts a
    double threshold = 0;      ///< log_4 X; members need r(n) > threshold
    double gap = 0;            ///< sqrt(log X), the correlation gap
    std::vector<std::uint64_t> q_primes;  ///< primes in a_interval, ascending
    std::vector<std::int64_t> a_values;   ///< integers in b_interval, ascending

    BigInt two_x() const { return 2 * X; }
};

/// DomainError for w < kMinWindow.
WindowParams window_params(int w);

/// n = P q + a with q, P prime, q in A(X), a in B(X).
struct Representation {
    std::uint64_t q = 0;
    BigInt P;
    std::int64_t a = 0;
    arith::Certainty certainty = arith::Certainty::Prime;  ///< of P

    friend bool operator==(const Representation&, const Representation&) = default;
};

/// Every representation of n in the window, ordered by q then a.
/// DomainError if n lies outside [X, 2X].
std::vector<Representation> representations(const BigInt& n, const WindowParams& params,
                                            const Context& ctx);

/// q != q', a != a' and |(a + eta q) - (a' + eta q')| < sqrt(log X) for some eta = +-1.
bool correlated(const Representation& r1, const Representation& r2, const WindowParams& params);
bool correlated(std::uint64_t q1, std::int64_t a1, std::uint64_t q2, std::int64_t a2,
                const WindowParams& params);

enum class Reason { BelowRange, NoWindowPrimes, TooFewReps, CorrelatedPair, Member };
std::string_view to_string(Reason r);

/// Outcome of testing n against a single window.
struct WindowVerdict {
    int w = 0;
    Reason reason = Reason::NoWindowPrimes;
    std::vector<Representation> reps;
    bool has_correlated_pair = false;

    bool member() const noexcept { return reason == Reason::Member; }
    /// ProbablePrime if any representation prime is only probable.
    arith::Certainty weakest_certainty() const;
};

WindowVerdict window_verdict(const BigInt& n, const WindowParams& params, const Context& ctx);

struct Membership {
    bool member = false;
    std::optional<int> window;          ///< window that decided the answer
    std::vector<Representation> reps;   ///< representations in that window
    Reason reason = Reason::BelowRange;
    std::vector<int> windows_checked;
};

/// Tests every window w >= 10 with 2^w <= n <= 2^{w+1}; a power of two is
/// tested in both adjacent windows and membership in either suffices. When
/// no window grants membership the verdict that got furthest is reported.
Membership in_s(const BigInt& n, const Context& ctx);

/// Members of S(2^w), optionally restricted to [lo, hi], in increasing order.
/// ResourceError when the scanned range exceeds the context's scan cap.
using MemberSink = std::function<void(const BigInt& n, const std::vector<Representation>& reps)>;
void enumerate_window(int w, std::optional<std::pair<BigInt, BigInt>> subrange, const Context& ctx,
                      const MemberSink& sink);

/// Fast per-integer evaluator for full window scans over 64-bit n.
class WindowScanner {
public:
    struct Rep {
        std::uint64_t q;
        std::uint64_t P;
        std::int64_t a;
    };
    struct Result {
        Reason reason;
        bool has_correlated_pair;
    };

    WindowScanner(const WindowParams& params, const Context& ctx);

    /// n must lie in [X, 2X] and 2X must fit in 64 bits. `reps` is overwritten.
    Result evaluate(std::uint64_t n, std::vector<Rep>& reps) const;

    const WindowParams& params() const noexcept { return params_; }

private:
    const WindowParams& params_;
    const Context& ctx_;
};

}  // namespace uss::skolem
