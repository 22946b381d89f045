#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uskolem/bigint.hpp"
#include "uskolem/context.hpp"

namespace uss::bh {

/// The pair f1(x) = a1 x + b1, f2(x) = a2 x + b2 with a1, a2 > 0.
class LinearFormPair {
public:
    /// DomainError unless a1, a2 > 0 and the forms differ.
    static LinearFormPair make(std::int64_t a1, std::int64_t b1, std::int64_t a2, std::int64_t b2);

    std::int64_t a1() const noexcept { return a1_; }
    std::int64_t b1() const noexcept { return b1_; }
    std::int64_t a2() const noexcept { return a2_; }
    std::int64_t b2() const noexcept { return b2_; }
    /// |a1 a2 (a1 b2 - a2 b1)|
    const BigInt& delta() const noexcept { return delta_; }
    /// a1 b2 - a2 b1
    const BigInt& cross() const noexcept { return cross_; }
    /// Distinct primes dividing a1, a2 or a1 b2 - a2 b1, ascending.
    const std::vector<std::uint64_t>& delta_primes() const noexcept { return delta_primes_; }

    std::string str() const;

private:
    LinearFormPair() = default;
    std::int64_t a1_ = 1, b1_ = 0, a2_ = 1, b2_ = 0;
    BigInt delta_, cross_;
    std::vector<std::uint64_t> delta_primes_;
};

struct Admissibility {
    bool admissible = true;
    std::optional<std::uint64_t> certificate_prime;  ///< smallest p with omega_f(p) = p
};
Admissibility admissible(const LinearFormPair& pair);

/// Number of roots of f1 f2 modulo p. DomainError if p is not prime.
std::uint64_t omega_f(const LinearFormPair& pair, std::uint64_t p);

struct BhConstant {
    double C_f = 0;
    double tail_bound = 0;
    double twin_constant = 0;  ///< C truncated at the same limit
    double correction = 0;     ///< C_f / C
};
/// C_f = C times local corrections at 2 and at the primes dividing the
/// discriminant data. DomainError for non-admissible pairs.
BhConstant bh_constant(const LinearFormPair& pair, std::uint64_t prime_limit = 1'000'000,
                       const arith::PrimeTable* primes = nullptr);

/// #{1 <= x <= X : f1(x), f2(x) both prime}. ResourceError when a form
/// value exceeds the sieve.
std::uint64_t count_pairs(const LinearFormPair& pair, std::uint64_t X, const Context& ctx);

/// integral_2^X dt / (log t)^2 by adaptive Gauss-Kronrod quadrature.
double log2_integral(double X);

inline constexpr double kWuKappa = 3.418;
inline constexpr double kBrunKappa = 8.0;

struct BoundReport {
    std::string pair;
    std::uint64_t X = 0;
    bool admissible = true;
    std::uint64_t actual = 0;
    double C_f = 0;
    double bh_point = 0;     ///< C_f X / (log X)^2
    double bh_integral = 0;  ///< C_f integral_2^X dt/(log t)^2
    double brun8 = 0;
    double wu = 0;
    double sieve_rhs = 0;    ///< (Delta / phi(Delta)) X / (log X)^2
    bool within_wu() const noexcept { return static_cast<double>(actual) <= wu; }
    bool within_brun8() const noexcept { return static_cast<double>(actual) <= brun8; }
};
/// DomainError for X < 100. Non-admissible pairs report C_f = 0.
BoundReport bound_report(const LinearFormPair& pair, std::uint64_t X, const Context& ctx);

std::string csv_header();
std::string csv_row(const BoundReport& r);

}  // namespace uss::bh
