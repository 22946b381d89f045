#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "uskolem/arith/prime_table.hpp"
#include "uskolem/bigint.hpp"

namespace uss::arith {

/// Prime factorisation of n >= 1 as (prime, exponent) pairs, primes ascending.
std::vector<std::pair<std::uint64_t, int>> factor_u64(std::uint64_t n);

/// Euler's totient of n >= 1.
std::uint64_t totient(std::uint64_t n);

/// Sum of 1/q over primes q in [lo, hi] (inclusive, real endpoints).
/// ResourceError if hi lies beyond the table.
double prime_harmonic_sum(double lo, double hi, const PrimeTable& primes);

struct EulerProduct {
    double value = 0;       ///< truncated product
    double tail_bound = 0;  ///< |true - truncated| <= tail_bound
};

/// C = 2 * prod_{2<p<=prime_limit} p(p-2)/(p-1)^2, the twin-prime constant,
/// with the tail estimate sum_{p>L} 1/(p-1)^2 <= 2/L.
/// Builds its own sieve when `primes` is null or too small.
EulerProduct euler_products(std::uint64_t prime_limit, const PrimeTable* primes = nullptr);

/// prod_{2<p<=prime_limit} (1 + 1/(p(p-2))).
double odd_prime_g_product(std::uint64_t prime_limit, const PrimeTable* primes = nullptr);

/// g(m) = prod_{p | m, p > 2} (p-1)/(p-2). DomainError for m = 0.
Rational mult_g(std::uint64_t m);

/// m / phi(m). DomainError for m = 0.
Rational phi_ratio(std::uint64_t m);

}  // namespace uss::arith
