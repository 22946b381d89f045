#pragma once

#include <cstdint>
#include <memory>

#include "uskolem/arith/primality.hpp"
#include "uskolem/arith/prime_table.hpp"
#include "uskolem/bigint.hpp"

namespace uss {

/// Caps and knobs shared by every scan.
struct Limits {
    std::uint64_t scan_cap = std::uint64_t{1} << 26;  ///< max integers in one window scan
    std::uint64_t exact_cap = 2'000'000;              ///< max index for exact LRS evaluation
    int probable_prime_rounds = arith::kDefaultExtraRounds;
    unsigned threads = 1;
    std::uint64_t seed = 1;
};

/// Read-only state for the scans: a shared prime table plus limits.
/// Safe to share across threads.
class Context {
public:
    Context(std::shared_ptr<const arith::PrimeTable> primes, Limits limits = {});

    /// Convenience: builds a fresh table of the given limit.
    static Context with_sieve(std::uint64_t sieve_limit, Limits limits = {});

    const arith::PrimeTable& primes() const noexcept { return *primes_; }
    std::shared_ptr<const arith::PrimeTable> primes_ptr() const noexcept { return primes_; }
    const Limits& limits() const noexcept { return limits_; }

    /// Table lookup when n is within the sieve, deterministic Miller-Rabin
    /// below 2^64, BPSW plus the configured extra rounds above.
    arith::PrimalityResult check_prime(const BigInt& n) const;
    bool is_prime(std::uint64_t n) const;

private:
    std::shared_ptr<const arith::PrimeTable> primes_;
    Limits limits_;
};

}  // namespace uss
