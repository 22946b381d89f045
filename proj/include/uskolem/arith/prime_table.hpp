#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace uss::arith {

/// Default upper bound on the sieve limit (about 250 MiB of bits).
inline constexpr std::uint64_t kDefaultSieveMemoryBound = std::uint64_t{1} << 32;

/// Immutable bit-packed sieve over the odd integers. Bit i of the table
/// stands for 2i+1 and is set iff that number is prime.
class PrimeTable {
public:
    /// Segmented sieve of Eratosthenes for [0, limit].
    /// Throws DomainError if limit < 2, ResourceError if limit > memory_bound.
    static PrimeTable build(std::uint64_t limit,
                            std::uint64_t memory_bound = kDefaultSieveMemoryBound);

    std::uint64_t limit() const noexcept { return limit_; }

    /// n must be <= limit(); larger n throws ResourceError.
    bool is_prime(std::uint64_t n) const;

    /// Number of primes in [lo, hi], clipped to [0, limit()].
    std::uint64_t count(std::uint64_t lo, std::uint64_t hi) const;

    /// Calls fn(p) for every prime p in [lo, hi] in increasing order.
    void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                        const std::function<void(std::uint64_t)>& fn) const;

    std::vector<std::uint64_t> primes(std::uint64_t lo, std::uint64_t hi) const;

    const std::vector<std::uint64_t>& words() const noexcept { return bits_; }

    // Cache file layout: 1 version byte, little-endian u64 limit, then the
    // bit array as little-endian u64 words.
    static constexpr std::uint8_t kCacheVersion = 1;
    void save(const std::filesystem::path& path) const;
    /// Returns false (and leaves out untouched) when the file is missing,
    /// has another version or limit, or fails the integrity spot checks.
    static bool load(const std::filesystem::path& path, std::uint64_t expected_limit,
                     PrimeTable& out, std::string* why = nullptr);

    friend bool operator==(const PrimeTable&, const PrimeTable&) = default;

private:
    PrimeTable() = default;
    bool odd_bit(std::uint64_t i) const noexcept { return (bits_[i >> 6] >> (i & 63)) & 1u; }

    std::uint64_t limit_ = 0;
    std::vector<std::uint64_t> bits_;
};

}  // namespace uss::arith
