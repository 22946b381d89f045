#pragma once

#include <cstdint>
#include <string_view>

#include "uskolem/bigint.hpp"

namespace uss::arith {

enum class Certainty { Composite, Prime, ProbablePrime };

std::string_view to_string(Certainty c);

/// Outcome of a primality test. `rounds` counts the random Miller-Rabin
/// rounds applied on top of BPSW; it is 0 for deterministic answers.
struct PrimalityResult {
    Certainty certainty = Certainty::Composite;
    int rounds = 0;

    bool is_prime() const noexcept { return certainty != Certainty::Composite; }
    friend bool operator==(const PrimalityResult&, const PrimalityResult&) = default;
};

inline constexpr int kDefaultExtraRounds = 40;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept;

/// Deterministic for every 64-bit n (Miller-Rabin with the first twelve prime
/// bases, which is exact below 3.3e24).
bool is_prime_u64(std::uint64_t n) noexcept;

/// Strong probable-prime test to base `base` (n odd, n > 2).
bool strong_probable_prime(const BigInt& n, const BigInt& base);

/// Strong Lucas probable-prime test with Selfridge parameters (n odd, not a square).
bool strong_lucas_probable_prime(const BigInt& n);

/// Exact below 2^64; above, BPSW followed by `extra_rounds` Miller-Rabin rounds
/// with bases drawn from a generator seeded by `seed`.
PrimalityResult is_prime(const BigInt& n, int extra_rounds = kDefaultExtraRounds,
                         std::uint64_t seed = 0x5eed);

}  // namespace uss::arith
