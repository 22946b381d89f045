#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace uss {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt big_from_u64(std::uint64_t v) {
    BigInt r;
    mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
    return r;
}

inline BigInt big_from_i64(std::int64_t v) {
    if (v >= 0) return big_from_u64(static_cast<std::uint64_t>(v));
    BigInt r = big_from_u64(static_cast<std::uint64_t>(-(v + 1)) + 1);
    return -r;
}

inline bool fits_u64(const BigInt& v) {
    return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const BigInt& v) {
    std::uint64_t out = 0;
    if (sgn(v) == 0) return 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
    return out;
}

inline std::optional<std::uint64_t> as_u64(const BigInt& v) {
    if (!fits_u64(v)) return std::nullopt;
    return to_u64(v);
}

/// Non-negative residue of v modulo m (m > 0).
inline std::uint64_t mod_u64(const BigInt& v, std::uint64_t m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), big_from_u64(m).get_mpz_t());
    return to_u64(r);
}

/// Parses a signed decimal integer; returns nullopt on any malformed input.
std::optional<BigInt> parse_bigint(std::string_view text);

inline std::string to_string(const BigInt& v) { return v.get_str(); }

inline std::size_t bit_length(const BigInt& v) {
    return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline BigInt pow2(unsigned long e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

}  // namespace uss
