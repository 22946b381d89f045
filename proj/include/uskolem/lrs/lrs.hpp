#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "uskolem/bigint.hpp"
#include "uskolem/lrs/poly.hpp"

namespace uss::lrs {

inline constexpr std::uint64_t kDefaultExactCap = 2'000'000;

/// Integer linear recurrence u_{n+k} = a_0 u_{n+k-1} + ... + a_{k-1} u_n.
struct Lrs {
    std::vector<BigInt> coeffs;  ///< a_0 .. a_{k-1}
    std::vector<BigInt> inits;   ///< u_0 .. u_{k-1}
    bool zero = false;           ///< flagged canonical zero sequence

    /// Validates that both lists are non-empty and of equal length.
    static Lrs make(std::vector<BigInt> coeffs, std::vector<BigInt> inits);
    static Lrs zero_sequence();

    std::size_t order() const noexcept { return coeffs.size(); }

    /// Psi(x) = x^k - a_0 x^{k-1} - ... - a_{k-1}.
    IntPoly characteristic() const;

    /// First `count` terms by direct iteration.
    std::vector<BigInt> prefix(std::size_t count) const;

    friend bool operator==(const Lrs&, const Lrs&) = default;
};

/// Parses `coeffs=a0,...,a_{k-1}; inits=u0,...,u_{k-1}` (whitespace free-form).
/// Throws DomainError on malformed text.
Lrs parse_lrs(std::string_view text);
std::string format_lrs(const Lrs& lrs);

/// u_n with exact integers. ResourceError when n > exact_cap.
BigInt term_exact(const Lrs& lrs, const BigInt& n, std::uint64_t exact_cap = kDefaultExactCap);

/// u_n mod m in [0, m), O(k^2 log n) word operations. DomainError for m < 2.
std::uint64_t term_mod(const Lrs& lrs, const BigInt& n, std::uint64_t m);
BigInt term_mod(const Lrs& lrs, const BigInt& n, const BigInt& m);

/// Minimal-order recurrence generating the same sequence (Berlekamp-Massey
/// over the rationals on the first 2k terms). The zero sequence maps to
/// Lrs::zero_sequence(). DomainError if the minimal polynomial has the root 0
/// (the sequence is only eventually recurrent of lower order).
Lrs minimize(const Lrs& lrs);

struct Degeneracy {
    bool degenerate = false;
    std::uint64_t witness_order = 0;            ///< smallest m >= 2, 0 if non-degenerate
    std::vector<std::uint64_t> unity_orders;    ///< every m >= 2 with Phi_m | R
    IntPoly quotient_poly;                      ///< R(x) = Res_y(Psi(y), Psi(xy))
};

/// R(x) = Res_y(Psi(y), Psi(x y)), whose roots are the quotients of roots of Psi.
IntPoly quotient_resultant(const IntPoly& psi);

/// Detects root-of-unity quotients of distinct characteristic roots.
/// ContractViolation if `lrs` is not minimal.
Degeneracy is_degenerate(const Lrs& lrs);

struct Component {
    std::uint64_t residue = 0;
    Lrs sequence;  ///< minimised recurrence of (u_{jM+residue})_j
    bool is_zero() const noexcept { return sequence.zero; }
};

struct Decomposition {
    std::uint64_t modulus = 1;  ///< M
    std::vector<Component> components;
};

/// Splits a minimal LRS into M subsequences, each non-degenerate or zero.
Decomposition decompose(const Lrs& lrs);

}  // namespace uss::lrs
