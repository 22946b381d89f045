#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uskolem/arith/tower.hpp"
#include "uskolem/bigint.hpp"
#include "uskolem/context.hpp"
#include "uskolem/lrs/lrs.hpp"
#include "uskolem/skolem/skolem.hpp"

namespace uss::decide {

/// max{10, |u_i|, |a_i| : 0 <= i < k}.
BigInt constant_A(const lrs::Lrs& lrs);

/// max{exp_3(A^2), exp_5(10^10 k^6)} for a minimal recurrence of order k >= 2.
/// DomainError for order < 2 or the zero sequence.
arith::TowerExpr zero_bound(const lrs::Lrs& lrs);

enum class Policy { ExactBelowCap, ProbabilisticOnly };
enum class Certainty { Exact, Probable };
std::string_view to_string(Certainty c);

inline constexpr int kProbableModuli = 64;

struct ZeroCheck {
    bool zero = false;
    Certainty certainty = Certainty::Exact;
    int primes_used = 0;                ///< moduli behind a Probable verdict
    std::uint64_t witness_modulus = 0;  ///< prime m with u_n != 0 mod m when nonzero
};

/// Small primes first, then exact evaluation when allowed and n is under the
/// exact cap, otherwise 64 seeded random 62-bit primes.
ZeroCheck is_zero(const lrs::Lrs& lrs, const BigInt& n, Policy policy, const Context& ctx);

struct FilterResult {
    bool consistent_with_zero = true;
    std::optional<BigInt> witness_P;  ///< representation prime with u_n != 0 mod P
};
/// u_n mod P for the prime P of every representation. DomainError on empty reps.
FilterResult rep_mod_filter(const lrs::Lrs& lrs, const BigInt& n, const std::vector<skolem::Representation>& reps);

struct Zero {
    BigInt n;
    Certainty certainty = Certainty::Exact;
    int primes_used = 0;
};

struct ComponentSummary {
    std::uint64_t residue = 0;
    std::size_t order = 0;
    bool zero = false;
    std::string recurrence;
    std::optional<arith::TowerExpr> bound;  ///< bound on original indices, for order >= 2
};

struct ZeroReport {
    std::vector<Zero> zeros;  ///< ascending n
    BigInt searched_to;
    std::optional<arith::TowerExpr> theorem_bound;  ///< max over components
    std::uint64_t modulus = 1;
    std::vector<ComponentSummary> components;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> zero_progressions;  ///< (residue, modulus)
    std::uint64_t members_seen = 0;
    std::uint64_t filtered_out = 0;
    std::vector<std::string> notes;
};

/// Zeros n <= N of the sequence with n in the Universal Skolem Set.
/// ResourceError when N exceeds the scan cap.
ZeroReport find_zeros_in_s(const lrs::Lrs& lrs, const BigInt& N, Policy policy, const Context& ctx);

}  // namespace uss::decide
