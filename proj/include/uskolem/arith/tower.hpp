#pragma once

#include <compare>
#include <string>

namespace uss::arith {

/// exp_j(r): the j-fold natural exponential of r (level 0 is r itself).
///
/// Canonical form keeps the level as low as possible: while the level is
/// positive and exp(mantissa) is finite in double precision, one exponential
/// is folded into the mantissa. A canonical value with level >= 1 therefore
/// exceeds every finite double, so a higher level always denotes a larger
/// number.
class TowerExpr {
public:
    static constexpr double kRelTolerance = 1e-9;

    /// Throws DomainError if level < 0 or mantissa is not finite.
    TowerExpr(int level, double mantissa);

    static TowerExpr real(double r) { return {0, r}; }

    int level() const noexcept { return level_; }
    double mantissa() const noexcept { return mantissa_; }

    /// Renders as exp_j(r); level 0 renders as the plain number.
    std::string str() const;

    /// Upper bound for factor * value (factor >= 1), using
    /// factor * exp_j(r) <= exp_j(r + log factor) for j >= 1.
    TowerExpr scaled_bound(double factor) const;

private:
    int level_;
    double mantissa_;
};

/// Total order on canonical towers; mantissas on equal levels compare with
/// relative tolerance kRelTolerance (ties report equivalent).
std::weak_ordering tower_cmp(const TowerExpr& u, const TowerExpr& v);

inline const TowerExpr& tower_max(const TowerExpr& u, const TowerExpr& v) {
    return tower_cmp(u, v) == std::weak_ordering::less ? v : u;
}

}  // namespace uss::arith
