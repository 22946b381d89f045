#include "uskolem/arith/tower.hpp"

#include <cmath>
#include <cstdio>

#include "uskolem/error.hpp"

namespace uss::arith {

TowerExpr::TowerExpr(int level, double mantissa) : level_(level), mantissa_(mantissa) {
    if (level < 0) throw DomainError("TowerExpr: negative level");
    if (!std::isfinite(mantissa)) throw DomainError("TowerExpr: non-finite mantissa");
    while (level_ > 0) {
        const double folded = std::exp(mantissa_);
        if (!std::isfinite(folded)) break;
        mantissa_ = folded;
        --level_;
    }
}

std::string TowerExpr::str() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", mantissa_);
    if (level_ == 0) return buf;
    return "exp_" + std::to_string(level_) + "(" + buf + ")";
}

TowerExpr TowerExpr::scaled_bound(double factor) const {
    if (!(factor >= 1.0)) throw DomainError("TowerExpr::scaled_bound: factor must be >= 1");
    if (level_ == 0) {
        const double v = mantissa_ * factor;
        if (std::isfinite(v)) return {0, v};
        return {1, std::log(mantissa_) + std::log(factor)};
    }
    return {level_, mantissa_ + std::log(factor)};
}

std::weak_ordering tower_cmp(const TowerExpr& u, const TowerExpr& v) {
    if (u.level() != v.level()) return u.level() <=> v.level();
    const double a = u.mantissa(), b = v.mantissa();
    const double scale = std::max(std::abs(a), std::abs(b));
    if (std::abs(a - b) <= TowerExpr::kRelTolerance * scale) return std::weak_ordering::equivalent;
    return a < b ? std::weak_ordering::less : std::weak_ordering::greater;
}

}  // namespace uss::arith
