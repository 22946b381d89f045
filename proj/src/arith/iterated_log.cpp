#include "uskolem/arith/iterated_log.hpp"

#include <algorithm>
#include <cmath>

#include "uskolem/error.hpp"

namespace uss::arith {
namespace {

// Value of log_j at a point whose logarithm is y (y may be <= 0 for
// intermediate levels; the clamp then yields 1).
template <class Real>
Real from_log(Real y, int j) {
    if (j == 1) return y;
    if (y <= 0) return Real(1);
    return std::max(Real(1), from_log(std::log(y), j - 1));
}

}  // namespace

double iterated_log(double x, int j) {
    if (!(x > 1.0)) throw DomainError("iterated_log: requires x > 1");
    if (j < 1) throw DomainError("iterated_log: requires j >= 1");
    return from_log(std::log(x), j);
}

double iterated_log_from_log(double log_x, int j) {
    if (!(log_x > 0.0)) throw DomainError("iterated_log: requires x > 1");
    if (j < 1) throw DomainError("iterated_log: requires j >= 1");
    return from_log(log_x, j);
}

long double iterated_log_from_log_ld(long double log_x, int j) {
    if (!(log_x > 0.0L)) throw DomainError("iterated_log: requires x > 1");
    if (j < 1) throw DomainError("iterated_log: requires j >= 1");
    return from_log(log_x, j);
}

}  // namespace uss::arith
