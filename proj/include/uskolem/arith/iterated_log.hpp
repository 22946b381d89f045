#pragma once

namespace uss::arith {

/// log_1 x = log x and log_j x = max{1, log_{j-1}(log x)} for j >= 2, natural
/// base. Requires x > 1 and j >= 1 (DomainError otherwise). Where the
/// recursion would take the logarithm of a non-positive value the clamp
/// already applies, so the result is 1.
double iterated_log(double x, int j);

/// Same function evaluated from log x, for arguments too large for a double
/// (e.g. X = 2^w with large w). Requires log_x > 0.
double iterated_log_from_log(double log_x, int j);

/// Extended-precision variant used to settle interval-endpoint coincidences.
long double iterated_log_from_log_ld(long double log_x, int j);

}  // namespace uss::arith
