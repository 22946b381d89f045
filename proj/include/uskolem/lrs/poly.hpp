#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uskolem/bigint.hpp"

namespace uss::lrs {

/// Dense integer polynomial, coefficients stored lowest degree first.
/// Normalised so that the leading coefficient is non-zero; the zero
/// polynomial has no coefficients and degree -1.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs);

    static IntPoly monomial(std::size_t degree, const BigInt& c = 1);

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<BigInt>& coeffs() const noexcept { return c_; }
    BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }
    const BigInt& leading() const { return c_.back(); }

    BigInt eval(const BigInt& x) const;

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend bool operator==(const IntPoly&, const IntPoly&) = default;

    std::string str() const;

private:
    void normalize();
    std::vector<BigInt> c_;
};

struct PolyDivision {
    IntPoly quotient;
    IntPoly remainder;
};

/// Division by a divisor with leading coefficient +-1, exact over the integers.
PolyDivision divmod_unit_leading(const IntPoly& dividend, const IntPoly& divisor);

/// The m-th cyclotomic polynomial (m >= 1).
IntPoly cyclotomic(std::uint64_t m);

/// Resultant of two univariate integer polynomials, coefficients lowest degree
/// first. Vector length fixes the formal degree, so zero leading coefficients
/// are allowed. Computed as the Sylvester determinant.
BigInt resultant(const std::vector<BigInt>& f, const std::vector<BigInt>& g);

/// Interpolates the integer polynomial of degree <= values.size()-1 taking
/// values[i] at x = i. Throws ContractViolation if the result is not integral.
IntPoly interpolate_at_naturals(const std::vector<BigInt>& values);

}  // namespace uss::lrs
