#include "uskolem/lrs/poly.hpp"

#include <algorithm>
#include <map>

#include "uskolem/arith/number_theory.hpp"
#include "uskolem/error.hpp"

namespace uss::lrs {

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { normalize(); }

IntPoly IntPoly::monomial(std::size_t degree, const BigInt& c) {
    std::vector<BigInt> v(degree + 1, BigInt(0));
    v[degree] = c;
    return IntPoly(std::move(v));
}

void IntPoly::normalize() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

BigInt IntPoly::eval(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
    return IntPoly(std::move(v));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> v(a.c_.size() + b.c_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(std::move(v));
}

std::string IntPoly::str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const BigInt& c = c_[static_cast<std::size_t>(i)];
        if (sgn(c) == 0) continue;
        const BigInt mag = abs(c);
        if (!out.empty()) out += sgn(c) < 0 ? " - " : " + ";
        else if (sgn(c) < 0) out += "-";
        if (mag != 1 || i == 0) out += mag.get_str();
        if (i >= 1) out += "x";
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
}

PolyDivision divmod_unit_leading(const IntPoly& dividend, const IntPoly& divisor) {
    if (divisor.is_zero() || abs(divisor.leading()) != 1)
        throw ContractViolation("divmod_unit_leading: divisor must have leading coefficient +-1");
    std::vector<BigInt> rem = dividend.coeffs();
    const int dd = divisor.degree();
    if (dividend.degree() < dd) return {IntPoly{}, dividend};
    std::vector<BigInt> quo(static_cast<std::size_t>(dividend.degree() - dd + 1), BigInt(0));
    const BigInt& lead = divisor.leading();
    for (int i = dividend.degree(); i >= dd; --i) {
        BigInt t = rem[static_cast<std::size_t>(i)] * lead;  // lead = +-1 is its own inverse
        if (sgn(t) == 0) continue;
        quo[static_cast<std::size_t>(i - dd)] = t;
        for (int j = 0; j <= dd; ++j)
            rem[static_cast<std::size_t>(i - dd + j)] -= t * divisor.coeffs()[static_cast<std::size_t>(j)];
    }
    return {IntPoly(std::move(quo)), IntPoly(std::move(rem))};
}

IntPoly cyclotomic(std::uint64_t m) {
    if (m == 0) throw DomainError("cyclotomic: m must be >= 1");
    // Phi_m = prod_{d | m} (x^d - 1)^{mu(m/d)}.
    const auto fac = arith::factor_u64(m);
    std::vector<std::uint64_t> primes;
    for (auto [p, e] : fac) primes.push_back(p);
    IntPoly num({BigInt(1)}), den({BigInt(1)});
    const std::size_t r = primes.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
        std::uint64_t sqfree = 1;
        int bits = 0;
        for (std::size_t i = 0; i < r; ++i)
            if (mask >> i & 1) {
                sqfree *= primes[i];
                ++bits;
            }
        const std::uint64_t d = m / sqfree;  // mu(m/d) = (-1)^bits
        IntPoly term = IntPoly::monomial(d) - IntPoly({BigInt(1)});
        if (bits % 2 == 0)
            num = num * term;
        else
            den = den * term;
    }
    auto [q, rem] = divmod_unit_leading(num, den);
    if (!rem.is_zero()) throw ContractViolation("cyclotomic: inexact division");
    return q;
}

BigInt resultant(const std::vector<BigInt>& f, const std::vector<BigInt>& g) {
    if (f.empty() || g.empty()) throw DomainError("resultant: empty polynomial");
    const std::size_t m = f.size() - 1, n = g.size() - 1;
    const std::size_t N = m + n;
    if (N == 0) return 1;
    // Sylvester matrix: n rows of f then m rows of g, highest degree first.
    std::vector<std::vector<BigInt>> a(N, std::vector<BigInt>(N, BigInt(0)));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i <= m; ++i) a[r][r + i] = f[m - i];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t i = 0; i <= n; ++i) a[n + r][r + i] = g[n - i];

    // Fraction-free Bareiss elimination.
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < N; ++k) {
        if (sgn(a[k][k]) == 0) {
            std::size_t piv = k + 1;
            while (piv < N && sgn(a[piv][k]) == 0) ++piv;
            if (piv == N) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < N; ++i) {
            for (std::size_t j = k + 1; j < N; ++j) {
                BigInt t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[N - 1][N - 1];
}

IntPoly interpolate_at_naturals(const std::vector<BigInt>& values) {
    const std::size_t n = values.size();
    // Newton divided differences on nodes 0..n-1.
    std::vector<Rational> dd(values.begin(), values.end());
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / Rational(static_cast<long>(level));
            dd[i].canonicalize();
        }
    // Horner expansion of sum dd[i] * prod_{j<i} (x - j).
    std::vector<Rational> poly{dd[n - 1]};
    for (std::size_t i = n - 1; i-- > 0;) {
        // poly = poly * (x - i) + dd[i]
        std::vector<Rational> next(poly.size() + 1, Rational(0));
        for (std::size_t j = 0; j < poly.size(); ++j) {
            next[j + 1] += poly[j];
            next[j] -= poly[j] * Rational(static_cast<long>(i));
        }
        next[0] += dd[i];
        poly = std::move(next);
    }
    std::vector<BigInt> out;
    out.reserve(poly.size());
    for (auto& c : poly) {
        c.canonicalize();
        if (c.get_den() != 1) throw ContractViolation("interpolate_at_naturals: non-integral result");
        out.push_back(c.get_num());
    }
    return IntPoly(std::move(out));
}

}  // namespace uss::lrs
