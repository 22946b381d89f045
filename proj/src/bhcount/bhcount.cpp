#include "uskolem/bhcount/bhcount.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "../parallel.hpp"
#include "uskolem/arith/number_theory.hpp"
#include "uskolem/arith/primality.hpp"
#include "uskolem/error.hpp"

namespace uss::bh {
namespace {

std::uint64_t mod_i64(std::int64_t v, std::uint64_t p) {
    const std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

void add_primes(std::vector<std::uint64_t>& out, std::uint64_t n) {
    if (n == 0) return;
    for (const auto& [p, e] : arith::factor_u64(n)) out.push_back(p);
}

// Roots of a x + b over F_p: p means "identically zero".
std::uint64_t linear_roots_mask(std::uint64_t a, std::uint64_t b, std::uint64_t p, std::uint64_t& root) {
    if (a == 0) return b == 0 ? p : 0;
    root = static_cast<std::uint64_t>((p - b) % p * static_cast<unsigned __int128>(arith::powmod(a, p - 2, p)) % p);
    return 1;
}

}  // namespace

LinearFormPair LinearFormPair::make(std::int64_t a1, std::int64_t b1, std::int64_t a2, std::int64_t b2) {
    if (a1 <= 0 || a2 <= 0) throw DomainError("linear forms need positive leading coefficients");
    if (a1 == a2 && b1 == b2) throw DomainError("the two linear forms are identical");
    LinearFormPair f;
    f.a1_ = a1;
    f.b1_ = b1;
    f.a2_ = a2;
    f.b2_ = b2;
    f.cross_ = BigInt(big_from_i64(a1) * b2) - BigInt(big_from_i64(a2) * b1);
    f.delta_ = abs(BigInt(big_from_i64(a1) * a2 * f.cross_));
    const BigInt cross_abs = abs(f.cross_);
    if (!fits_u64(cross_abs)) throw DomainError("a1 b2 - a2 b1 must fit in 64 bits");
    add_primes(f.delta_primes_, static_cast<std::uint64_t>(a1));
    add_primes(f.delta_primes_, static_cast<std::uint64_t>(a2));
    add_primes(f.delta_primes_, to_u64(cross_abs));
    std::sort(f.delta_primes_.begin(), f.delta_primes_.end());
    f.delta_primes_.erase(std::unique(f.delta_primes_.begin(), f.delta_primes_.end()), f.delta_primes_.end());
    return f;
}

std::string LinearFormPair::str() const {
    const auto form = [](std::int64_t a, std::int64_t b) {
        std::string s = a == 1 ? "x" : std::to_string(a) + "x";
        if (b > 0) s += "+" + std::to_string(b);
        if (b < 0) s += std::to_string(b);
        return s;
    };
    return "(" + form(a1_, b1_) + ", " + form(a2_, b2_) + ")";
}

std::uint64_t omega_f(const LinearFormPair& f, std::uint64_t p) {
    if (!arith::is_prime_u64(p)) throw DomainError("omega_f: " + std::to_string(p) + " is not prime");
    const std::uint64_t a1 = mod_i64(f.a1(), p), b1 = mod_i64(f.b1(), p), a2 = mod_i64(f.a2(), p),
                        b2 = mod_i64(f.b2(), p);
    if (p < 100) {
        std::uint64_t count = 0;
        for (std::uint64_t x = 0; x < p; ++x)
            count += (a1 * x + b1) % p == 0 || (a2 * x + b2) % p == 0;
        return count;
    }
    std::uint64_t r1 = 0, r2 = 0;
    const std::uint64_t n1 = linear_roots_mask(a1, b1, p, r1), n2 = linear_roots_mask(a2, b2, p, r2);
    if (n1 == p || n2 == p) return p;
    if (n1 && n2) return r1 == r2 ? 1 : 2;
    return n1 + n2;
}

Admissibility admissible(const LinearFormPair& f) {
    std::vector<std::uint64_t> candidates{2};
    add_primes(candidates, std::gcd(static_cast<std::uint64_t>(f.a1()), static_cast<std::uint64_t>(std::abs(f.b1()))));
    add_primes(candidates, std::gcd(static_cast<std::uint64_t>(f.a2()), static_cast<std::uint64_t>(std::abs(f.b2()))));
    std::sort(candidates.begin(), candidates.end());
    for (const auto p : candidates)
        if (omega_f(f, p) == p) return {false, p};
    return {};
}

BhConstant bh_constant(const LinearFormPair& f, std::uint64_t prime_limit, const arith::PrimeTable* primes) {
    const auto adm = admissible(f);
    if (!adm.admissible)
        throw DomainError("bh_constant: " + f.str() + " is not admissible (fails at p = " +
                          std::to_string(*adm.certificate_prime) + "), so C_f = 0");
    const auto C = arith::euler_products(prime_limit, primes);
    // The factor 2 in C is the p = 2 factor for omega = 1.
    double corr = static_cast<double>(2 - omega_f(f, 2));
    for (const auto p : f.delta_primes()) {
        if (p == 2) continue;
        corr *= static_cast<double>(p - omega_f(f, p)) / static_cast<double>(p - 2);
    }
    return {C.value * corr, C.tail_bound * corr, C.value, corr};
}

std::uint64_t count_pairs(const LinearFormPair& f, std::uint64_t X, const Context& ctx) {
    if (X == 0) return 0;
    const auto& table = ctx.primes();
    const BigInt hi1 = big_from_i64(f.a1()) * big_from_u64(X) + f.b1();
    const BigInt hi2 = big_from_i64(f.a2()) * big_from_u64(X) + f.b2();
    const BigInt top = std::max(hi1, hi2);
    if (top > big_from_u64(table.limit()))
        throw ResourceError("count_pairs: form values reach " + top.get_str() + " but the sieve stops at " +
                            std::to_string(table.limit()));
    const unsigned threads = std::max(1u, ctx.limits().threads);
    std::vector<std::uint64_t> parts(threads, 0);
    const auto value = [](std::int64_t a, std::int64_t b, std::uint64_t x) {
        return static_cast<std::int64_t>(a * static_cast<std::int64_t>(x) + b);
    };
    detail::parallel_blocks(X, threads, [&](unsigned t, std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t x = b + 1; x <= e; ++x) {
            const std::int64_t v1 = value(f.a1(), f.b1(), x), v2 = value(f.a2(), f.b2(), x);
            if (v1 >= 2 && v2 >= 2 && table.is_prime(static_cast<std::uint64_t>(v1)) &&
                table.is_prime(static_cast<std::uint64_t>(v2)))
                ++parts[t];
        }
    });
    return std::accumulate(parts.begin(), parts.end(), std::uint64_t{0});
}

double log2_integral(double X) {
    if (X <= 2) return 0.0;
    // t = e^u turns the integrand into e^u / u^2 on [log 2, log X].
    const auto f = [](double u) { return std::exp(u) / (u * u); };
    double err = 0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, std::log(2.0), std::log(X), 20,
                                                                                  1e-12, &err);
    return v;
}

BoundReport bound_report(const LinearFormPair& f, std::uint64_t X, const Context& ctx) {
    if (X < 100) throw DomainError("bound_report: X must be at least 100");
    BoundReport r;
    r.pair = f.str();
    r.X = X;
    r.admissible = admissible(f).admissible;
    r.actual = count_pairs(f, X, ctx);
    const double x = static_cast<double>(X), L2 = std::log(x) * std::log(x);
    if (r.admissible) {
        const arith::PrimeTable* table = ctx.primes().limit() >= 1'000'000 ? &ctx.primes() : nullptr;
        r.C_f = bh_constant(f, 1'000'000, table).C_f;
    }
    r.bh_point = r.C_f * x / L2;
    r.bh_integral = r.C_f * log2_integral(x);
    r.brun8 = kBrunKappa * r.bh_point;
    r.wu = kWuKappa * r.bh_point;
    double phi_ratio = 1.0;
    for (const auto p : f.delta_primes()) phi_ratio *= static_cast<double>(p) / static_cast<double>(p - 1);
    r.sieve_rhs = f.delta() == 0 ? 0.0 : phi_ratio * x / L2;
    return r;
}

std::string csv_header() { return "pair,X,admissible,actual,C_f,bh_point,bh_integral,brun8,wu,sieve_rhs"; }

std::string csv_row(const BoundReport& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g", r.C_f, r.bh_point, r.bh_integral, r.brun8,
                  r.wu, r.sieve_rhs);
    return "\"" + r.pair + "\"," + std::to_string(r.X) + "," + (r.admissible ? "true" : "false") + "," +
           std::to_string(r.actual) + "," + buf;
}

}  // namespace uss::bh
