#include "uskolem/arith/number_theory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "uskolem/arith/primality.hpp"
#include "uskolem/error.hpp"

namespace uss::arith {
namespace {

std::uint64_t pollard_brent(std::uint64_t n) {
    if (n % 2 == 0) return 2;
    for (std::uint64_t c = 1;; ++c) {
        auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
        std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
        std::uint64_t r = 1;
        constexpr std::uint64_t m = 128;
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    const std::uint64_t d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

const PrimeTable& table_for(std::uint64_t limit, const PrimeTable* given, PrimeTable& scratch) {
    if (given && given->limit() >= limit) return *given;
    scratch = PrimeTable::build(std::max<std::uint64_t>(limit, 2));
    return scratch;
}

}  // namespace

std::vector<std::pair<std::uint64_t, int>> factor_u64(std::uint64_t n) {
    if (n == 0) throw DomainError("factor_u64: n must be >= 1");
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
        while (n % p == 0) {
            ps.push_back(p);
            n /= p;
        }
    }
    factor_into(n, ps);
    std::sort(ps.begin(), ps.end());
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t p : ps) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1);
    }
    return out;
}

std::uint64_t totient(std::uint64_t n) {
    std::uint64_t phi = n;
    for (auto [p, e] : factor_u64(n)) phi = phi / p * (p - 1);
    return phi;
}

double prime_harmonic_sum(double lo, double hi, const PrimeTable& primes) {
    if (!(lo >= 2.0) || !(lo <= hi)) throw DomainError("prime_harmonic_sum: requires 2 <= lo <= hi");
    const auto first = static_cast<std::uint64_t>(std::ceil(lo));
    const auto last = static_cast<std::uint64_t>(std::floor(hi));
    if (last > primes.limit()) throw ResourceError("prime_harmonic_sum: hi beyond sieve capacity");
    long double sum = 0;
    primes.for_each_prime(first, last, [&](std::uint64_t p) { sum += 1.0L / p; });
    return static_cast<double>(sum);
}

EulerProduct euler_products(std::uint64_t prime_limit, const PrimeTable* primes) {
    if (prime_limit < 3) throw DomainError("euler_products: prime_limit must be >= 3");
    PrimeTable scratch = PrimeTable::build(2);
    const PrimeTable& t = table_for(prime_limit, primes, scratch);
    long double prod = 2;
    t.for_each_prime(3, prime_limit, [&](std::uint64_t p) {
        const long double pm1 = static_cast<long double>(p - 1);
        prod *= 1.0L - 1.0L / (pm1 * pm1);
    });
    const double value = static_cast<double>(prod);
    return {value, value * 2.0 / static_cast<double>(prime_limit)};
}

double odd_prime_g_product(std::uint64_t prime_limit, const PrimeTable* primes) {
    PrimeTable scratch = PrimeTable::build(2);
    const PrimeTable& t = table_for(prime_limit, primes, scratch);
    long double prod = 1;
    t.for_each_prime(3, prime_limit, [&](std::uint64_t p) {
        const long double pl = static_cast<long double>(p);
        prod *= 1.0L + 1.0L / (pl * (pl - 2));
    });
    return static_cast<double>(prod);
}

Rational mult_g(std::uint64_t m) {
    if (m == 0) throw DomainError("mult_g: m must be >= 1");
    Rational g(1);
    for (auto [p, e] : factor_u64(m))
        if (p > 2) g *= Rational(big_from_u64(p - 1), big_from_u64(p - 2));
    g.canonicalize();
    return g;
}

Rational phi_ratio(std::uint64_t m) {
    if (m == 0) throw DomainError("phi_ratio: m must be >= 1");
    Rational r(1);
    for (auto [p, e] : factor_u64(m)) r *= Rational(big_from_u64(p), big_from_u64(p - 1));
    r.canonicalize();
    return r;
}

}  // namespace uss::arith
