#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "uskolem/arith/number_theory.hpp"
#include "uskolem/bhcount/bhcount.hpp"
#include "uskolem/error.hpp"

using namespace uss;
using namespace uss::bh;

namespace {

const Context& ctx() {
    static const Context c = Context::with_sieve(std::uint64_t{1} << 24);
    return c;
}

std::uint64_t omega_oracle(std::int64_t a1, std::int64_t b1, std::int64_t a2, std::int64_t b2, std::int64_t p) {
    std::uint64_t c = 0;
    for (std::int64_t x = 0; x < p; ++x) {
        const std::int64_t v = ((a1 * x + b1) % p) * ((a2 * x + b2) % p) % p;
        c += v == 0;
    }
    return c;
}

std::uint64_t count_oracle(const LinearFormPair& f, std::uint64_t X) {
    std::uint64_t c = 0;
    for (std::uint64_t x = 1; x <= X; ++x) {
        const std::int64_t v1 = f.a1() * std::int64_t(x) + f.b1(), v2 = f.a2() * std::int64_t(x) + f.b2();
        if (v1 > 1 && v2 > 1 && oracle::trial_division_prime(v1) && oracle::trial_division_prime(v2)) ++c;
    }
    return c;
}

std::vector<LinearFormPair> random_pairs(bool want_admissible, int count, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::vector<LinearFormPair> out;
    while (static_cast<int>(out.size()) < count) {
        const std::int64_t a1 = 1 + rng() % 10, a2 = 1 + rng() % 10;
        const std::int64_t b1 = static_cast<std::int64_t>(rng() % 41) - 20, b2 = static_cast<std::int64_t>(rng() % 41) - 20;
        if (a1 == a2 && b1 == b2) continue;
        const auto f = LinearFormPair::make(a1, b1, a2, b2);
        if (admissible(f).admissible == want_admissible) out.push_back(f);
    }
    return out;
}

double twin_C() { return arith::euler_products(1'000'000).value; }

}  // namespace

TEST_CASE("linear form pairs") {
    const auto f = LinearFormPair::make(3, 1, 5, -2);
    CHECK(f.cross() == 3 * -2 - 5 * 1);
    CHECK(f.delta() == 3 * 5 * 11);
    CHECK(f.delta_primes() == std::vector<std::uint64_t>{3, 5, 11});
    CHECK_THROWS_AS(LinearFormPair::make(0, 1, 1, 2), DomainError);
    CHECK_THROWS_AS(LinearFormPair::make(1, 1, -1, 2), DomainError);
    CHECK_THROWS_AS(LinearFormPair::make(2, 3, 2, 3), DomainError);
}

TEST_CASE("admissibility") {
    CHECK(admissible(LinearFormPair::make(1, 0, 1, 2)).admissible);
    const auto bad = admissible(LinearFormPair::make(1, 0, 1, 1));
    CHECK_FALSE(bad.admissible);
    CHECK(bad.certificate_prime == 2u);
    CHECK(admissible(LinearFormPair::make(2, 1, 2, 3)).admissible);
    // proportional distinct forms always fail
    CHECK(admissible(LinearFormPair::make(2, 2, 1, 1)).certificate_prime == 2u);
    CHECK(admissible(LinearFormPair::make(3, 3, 2, 1)).certificate_prime == 3u);
    CHECK(admissible(LinearFormPair::make(5, 10, 1, 0)).certificate_prime == 5u);
    CHECK(admissible(LinearFormPair::make(5, 15, 2, 1)).certificate_prime == 5u);

    // exhaustive agreement with omega over all primes below 50
    for (const auto& f : random_pairs(true, 30, 1))
        for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47})
            CHECK(omega_oracle(f.a1(), f.b1(), f.a2(), f.b2(), p) < std::uint64_t(p));
}

TEST_CASE("omega_f") {
    const auto twin = LinearFormPair::make(1, 0, 1, 2);
    CHECK(omega_f(twin, 2) == 1);
    CHECK(omega_f(twin, 3) == 2);
    CHECK(omega_f(twin, 5) == 2);
    CHECK_THROWS_AS(omega_f(twin, 9), DomainError);

    std::mt19937_64 rng(2);
    const auto primes = arith::PrimeTable::build(2000).primes(2, 2000);
    for (int i = 0; i < 300; ++i) {
        const std::int64_t a1 = 1 + rng() % 400, a2 = 1 + rng() % 400;
        const std::int64_t b1 = std::int64_t(rng() % 801) - 400, b2 = std::int64_t(rng() % 801) - 400;
        if (a1 == a2 && b1 == b2) continue;
        const auto f = LinearFormPair::make(a1, b1, a2, b2);
        const std::int64_t p = primes[rng() % primes.size()];
        CHECK(omega_f(f, p) == omega_oracle(a1, b1, a2, b2, p));
        // generic primes have two roots
        const bool divides = std::find(f.delta_primes().begin(), f.delta_primes().end(), std::uint64_t(p)) !=
                             f.delta_primes().end();
        if (p != 2 && !divides) CHECK(omega_f(f, p) == 2);
    }
}

TEST_CASE("bh_constant") {
    const double C = twin_C();
    const auto twin = bh_constant(LinearFormPair::make(1, 0, 1, 2));
    CHECK(twin.C_f == doctest::Approx(1.32).epsilon(0.005));
    CHECK(twin.C_f == C);
    CHECK(twin.correction == 1.0);
    CHECK(bh_constant(LinearFormPair::make(1, 0, 1, 4)).C_f == doctest::Approx(C));
    CHECK(bh_constant(LinearFormPair::make(1, 0, 1, 6)).C_f == doctest::Approx(2 * C));  // g(6) = 2
    CHECK_THROWS_AS(bh_constant(LinearFormPair::make(1, 0, 1, 1)), DomainError);

    // truncated raw product over p <= 10^4 with brute-force omega
    const auto table = arith::PrimeTable::build(10'000);
    for (const auto& f : random_pairs(true, 20, 3)) {
        double direct = 1;
        table.for_each_prime(2, 10'000, [&](std::uint64_t p) {
            const double w = double(omega_oracle(f.a1(), f.b1(), f.a2(), f.b2(), std::int64_t(p)));
            direct *= double(p) * (double(p) - w) / ((double(p) - 1) * (double(p) - 1));
        });
        const auto bc = bh_constant(f, 10'000, &table);
        CHECK(bc.C_f == doctest::Approx(direct).epsilon(1e-12));
        CHECK(std::fabs(bh_constant(f).C_f - direct) <= 2 * bc.tail_bound);
    }

    // correction at p | (a1 b2 - a2 b1), p not dividing 2 a1 a2, is g(p)
    for (std::uint64_t p : {3u, 5u, 7u, 13u, 101u}) {
        const auto f = LinearFormPair::make(1, 0, 1, 2 * std::int64_t(p));
        CHECK(bh_constant(f).correction == doctest::Approx(arith::mult_g(p).get_d()));
    }
}

TEST_CASE("bh_constant for the correlated-representation family") {
    // qP + a = q'P' + a' with P = P0 + q't, P' = P0' + qt
    const double C = twin_C();
    struct Case {
        std::int64_t q, q2, a, a2;
    };
    for (const Case c : {Case{5, 7, 50, 46}, Case{5, 7, 44, 56}, Case{101, 103, 40, 70}, Case{1009, 1013, 300, 330},
                         Case{10007, 10009, 3000, 3012}}) {
        // solve q P0 + a = q2 P0' + a2 for the smallest P0 >= 0
        std::int64_t P0 = 0;
        while ((c.q * P0 + c.a - c.a2) % c.q2 != 0) ++P0;
        const std::int64_t P0b = (c.q * P0 + c.a - c.a2) / c.q2;
        const auto f = LinearFormPair::make(c.q2, P0, c.q, P0b);
        REQUIRE(admissible(f).admissible);
        const double g_qq = arith::mult_g(std::uint64_t(c.q * c.q2)).get_d();
        const double g_a = arith::mult_g(std::uint64_t(std::abs(c.a - c.a2))).get_d();
        const auto bc = bh_constant(f);
        CHECK(bc.C_f == doctest::Approx(C * g_qq * g_a).epsilon(1e-12));
        // C g(|a - a'|) is the large-q limit
        const double ratio = bc.C_f / (C * g_a);
        CHECK(ratio == doctest::Approx(g_qq));
        if (c.q > 10'000) CHECK(ratio == doctest::Approx(1.0).epsilon(3e-4));
    }
}

TEST_CASE("count_pairs") {
    CHECK(count_pairs(LinearFormPair::make(1, 0, 1, 2), 100, ctx()) == 8);
    CHECK(count_pairs(LinearFormPair::make(1, 0, 1, 1), 100, ctx()) == 1);
    CHECK(count_pairs(LinearFormPair::make(1, 0, 1, 2), 0, ctx()) == 0);
    for (const auto& f : random_pairs(true, 20, 4)) CHECK(count_pairs(f, 10'000, ctx()) == count_oracle(f, 10'000));
    for (const auto& f : random_pairs(false, 20, 5)) CHECK(count_pairs(f, 100'000, ctx()) <= 2);

    Limits l;
    l.threads = 3;
    const Context threaded(ctx().primes_ptr(), l);
    const auto f = LinearFormPair::make(2, 1, 4, 3);
    CHECK(count_pairs(f, 1'000'000, threaded) == count_pairs(f, 1'000'000, ctx()));

    const Context small = Context::with_sieve(1000);
    CHECK_THROWS_AS(count_pairs(LinearFormPair::make(1, 0, 1, 2), 999, small), ResourceError);
    CHECK_NOTHROW(count_pairs(LinearFormPair::make(1, 0, 1, 2), 998, small));
}

TEST_CASE("log-squared integral against the logarithmic integral") {
    for (double X : {100.0, 1e3, 1e4, 1e6, 1e9}) {
        const double li = boost::math::expint(std::log(X)) - boost::math::expint(std::log(2.0));
        const double want = li - X / std::log(X) + 2 / std::log(2.0);
        CHECK(log2_integral(X) == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("bound_report for twin primes") {
    const auto twin = LinearFormPair::make(1, 0, 1, 2);
    const auto r6 = bound_report(twin, 1'000'000, ctx());
    std::uint64_t oracle_count = 0;
    for (std::uint64_t x = 1; x <= 1'000'000; ++x)
        oracle_count += oracle::gmp_prime(mpz_class(std::to_string(x))) && oracle::gmp_prime(mpz_class(std::to_string(x + 2)));
    CHECK(r6.actual == oracle_count);
    CHECK(r6.within_wu());
    CHECK(r6.within_brun8());
    const double rel6 = r6.actual / r6.bh_integral;
    CHECK(rel6 >= 0.9);
    CHECK(rel6 <= 1.1);
    CHECK(r6.bh_point == doctest::Approx(r6.C_f * 1e6 / std::pow(std::log(1e6), 2)));
    CHECK(r6.wu == doctest::Approx(3.418 * r6.bh_point));
    CHECK(r6.brun8 == doctest::Approx(8 * r6.bh_point));
    CHECK(r6.sieve_rhs == doctest::Approx(2.0 * 1e6 / std::pow(std::log(1e6), 2)));  // Delta = 2

    const auto r3 = bound_report(twin, 1'000, ctx());
    CHECK(std::fabs(r3.actual / r3.bh_integral - 1) > std::fabs(rel6 - 1));
    CHECK_THROWS_AS(bound_report(twin, 99, ctx()), DomainError);

    const auto bad = bound_report(LinearFormPair::make(1, 0, 1, 1), 1000, ctx());
    CHECK_FALSE(bad.admissible);
    CHECK(bad.C_f == 0.0);
    CHECK(bad.actual == 1);

    CHECK(csv_header() == "pair,X,admissible,actual,C_f,bh_point,bh_integral,brun8,wu,sieve_rhs");
    CHECK(csv_row(r3).rfind("\"(x, x+2)\",1000,true,35,", 0) == 0);
    CHECK(LinearFormPair::make(3, -5, 1, 7).str() == "(3x-5, x+7)");
}

TEST_CASE("Wu bound on random admissible pairs") {
    for (const auto& f : random_pairs(true, 20, 6))
        for (std::uint64_t X : {10'000u, 100'000u, 1'000'000u}) {
            const auto r = bound_report(f, X, ctx());
            INFO(f.str(), " X=", X, " actual=", r.actual, " wu=", r.wu);
            CHECK(r.within_wu());
        }
}
