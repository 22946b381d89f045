#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "uskolem/error.hpp"
#include "uskolem/skolem/skolem.hpp"

using namespace uss;
using namespace uss::skolem;

namespace {

const Context& ctx() {
    static const Context c = Context::with_sieve(1 << 22);
    return c;
}

std::vector<std::uint64_t> enumerate_all(int w, std::optional<std::pair<BigInt, BigInt>> sub = {},
                                         const Context& c = ctx()) {
    std::vector<std::uint64_t> out;
    enumerate_window(w, sub, c, [&](const BigInt& n, const std::vector<Representation>&) { out.push_back(to_u64(n)); });
    return out;
}

}  // namespace

TEST_CASE("window_params on small windows") {
    const auto p10 = window_params(10);
    CHECK(p10.X == 1024);
    CHECK(p10.a_interval.lo == doctest::Approx(1.9360721724).epsilon(1e-9));
    CHECK(p10.a_interval.hi == doctest::Approx(2.6327688477).epsilon(1e-9));
    CHECK(p10.b_interval.lo == doctest::Approx(6.9314718056).epsilon(1e-9));
    CHECK(p10.b_interval.hi == doctest::Approx(13.8629436112).epsilon(1e-9));
    CHECK(p10.threshold == 1.0);
    CHECK(p10.gap == p10.a_interval.hi);
    CHECK(p10.q_primes == std::vector<std::uint64_t>{2});
    CHECK(p10.a_values == std::vector<std::int64_t>{7, 8, 9, 10, 11, 12, 13});

    const auto p13 = window_params(13);
    CHECK(p13.a_interval.lo == doctest::Approx(2.1984364369).epsilon(1e-9));
    CHECK(p13.a_interval.hi == doctest::Approx(3.0018183402).epsilon(1e-9));
    CHECK(p13.q_primes == std::vector<std::uint64_t>{3});

    const auto p30 = window_params(30);
    CHECK(p30.a_interval.lo == doctest::Approx(3.0346844611).epsilon(1e-9));
    CHECK(p30.a_interval.hi == doctest::Approx(4.5600894089).epsilon(1e-9));
    CHECK(p30.q_primes.empty());

    CHECK_THROWS_AS(window_params(9), DomainError);
}

TEST_CASE("window_params agrees with the literal recursion for w in [10, 200]") {
    for (int w = 10; w <= 200; ++w) {
        const auto p = window_params(w);
        const oracle::NaiveWindow nw(w);
        CHECK(p.a_interval.lo == doctest::Approx(nw.a_lo).epsilon(1e-12));
        CHECK(p.a_interval.hi == doctest::Approx(nw.a_hi).epsilon(1e-12));
        CHECK(p.b_interval.lo == doctest::Approx(nw.b_lo).epsilon(1e-12));
        CHECK(p.threshold == doctest::Approx(nw.tau).epsilon(1e-12));
        CHECK(p.a_interval.hi < p.b_interval.lo);  // disjoint
        std::vector<std::uint64_t> qs;
        for (std::uint64_t q = 2; q <= nw.a_hi; ++q)
            if (q >= nw.a_lo && oracle::trial_division_prime(q)) qs.push_back(q);
        CHECK(p.q_primes == qs);
    }
}

TEST_CASE("q-primes: at most one below w = 71, two at w = 71") {
    for (int w = 10; w <= 70; ++w) CHECK(window_params(w).q_primes.size() <= 1);
    CHECK(window_params(71).q_primes == std::vector<std::uint64_t>{5, 7});
    CHECK(window_params(11).q_primes.empty());
    CHECK(window_params(12).q_primes.empty());
}

TEST_CASE("representations of 1053 and 1025") {
    const auto p = window_params(10);
    const auto r = representations(1053, p, ctx());
    REQUIRE(r.size() == 2);
    CHECK(r[0] == Representation{2, 523, 7, arith::Certainty::Prime});
    CHECK(r[1] == Representation{2, 521, 11, arith::Certainty::Prime});
    const auto r2 = representations(1025, p, ctx());
    REQUIRE(r2.size() == 1);
    CHECK(r2[0] == Representation{2, 509, 7, arith::Certainty::Prime});
    CHECK_THROWS_AS(representations(2049, p, ctx()), DomainError);
    CHECK_THROWS_AS(representations(1023, p, ctx()), DomainError);
}

TEST_CASE("representations match the naive double loop on [2^10, 2^11] and [2^13, 2^14]") {
    for (const int w : {10, 13}) {
        const auto p = window_params(w);
        const oracle::NaiveWindow nw(w);
        for (std::uint64_t n = std::uint64_t{1} << w; n <= std::uint64_t{2} << w; ++n) {
            const auto got = representations(big_from_u64(n), p, ctx());
            const auto want = nw.reps(n);
            REQUIRE(got.size() == want.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                const auto [q, P, a] = want[i];
                CHECK(got[i].q == q);
                CHECK(got[i].P == big_from_u64(P));
                CHECK(got[i].a == a);
                CHECK(got[i].P * q + a == big_from_u64(n));
            }
        }
    }
}

TEST_CASE("correlated: definition examples and symmetry") {
    // A window whose gap is exactly 7 (log X = 49) is not a power of two, so
    // build the parameters by hand.
    WindowParams p;
    p.gap = 7.0;
    CHECK(correlated(5, 50, 7, 46, p));
    CHECK_FALSE(correlated(5, 50, 7, 70, p));
    CHECK_FALSE(correlated(5, 50, 5, 46, p));
    CHECK_FALSE(correlated(5, 50, 7, 50, p));
    // strictness: |55 - 62| = 7 is not < 7; the eta = -1 side gives |45 - 48| = 3
    CHECK(correlated(5, 50, 7, 55, p));
    CHECK_FALSE(correlated(5, 50, 7, 62, p));  // eta=+1: 7, eta=-1: |45-55| = 10

    std::mt19937_64 rng(3);
    for (int i = 0; i < 5000; ++i) {
        const std::uint64_t q1 = 2 + rng() % 20, q2 = 2 + rng() % 20;
        const std::int64_t a1 = rng() % 60, a2 = rng() % 60;
        CHECK(correlated(q1, a1, q2, a2, p) == correlated(q2, a2, q1, a1, p));
        const Representation r1{q1, 1, a1}, r2{q2, 1, a2};
        CHECK(correlated(r1, r2, p) == correlated(q1, a1, q2, a2, p));
    }
}

TEST_CASE("in_s examples and window boundaries") {
    const auto m = in_s(1053, ctx());
    CHECK(m.member);
    CHECK(m.window == 10);
    CHECK(m.reason == Reason::Member);
    CHECK(m.reps.size() == 2);

    const auto m2 = in_s(1025, ctx());
    CHECK_FALSE(m2.member);
    CHECK(m2.reason == Reason::TooFewReps);

    const auto m3 = in_s(512, ctx());
    CHECK_FALSE(m3.member);
    CHECK(m3.reason == Reason::BelowRange);
    CHECK_FALSE(m3.window.has_value());

    // 2^11 sits in windows 10 and 11; both are checked.
    const auto m4 = in_s(2048, ctx());
    CHECK(m4.windows_checked == std::vector<int>{10, 11});
    CHECK(m4.member == oracle::NaiveWindow(10).member(2048));

    // 1024 is only in window 10.
    CHECK(in_s(1024, ctx()).windows_checked == std::vector<int>{10});
    // windows 11 and 12 are empty
    CHECK(in_s(3000, ctx()).reason == Reason::NoWindowPrimes);
}

TEST_CASE("enumerate_window equals pointwise in_s and the naive oracle for w in {10, 11, 12}") {
    for (const int w : {10, 11, 12}) {
        const auto got = enumerate_all(w);
        std::vector<std::uint64_t> via_in_s, via_naive;
        const oracle::NaiveWindow nw(w);
        for (std::uint64_t n = std::uint64_t{1} << w; n <= std::uint64_t{2} << w; ++n) {
            const auto m = in_s(big_from_u64(n), ctx());
            if (m.member && m.window == w) via_in_s.push_back(n);
            if (nw.member(n)) via_naive.push_back(n);
        }
        CHECK(got == via_in_s);
        CHECK(got == via_naive);
        if (w == 10) CHECK(std::find(got.begin(), got.end(), 1053) != got.end());
        if (w != 10) CHECK(got.empty());
    }
}

TEST_CASE("enumerate_window on window 13 matches the naive oracle and is ordered") {
    const auto got = enumerate_all(13);
    std::vector<std::uint64_t> want;
    const oracle::NaiveWindow nw(13);
    for (std::uint64_t n = 8192; n <= 16384; ++n)
        if (nw.member(n)) want.push_back(n);
    CHECK(got == want);
    CHECK(std::is_sorted(got.begin(), got.end()));
}

TEST_CASE("enumerate_window subranges, threads and caps") {
    const auto full = enumerate_all(10);
    const auto sub = enumerate_all(10, std::pair<BigInt, BigInt>{1024, 1100});
    std::vector<std::uint64_t> expect;
    for (auto n : full)
        if (n <= 1100) expect.push_back(n);
    CHECK(sub == expect);

    // splitting and concatenating reproduces the full stream
    std::vector<std::uint64_t> joined;
    for (std::uint64_t lo = 1024; lo <= 2048; lo += 100) {
        const auto part = enumerate_all(10, std::pair<BigInt, BigInt>{big_from_u64(lo), big_from_u64(lo + 99)});
        joined.insert(joined.end(), part.begin(), part.end());
    }
    CHECK(joined == full);

    Limits threaded;
    threaded.threads = 4;
    const Context c4(ctx().primes_ptr(), threaded);
    CHECK(enumerate_all(16, {}, c4) == enumerate_all(16));

    CHECK(enumerate_all(30).empty());  // empty A(X): nothing to scan

    Limits tight;
    tight.scan_cap = 512;
    const Context small(ctx().primes_ptr(), tight);
    CHECK_THROWS_AS(enumerate_all(10, {}, small), ResourceError);
    CHECK(enumerate_all(10, std::pair<BigInt, BigInt>{1024, 1536}, small).size() <= full.size());
    CHECK_THROWS_AS(enumerate_window(9, {}, ctx(), [](const BigInt&, const std::vector<Representation>&) {}),
                    DomainError);
}

TEST_CASE("soundness of emitted representations on window 16") {
    const auto p = window_params(16);
    enumerate_window(16, {}, ctx(), [&](const BigInt& n, const std::vector<Representation>& reps) {
        REQUIRE(static_cast<double>(reps.size()) > p.threshold);
        for (std::size_t i = 0; i < reps.size(); ++i) {
            const auto& r = reps[i];
            REQUIRE(r.P * r.q + r.a == n);
            REQUIRE(oracle::trial_division_prime(r.q));
            REQUIRE(oracle::trial_division_prime(to_u64(r.P)));
            REQUIRE(r.q >= p.a_interval.lo);
            REQUIRE(r.q <= p.a_interval.hi);
            REQUIRE(r.a >= p.b_interval.lo);
            REQUIRE(r.a <= p.b_interval.hi);
            for (std::size_t j = i + 1; j < reps.size(); ++j) {
                REQUIRE(!(reps[j].q == r.q && reps[j].a == r.a));
                REQUIRE_FALSE(correlated(r, reps[j], p));
            }
        }
    });
}

TEST_CASE("large n near 2^71 uses probable primes and both q-primes") {
    const auto p = window_params(71);
    std::mt19937_64 rng(11);
    const BigInt X = p.X;
    int with_reps = 0;
    for (int trial = 0; trial < 200 && with_reps < 3; ++trial) {
        BigInt n = X + big_from_u64(rng());
        const auto v = window_verdict(n, p, ctx());
        for (const auto& r : v.reps) {
            CHECK(r.certainty == arith::Certainty::ProbablePrime);
            CHECK(oracle::gmp_prime(r.P));
            CHECK(r.P * r.q + r.a == n);
        }
        // compare with a direct loop over both q-primes
        std::size_t direct = 0;
        for (std::uint64_t q : {5u, 7u})
            for (std::int64_t a : p.a_values) {
                const BigInt m = n - a;
                if (mpz_divisible_ui_p(m.get_mpz_t(), q) && oracle::gmp_prime(BigInt(m / q))) ++direct;
            }
        CHECK(v.reps.size() == direct);
        if (!v.reps.empty()) {
            ++with_reps;
            CHECK(v.weakest_certainty() == arith::Certainty::ProbablePrime);
        }
    }
    CHECK(with_reps > 0);
}
