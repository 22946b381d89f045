#include "uskolem/arith/primality.hpp"

#include <array>

namespace uss::arith {

std::string_view to_string(Certainty c) {
    switch (c) {
        case Certainty::Composite: return "Composite";
        case Certainty::Prime: return "Prime";
        case Certainty::ProbablePrime: return "ProbablePrime";
    }
    return "?";
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

namespace {

constexpr std::array<std::uint64_t, 12> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool sprp_u64(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) noexcept {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// Jacobi symbol (a/n) for odd n > 0.
int jacobi(long a, const BigInt& n) {
    return mpz_si_kronecker(a, n.get_mpz_t());
}

}  // namespace

bool is_prime_u64(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t p : kWitnesses) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n < 37 * 37) return true;
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : kWitnesses)
        if (!sprp_u64(n, a, d, s)) return false;
    return true;
}

bool strong_probable_prime(const BigInt& n, const BigInt& base) {
    const BigInt nm1 = n - 1;
    BigInt d = nm1;
    const auto s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    BigInt x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) return true;
    for (unsigned long r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == nm1) return true;
        if (x == 1) return false;
    }
    return false;
}

bool strong_lucas_probable_prime(const BigInt& n) {
    // Selfridge method A: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    long D = 5;
    for (;;) {
        const int j = jacobi(D, n);
        if (j == -1) break;
        if (j == 0 && BigInt(D < 0 ? -D : D) != n) return false;
        D = D > 0 ? -(D + 2) : -(D - 2);
    }
    const long P = 1;
    const long Q = (1 - D) / 4;

    // n + 1 = d * 2^s with d odd.
    BigInt d = n + 1;
    const auto s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    auto mod = [&](BigInt v) {
        mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
        return v;
    };
    // Binary ladder over the bits of d computing U_d, V_d, Q^d.
    BigInt U = 1, V = P, Qk = mod(BigInt(Q));
    const BigInt Dm = mod(BigInt(D));
    const auto bits = mpz_sizeinbase(d.get_mpz_t(), 2);
    for (long i = static_cast<long>(bits) - 2; i >= 0; --i) {
        U = mod(U * V);
        V = mod(V * V - 2 * Qk);
        Qk = mod(Qk * Qk);
        if (mpz_tstbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
            BigInt nu = P * U + V;
            BigInt nv = Dm * U + P * V;
            if (mpz_odd_p(nu.get_mpz_t())) nu += n;
            if (mpz_odd_p(nv.get_mpz_t())) nv += n;
            mpz_fdiv_q_2exp(nu.get_mpz_t(), nu.get_mpz_t(), 1);
            mpz_fdiv_q_2exp(nv.get_mpz_t(), nv.get_mpz_t(), 1);
            U = mod(nu);
            V = mod(nv);
            Qk = mod(Qk * Q);
        }
    }
    if (U == 0 || V == 0) return true;
    for (unsigned long r = 1; r < s; ++r) {
        V = mod(V * V - 2 * Qk);
        if (V == 0) return true;
        Qk = mod(Qk * Qk);
    }
    return false;
}

PrimalityResult is_prime(const BigInt& n, int extra_rounds, std::uint64_t seed) {
    if (sgn(n) <= 0) return {Certainty::Composite, 0};
    if (fits_u64(n))
        return {is_prime_u64(to_u64(n)) ? Certainty::Prime : Certainty::Composite, 0};

    static constexpr std::array<unsigned long, 24> kSmall{
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
    for (unsigned long p : kSmall)
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return {Certainty::Composite, 0};
    if (!strong_probable_prime(n, BigInt(2))) return {Certainty::Composite, 0};
    if (mpz_perfect_square_p(n.get_mpz_t())) return {Certainty::Composite, 0};
    if (!strong_lucas_probable_prime(n)) return {Certainty::Composite, 0};

    gmp_randclass rng(gmp_randinit_default);
    rng.seed(big_from_u64(seed) ^ n);
    const BigInt span = n - 3;
    for (int i = 0; i < extra_rounds; ++i) {
        const BigInt a = rng.get_z_range(span) + 2;  // a in [2, n-2]
        if (!strong_probable_prime(n, a)) return {Certainty::Composite, 0};
    }
    return {Certainty::ProbablePrime, extra_rounds};
}

}  // namespace uss::arith
