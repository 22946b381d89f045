#include "uskolem/lrs/lrs.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "uskolem/arith/number_theory.hpp"
#include "uskolem/arith/primality.hpp"
#include "uskolem/error.hpp"

namespace uss::lrs {
namespace {

// Coefficient rings for the x^n mod Psi engine.
struct Mod64Ring {
    using Elem = std::uint64_t;
    std::uint64_t m;
    Elem from(const BigInt& v) const { return mod_u64(v, m); }
    Elem zero() const { return 0; }
    Elem one() const { return 1 % m; }
    Elem add(Elem a, Elem b) const {
        const Elem s = a + b;
        return (s >= m || s < a) ? s - m : s;
    }
    Elem mul(Elem a, Elem b) const { return arith::mulmod(a, b, m); }
};

struct ModBigRing {
    using Elem = BigInt;
    BigInt m;
    Elem from(const BigInt& v) const {
        BigInt r;
        mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
        return r;
    }
    Elem zero() const { return 0; }
    Elem one() const { return from(BigInt(1)); }
    Elem add(const Elem& a, const Elem& b) const {
        BigInt s = a + b;
        if (s >= m) s -= m;
        return s;
    }
    Elem mul(const Elem& a, const Elem& b) const { return from(a * b); }
};

struct IntegerRing {
    using Elem = BigInt;
    Elem from(const BigInt& v) const { return v; }
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
};

// x^n mod Psi over the ring, returned as k coefficients (degree < k).
template <class Ring>
std::vector<typename Ring::Elem> x_power_mod(const Ring& ring, const std::vector<BigInt>& coeffs,
                                             const BigInt& n) {
    using E = typename Ring::Elem;
    const std::size_t k = coeffs.size();
    std::vector<E> a;
    a.reserve(k);
    for (const auto& c : coeffs) a.push_back(ring.from(c));

    auto times_x = [&](std::vector<E>& p) {
        E top = p[k - 1];
        for (std::size_t i = k - 1; i > 0; --i) p[i] = p[i - 1];
        p[0] = ring.zero();
        for (std::size_t j = 0; j < k; ++j) p[k - 1 - j] = ring.add(p[k - 1 - j], ring.mul(top, a[j]));
    };
    auto square = [&](const std::vector<E>& p) {
        std::vector<E> prod(2 * k - 1, ring.zero());
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) prod[i + j] = ring.add(prod[i + j], ring.mul(p[i], p[j]));
        // x^d = x^{d-k} * (a_0 x^{k-1} + ... + a_{k-1}) for d >= k.
        for (std::size_t d = 2 * k - 2; d >= k; --d) {
            const E t = prod[d];
            for (std::size_t j = 0; j < k; ++j)
                prod[d - 1 - j] = ring.add(prod[d - 1 - j], ring.mul(t, a[j]));
        }
        prod.resize(k);
        return prod;
    };

    std::vector<E> result(k, ring.zero());
    result[0] = ring.one();
    const auto bits = bit_length(n);
    for (std::size_t i = bits; i-- > 0;) {
        result = square(result);
        if (mpz_tstbit(n.get_mpz_t(), i)) times_x(result);
    }
    return result;
}

template <class Ring>
typename Ring::Elem evaluate(const Ring& ring, const Lrs& lrs, const BigInt& n) {
    const auto c = x_power_mod(ring, lrs.coeffs, n);
    auto acc = ring.zero();
    for (std::size_t i = 0; i < c.size(); ++i) acc = ring.add(acc, ring.mul(c[i], ring.from(lrs.inits[i])));
    return acc;
}

void check_index(const BigInt& n) {
    if (sgn(n) < 0) throw DomainError("LRS index must be non-negative");
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<BigInt> parse_list(std::string_view s, std::string_view what) {
    std::vector<BigInt> out;
    while (true) {
        const auto comma = s.find(',');
        auto tok = trim(s.substr(0, comma));
        auto v = parse_bigint(tok);
        if (!v) throw DomainError("malformed " + std::string(what) + " entry '" + std::string(tok) + "'");
        out.push_back(*v);
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

// Berlekamp-Massey over Q: connection polynomial C with C[0] = 1 and the
// linear complexity L.
std::pair<std::vector<Rational>, std::size_t> berlekamp_massey(const std::vector<BigInt>& s) {
    std::vector<Rational> C{Rational(1)}, B{Rational(1)};
    std::size_t L = 0, shift = 1;
    Rational b(1);
    for (std::size_t n = 0; n < s.size(); ++n) {
        Rational d(s[n]);
        for (std::size_t i = 1; i <= L && i < C.size(); ++i) d += C[i] * Rational(s[n - i]);
        d.canonicalize();
        if (sgn(d) == 0) {
            ++shift;
            continue;
        }
        const Rational coef = d / b;
        std::vector<Rational> T = C;
        if (C.size() < B.size() + shift) C.resize(B.size() + shift, Rational(0));
        for (std::size_t i = 0; i < B.size(); ++i) {
            C[i + shift] -= coef * B[i];
            C[i + shift].canonicalize();
        }
        if (2 * L <= n) {
            L = n + 1 - L;
            B = std::move(T);
            b = d;
            shift = 1;
        } else {
            ++shift;
        }
    }
    C.resize(L + 1, Rational(0));
    return {C, L};
}

// Minimal recurrence of a sequence known to have order <= max_order, from
// its first 2*max_order terms (the remaining terms are not consulted).
Lrs recurrence_from_terms(const std::vector<BigInt>& terms, std::size_t max_order) {
    const std::vector<BigInt> head(terms.begin(), terms.begin() + static_cast<long>(2 * max_order));
    auto [C, L] = berlekamp_massey(head);
    if (L == 0) return Lrs::zero_sequence();
    std::vector<BigInt> coeffs(L);
    for (std::size_t i = 1; i <= L; ++i) {
        Rational a = -C[i];
        a.canonicalize();
        // The minimal polynomial divides a monic integer polynomial, so by
        // Gauss's lemma it is integral.
        if (a.get_den() != 1) throw ContractViolation("non-integral minimal polynomial");
        coeffs[i - 1] = a.get_num();
    }
    if (sgn(coeffs.back()) == 0)
        throw DomainError("the minimal polynomial has the root 0; "
                          "drop leading terms so the sequence is purely recurrent");
    return Lrs::make(std::move(coeffs), std::vector<BigInt>(head.begin(), head.begin() + static_cast<long>(L)));
}

}  // namespace

Lrs Lrs::make(std::vector<BigInt> coeffs, std::vector<BigInt> inits) {
    if (coeffs.empty()) throw DomainError("LRS needs at least one coefficient");
    if (coeffs.size() != inits.size())
        throw DomainError("LRS needs as many initial terms as coefficients");
    Lrs l;
    l.coeffs = std::move(coeffs);
    l.inits = std::move(inits);
    return l;
}

Lrs Lrs::zero_sequence() {
    Lrs l;
    l.coeffs = {BigInt(1)};
    l.inits = {BigInt(0)};
    l.zero = true;
    return l;
}

IntPoly Lrs::characteristic() const {
    const std::size_t k = order();
    std::vector<BigInt> c(k + 1);
    c[k] = 1;
    for (std::size_t i = 0; i < k; ++i) c[k - 1 - i] = -coeffs[i];
    return IntPoly(std::move(c));
}

std::vector<BigInt> Lrs::prefix(std::size_t count) const {
    std::vector<BigInt> out(inits.begin(), inits.begin() + static_cast<long>(std::min(count, inits.size())));
    const std::size_t k = order();
    while (out.size() < count) {
        BigInt next = 0;
        const std::size_t n = out.size();
        for (std::size_t j = 0; j < k; ++j) next += coeffs[j] * out[n - 1 - j];
        out.push_back(std::move(next));
    }
    return out;
}

Lrs parse_lrs(std::string_view text) {
    std::optional<std::vector<BigInt>> coeffs, inits;
    while (!trim(text).empty()) {
        const auto semi = text.find(';');
        auto part = trim(text.substr(0, semi));
        text = semi == std::string_view::npos ? std::string_view{} : text.substr(semi + 1);
        if (part.empty()) continue;
        const auto eq = part.find('=');
        if (eq == std::string_view::npos) throw DomainError("LRS text: expected key=value");
        const auto key = trim(part.substr(0, eq));
        const auto value = part.substr(eq + 1);
        if (key == "coeffs")
            coeffs = parse_list(value, "coeffs");
        else if (key == "inits")
            inits = parse_list(value, "inits");
        else
            throw DomainError("LRS text: unknown key '" + std::string(key) + "'");
    }
    if (!coeffs || !inits) throw DomainError("LRS text: both coeffs= and inits= are required");
    return Lrs::make(std::move(*coeffs), std::move(*inits));
}

std::string format_lrs(const Lrs& lrs) {
    auto join = [](const std::vector<BigInt>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
        return s;
    };
    return "coeffs=" + join(lrs.coeffs) + "; inits=" + join(lrs.inits);
}

BigInt term_exact(const Lrs& lrs, const BigInt& n, std::uint64_t exact_cap) {
    check_index(n);
    if (n > big_from_u64(exact_cap))
        throw ResourceError("term_exact: index above the exact-evaluation cap " +
                            std::to_string(exact_cap) + "; use term_mod");
    if (lrs.zero) return 0;
    const std::uint64_t idx = to_u64(n);
    if (idx < lrs.order()) return lrs.inits[idx];
    if (idx <= 64 * lrs.order()) return lrs.prefix(idx + 1).back();
    return evaluate(IntegerRing{}, lrs, n);
}

std::uint64_t term_mod(const Lrs& lrs, const BigInt& n, std::uint64_t m) {
    check_index(n);
    if (m < 2) throw DomainError("term_mod: modulus must be >= 2");
    if (lrs.zero) return 0;
    return evaluate(Mod64Ring{m}, lrs, n);
}

BigInt term_mod(const Lrs& lrs, const BigInt& n, const BigInt& m) {
    check_index(n);
    if (m < 2) throw DomainError("term_mod: modulus must be >= 2");
    if (fits_u64(m)) return big_from_u64(term_mod(lrs, n, to_u64(m)));
    if (lrs.zero) return 0;
    return evaluate(ModBigRing{m}, lrs, n);
}

Lrs minimize(const Lrs& lrs) {
    if (lrs.zero) return Lrs::zero_sequence();
    const std::size_t k = lrs.order();
    Lrs out = recurrence_from_terms(lrs.prefix(4 * k), k);
    if (out.prefix(4 * k) != lrs.prefix(4 * k))
        throw ContractViolation("minimize: recovered recurrence does not reproduce the sequence");
    return out;
}

IntPoly quotient_resultant(const IntPoly& psi) {
    const int k = psi.degree();
    if (k < 1) throw DomainError("quotient_resultant: degree must be >= 1");
    const std::size_t points = static_cast<std::size_t>(k) * static_cast<std::size_t>(k) + 1;
    const std::vector<BigInt>& f = psi.coeffs();
    std::vector<BigInt> values;
    values.reserve(points);
    for (std::size_t x = 0; x < points; ++x) {
        // Psi(x y): coefficient of y^i is c_i x^i; formal degree k kept.
        std::vector<BigInt> g(psi.coeffs().size());
        BigInt xp = 1;
        for (std::size_t i = 0; i < g.size(); ++i) {
            g[i] = psi.coeffs()[i] * xp;
            xp *= static_cast<unsigned long>(x);
        }
        values.push_back(resultant(f, g));
    }
    return interpolate_at_naturals(values);
}

Degeneracy is_degenerate(const Lrs& lrs) {
    if (lrs.zero) return {};
    const Lrs minimal = minimize(lrs);
    if (minimal.order() != lrs.order())
        throw ContractViolation("is_degenerate: recurrence is not minimal (order " +
                                std::to_string(lrs.order()) + " vs minimal " +
                                std::to_string(minimal.order()) + ")");
    Degeneracy out;
    const std::size_t k = lrs.order();
    if (k == 1) return out;

    IntPoly r = quotient_resultant(lrs.characteristic());
    out.quotient_poly = r;
    const IntPoly x_minus_1({BigInt(-1), BigInt(1)});
    for (;;) {
        auto [q, rem] = divmod_unit_leading(r, x_minus_1);
        if (!rem.is_zero()) break;
        r = q;
    }
    // Phi_m | R forces phi(m) <= deg R <= k^2, and phi(m) >= sqrt(m/2) gives m <= 2k^4.
    const std::uint64_t deg = static_cast<std::uint64_t>(std::max(r.degree(), 0));
    const std::uint64_t kk = static_cast<std::uint64_t>(k) * k;
    const std::uint64_t m_max = 2 * kk * kk;
    for (std::uint64_t m = 2; m <= m_max && deg > 0; ++m) {
        if (arith::totient(m) > deg) continue;
        const auto [q, rem] = divmod_unit_leading(r, cyclotomic(m));
        if (rem.is_zero()) out.unity_orders.push_back(m);
    }
    if (!out.unity_orders.empty()) {
        out.degenerate = true;
        out.witness_order = out.unity_orders.front();
    }
    return out;
}

Decomposition decompose(const Lrs& lrs) {
    if (lrs.zero) return {1, {Component{0, Lrs::zero_sequence()}}};
    const auto deg = is_degenerate(lrs);
    std::uint64_t M = 1;
    for (std::uint64_t m : deg.unity_orders) M = std::lcm(M, m);
    if (M == 1) return {1, {Component{0, lrs}}};

    const std::size_t k = lrs.order();
    const auto terms = lrs.prefix(4 * k * M);
    Decomposition out{M, {}};
    for (std::uint64_t i = 0; i < M; ++i) {
        std::vector<BigInt> sub;
        for (std::size_t j = 0; j < 4 * k; ++j) sub.push_back(terms[j * M + i]);
        // Each subsequence satisfies a recurrence of order <= k.
        Lrs seq = recurrence_from_terms(sub, k);
        if (!seq.zero && seq.prefix(4 * k) != sub)
            throw ContractViolation("decompose: component recurrence does not reproduce the subsequence");
        out.components.push_back(Component{i, std::move(seq)});
    }
    return out;
}

}  // namespace uss::lrs
