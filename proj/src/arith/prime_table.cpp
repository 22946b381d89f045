#include "uskolem/arith/prime_table.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <random>

#include "uskolem/arith/primality.hpp"
#include "uskolem/error.hpp"

namespace uss::arith {
namespace {

constexpr std::uint64_t kSegmentOdds = std::uint64_t{1} << 18;

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Plain sieve for the base primes up to sqrt(limit).
std::vector<std::uint32_t> base_primes(std::uint64_t bound) {
    std::vector<bool> composite(bound + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 3; i <= bound; i += 2) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= bound; j += 2 * i) composite[j] = true;
    }
    return out;
}

}  // namespace

PrimeTable PrimeTable::build(std::uint64_t limit, std::uint64_t memory_bound) {
    if (limit < 2) throw DomainError("prime_sieve: limit must be >= 2");
    if (limit > memory_bound)
        throw ResourceError("prime_sieve: limit " + std::to_string(limit) +
                            " exceeds the memory bound " + std::to_string(memory_bound));

    PrimeTable t;
    t.limit_ = limit;
    const std::uint64_t odds = limit / 2 + 1;  // 1, 3, ..., covering limit
    t.bits_.assign((odds + 63) / 64, ~std::uint64_t{0});

    const auto base = base_primes(isqrt(limit));
    std::vector<std::uint64_t> next(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) next[i] = (std::uint64_t{base[i]} * base[i]) / 2;

    for (std::uint64_t seg = 0; seg < odds; seg += kSegmentOdds) {
        const std::uint64_t seg_end = std::min(odds, seg + kSegmentOdds);
        for (std::size_t i = 0; i < base.size(); ++i) {
            const std::uint64_t p = base[i];
            std::uint64_t j = next[i];
            for (; j < seg_end; j += p) t.bits_[j >> 6] &= ~(std::uint64_t{1} << (j & 63));
            next[i] = j;
        }
    }
    t.bits_[0] &= ~std::uint64_t{1};  // 1 is not prime
    // Clear padding past the last odd number <= limit.
    const std::uint64_t tail = odds & 63;
    if (tail != 0) t.bits_.back() &= (std::uint64_t{1} << tail) - 1;
    return t;
}

bool PrimeTable::is_prime(std::uint64_t n) const {
    if (n > limit_) throw ResourceError("PrimeTable: query beyond sieve limit");
    if (n < 3) return n == 2;
    if ((n & 1) == 0) return false;
    return odd_bit(n >> 1);
}

std::uint64_t PrimeTable::count(std::uint64_t lo, std::uint64_t hi) const {
    hi = std::min(hi, limit_);
    if (lo > hi) return 0;
    std::uint64_t total = (lo <= 2 && hi >= 2) ? 1 : 0;
    if (hi < 3) return total;
    std::uint64_t first = std::max<std::uint64_t>(lo, 3);
    if ((first & 1) == 0) ++first;
    if (first > hi) return total;
    const std::uint64_t a = first >> 1;
    const std::uint64_t b = (hi - 1) >> 1;  // index of the last odd <= hi
    if (a > b) return total;
    const std::uint64_t wa = a >> 6, wb = b >> 6;
    const std::uint64_t mask_lo = ~std::uint64_t{0} << (a & 63);
    const std::uint64_t mask_hi = (b & 63) == 63 ? ~std::uint64_t{0}
                                                 : (std::uint64_t{1} << ((b & 63) + 1)) - 1;
    if (wa == wb) return total + std::popcount(bits_[wa] & mask_lo & mask_hi);
    total += std::popcount(bits_[wa] & mask_lo);
    for (std::uint64_t w = wa + 1; w < wb; ++w) total += std::popcount(bits_[w]);
    total += std::popcount(bits_[wb] & mask_hi);
    return total;
}

void PrimeTable::for_each_prime(std::uint64_t lo, std::uint64_t hi,
                                const std::function<void(std::uint64_t)>& fn) const {
    hi = std::min(hi, limit_);
    if (lo > hi) return;
    if (lo <= 2 && hi >= 2) fn(2);
    if (hi < 3) return;
    std::uint64_t first = std::max<std::uint64_t>(lo, 3);
    if ((first & 1) == 0) ++first;
    const std::uint64_t a = first >> 1;
    const std::uint64_t b = (hi - 1) >> 1;  // index of the last odd <= hi
    for (std::uint64_t w = a >> 6; w <= (b >> 6); ++w) {
        std::uint64_t word = bits_[w];
        while (word) {
            const std::uint64_t i = (w << 6) + std::countr_zero(word);
            word &= word - 1;
            if (i < a) continue;
            if (i > b) return;
            fn(2 * i + 1);
        }
    }
}

std::vector<std::uint64_t> PrimeTable::primes(std::uint64_t lo, std::uint64_t hi) const {
    std::vector<std::uint64_t> out;
    for_each_prime(lo, hi, [&](std::uint64_t p) { out.push_back(p); });
    return out;
}

void PrimeTable::save(const std::filesystem::path& path) const {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ResourceError("cannot open sieve cache for writing: " + path.string());
    auto put_u64 = [&](std::uint64_t v) {
        std::array<char, 8> b{};
        for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
        f.write(b.data(), 8);
    };
    f.put(static_cast<char>(kCacheVersion));
    put_u64(limit_);
    for (std::uint64_t w : bits_) put_u64(w);
    if (!f) throw ResourceError("failed writing sieve cache: " + path.string());
}

bool PrimeTable::load(const std::filesystem::path& path, std::uint64_t expected_limit,
                      PrimeTable& out, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    std::ifstream f(path, std::ios::binary);
    if (!f) return fail("missing");
    auto get_u64 = [&](std::uint64_t& v) {
        std::array<unsigned char, 8> b{};
        if (!f.read(reinterpret_cast<char*>(b.data()), 8)) return false;
        v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t{b[i]} << (8 * i);
        return true;
    };
    const int version = f.get();
    if (version != kCacheVersion) return fail("version mismatch");
    std::uint64_t limit = 0;
    if (!get_u64(limit)) return fail("truncated header");
    if (limit != expected_limit) return fail("limit mismatch");
    if (limit < 2) return fail("corrupt limit");

    PrimeTable t;
    t.limit_ = limit;
    t.bits_.resize((limit / 2 + 1 + 63) / 64);
    for (auto& w : t.bits_)
        if (!get_u64(w)) return fail("truncated bit array");
    if (f.peek() != std::char_traits<char>::eof()) return fail("trailing bytes");

    // Spot checks: an exact prefix against a fresh sieve and random positions
    // against Miller-Rabin.
    const std::uint64_t prefix = std::min<std::uint64_t>(limit, 1 << 16);
    const auto fresh = build(std::max<std::uint64_t>(prefix, 2));
    for (std::uint64_t w = 0; w < (prefix / 2 + 1) / 64; ++w)
        if (fresh.bits_[w] != t.bits_[w]) return fail("prefix mismatch");
    std::mt19937_64 rng(limit);
    for (int i = 0; i < 512; ++i) {
        const std::uint64_t n = rng() % (limit + 1);
        if (t.is_prime(n) != is_prime_u64(n)) return fail("spot check mismatch");
    }
    const std::uint64_t tail = (limit / 2 + 1) & 63;
    if (tail != 0 && (t.bits_.back() >> tail) != 0) return fail("padding bits set");
    out = std::move(t);
    return true;
}

}  // namespace uss::arith
