#include "uskolem/context.hpp"

#include "uskolem/error.hpp"

namespace uss {

Context::Context(std::shared_ptr<const arith::PrimeTable> primes, Limits limits)
    : primes_(std::move(primes)), limits_(limits) {
    if (!primes_) throw ContractViolation("Context: prime table required");
    if (limits_.scan_cap == 0 || limits_.exact_cap == 0 || limits_.probable_prime_rounds < 0)
        throw DomainError("Context: caps must be positive");
    if (limits_.threads == 0) limits_.threads = 1;
}

Context Context::with_sieve(std::uint64_t sieve_limit, Limits limits) {
    return Context(std::make_shared<const arith::PrimeTable>(arith::PrimeTable::build(sieve_limit)),
                   limits);
}

bool Context::is_prime(std::uint64_t n) const {
    return n <= primes_->limit() ? primes_->is_prime(n) : arith::is_prime_u64(n);
}

arith::PrimalityResult Context::check_prime(const BigInt& n) const {
    if (fits_u64(n))
        return {is_prime(to_u64(n)) ? arith::Certainty::Prime : arith::Certainty::Composite, 0};
    return arith::is_prime(n, limits_.probable_prime_rounds, limits_.seed);
}

}  // namespace uss
