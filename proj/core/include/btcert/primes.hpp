#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "btcert/rational.hpp"

namespace btcert {

/// All primes p <= n in increasing order.
std::vector<std::uint64_t> primes_upto(std::uint64_t n);

/// The r-th prime (1-based); nth_prime(1) == 2.
std::uint64_t nth_prime(unsigned r);

/// Product of the first r primes.
BigInt primorial(unsigned r);

/// Q_r / gcd(Q_r, k): the part of the r-th primorial coprime to k.
BigInt coprime_part(unsigned r, std::uint64_t k);

/// Primes dividing n, increasing.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

std::uint64_t totient(std::uint64_t n);
unsigned omega(std::uint64_t n);
unsigned omega(const BigInt& n);
bool is_squarefree(std::uint64_t n);
int mobius(std::uint64_t n);
bool is_prime(std::uint64_t n);
std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

/// Smallest-prime-factor table over [1, limit] with batched multiplicative queries.
class SmallestFactorSieve {
public:
    explicit SmallestFactorSieve(std::uint32_t limit);

    std::uint32_t limit() const { return limit_; }
    std::uint32_t smallest_factor(std::uint32_t n) const { return spf_[n]; }
    std::uint64_t totient(std::uint32_t n) const;
    bool is_squarefree(std::uint32_t n) const;
    unsigned omega(std::uint32_t n) const;

private:
    std::uint32_t limit_;
    std::vector<std::uint32_t> spf_;
};

/// Writes phi(n) for squarefree n and 0 for non-squarefree n, n in [lo, lo + out.size()).
/// base_primes must contain every prime up to sqrt(lo + out.size() - 1); lo >= 1.
void squarefree_totients(std::uint64_t lo, std::span<const std::uint64_t> base_primes,
                         std::span<std::uint64_t> out);

}  // namespace btcert
