#include "btcert/primes.hpp"

#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace btcert {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

std::vector<std::uint64_t> primes_upto(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (!composite[p])
            for (std::uint64_t m = p * p; m <= n; m += p) composite[m] = true;
    for (std::uint64_t p = 2; p <= n; ++p)
        if (!composite[p]) out.push_back(p);
    return out;
}

std::uint64_t nth_prime(unsigned r) {
    static const std::vector<std::uint64_t> small = primes_upto(20000);
    if (r == 0) throw std::invalid_argument("nth_prime: r must be positive");
    if (r > small.size()) throw std::out_of_range("nth_prime: r too large");
    return small[r - 1];
}

BigInt primorial(unsigned r) {
    BigInt q = 1;
    for (unsigned i = 1; i <= r; ++i) q *= static_cast<unsigned long>(nth_prime(i));
    return q;
}

BigInt coprime_part(unsigned r, std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("coprime_part: k must be positive");
    BigInt q = 1;
    for (unsigned i = 1; i <= r; ++i) {
        std::uint64_t p = nth_prime(i);
        if (k % p != 0) q *= static_cast<unsigned long>(p);
    }
    return q;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t totient(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("totient: n must be positive");
    std::uint64_t r = n;
    for (auto p : prime_divisors(n)) r = r / p * (p - 1);
    return r;
}

unsigned omega(std::uint64_t n) { return static_cast<unsigned>(prime_divisors(n).size()); }

unsigned omega(const BigInt& n) {
    BigInt m = n;
    unsigned count = 0;
    for (unsigned long p = 2; BigInt(p) * p <= m; ++p) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            ++count;
            while (mpz_divisible_ui_p(m.get_mpz_t(), p)) mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        }
    }
    return m > 1 ? count + 1 : count;
}

bool is_squarefree(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("is_squarefree: n must be positive");
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return false;
        }
    }
    return true;
}

int mobius(std::uint64_t n) {
    if (!is_squarefree(n)) return 0;
    return omega(n) % 2 == 0 ? 1 : -1;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

SmallestFactorSieve::SmallestFactorSieve(std::uint32_t limit) : limit_(limit), spf_(limit + 1, 0) {
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf_[i] != 0) continue;
        for (std::uint64_t m = i; m <= limit; m += i)
            if (spf_[m] == 0) spf_[m] = static_cast<std::uint32_t>(i);
    }
    if (limit >= 1) spf_[1] = 1;
}

std::uint64_t SmallestFactorSieve::totient(std::uint32_t n) const {
    std::uint64_t r = n;
    while (n > 1) {
        std::uint32_t p = spf_[n];
        r = r / p * (p - 1);
        while (n % p == 0) n /= p;
    }
    return r;
}

bool SmallestFactorSieve::is_squarefree(std::uint32_t n) const {
    while (n > 1) {
        std::uint32_t p = spf_[n];
        n /= p;
        if (n % p == 0) return false;
    }
    return true;
}

unsigned SmallestFactorSieve::omega(std::uint32_t n) const {
    unsigned count = 0;
    while (n > 1) {
        std::uint32_t p = spf_[n];
        ++count;
        while (n % p == 0) n /= p;
    }
    return count;
}

void squarefree_totients(std::uint64_t lo, std::span<const std::uint64_t> base_primes,
                         std::span<std::uint64_t> out) {
    if (out.empty()) return;
    if (lo == 0) throw std::invalid_argument("squarefree_totients: range must start at 1 or later");
    const std::uint64_t hi = lo + out.size();  // exclusive
    const std::uint64_t root = isqrt(hi - 1);
    // rest[i] holds the cofactor not yet accounted for; phi accumulates p - 1 per prime.
    std::vector<std::uint64_t> rest(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        rest[i] = lo + i;
        out[i] = 1;
    }
    for (std::uint64_t p : base_primes) {
        if (p > root) break;
        std::uint64_t first = (lo + p - 1) / p * p;
        for (std::uint64_t m = first; m < hi; m += p) {
            std::size_t i = m - lo;
            if (out[i] == 0) continue;
            if ((m / p) % p == 0) {
                out[i] = 0;
                continue;
            }
            rest[i] /= p;
            out[i] *= p - 1;
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        if (out[i] != 0 && rest[i] > 1) out[i] *= rest[i] - 1;
}

}  // namespace btcert
