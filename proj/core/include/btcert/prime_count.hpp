#pragma once

#include <cstdint>

#include "btcert/parallel.hpp"
#include "btcert/rational.hpp"
#include "btcert/report.hpp"

namespace btcert {

/// Primes p in (x, x + y] with p = a (mod k).
struct ApWindowQuery {
    std::uint64_t x = 0;
    std::uint64_t y = 1;
    std::uint64_t k = 1;
    std::uint64_t a = 0;
};

constexpr std::uint64_t kPrimeCountLimit = 1'000'000'000'000ULL;
constexpr std::uint64_t kDefaultSeed = 20240917;

/// Segmented sieve of Eratosthenes; throws std::out_of_range beyond `limit` and
/// std::invalid_argument when gcd(k, a) != 1.
std::uint64_t pi_ap(const ApWindowQuery& q, std::uint64_t limit = kPrimeCountLimit);

struct SpotCheckOptions {
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t x_max = 10'000'000;
    std::uint64_t y_max = 100'000;
    ScanOptions scan;
};

/// Random admissible windows with y > k; each count must stay below simple_bound(k, y, xi)
/// and, where it applies, the thm11 bound.
VerificationReport spot_check(std::uint64_t k, const Rational& xi, std::uint64_t trials,
                              const SpotCheckOptions& options = {});

}  // namespace btcert
