#include <doctest.h>

#include <random>

#include <btcert/prime_count.hpp>
#include <btcert/primes.hpp>

using namespace btcert;

namespace {

bool trial_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t brute(std::uint64_t x, std::uint64_t y, std::uint64_t k, std::uint64_t a) {
    std::uint64_t c = 0;
    for (std::uint64_t n = x + 1; n <= x + y; ++n)
        if (n % k == a % k && trial_prime(n)) ++c;
    return c;
}

}  // namespace

TEST_CASE("pi_ap examples") {
    CHECK(pi_ap({0, 10, 1, 0}) == 4);
    CHECK(pi_ap({0, 100, 4, 1}) == 11);
    CHECK(pi_ap({1000000, 10000, 3, 2}) == brute(1000000, 10000, 3, 2));
    CHECK(pi_ap({0, 1, 1, 0}) == 0);
    CHECK(pi_ap({1, 1, 1, 0}) == 1);
}

TEST_CASE("pi_ap argument checks") {
    CHECK_THROWS_AS(pi_ap({0, 10, 4, 2}), std::invalid_argument);
    CHECK_THROWS_AS(pi_ap({0, 10, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(pi_ap({kPrimeCountLimit, 1, 1, 0}), std::out_of_range);
    CHECK_THROWS_AS(pi_ap({0, 2000, 1, 0}, 1000), std::out_of_range);
}

TEST_CASE("pi_ap matches trial division across segment boundaries") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 40; ++i) {
        std::uint64_t k = 1 + rng() % 16, a;
        do a = rng() % k; while (gcd(a, k) != 1);
        std::uint64_t x = rng() % 3000000, y = 1 + rng() % 3000;
        CHECK(pi_ap({x, y, k, a}) == brute(x, y, k, a));
    }
    std::uint64_t edge = (1u << 20) - 50;
    CHECK(pi_ap({edge, 100, 1, 0}) == brute(edge, 100, 1, 0));
    CHECK(pi_ap({0, (1u << 20) + 500, 1, 0}) == pi_ap({0, 1u << 20, 1, 0}) + pi_ap({1u << 20, 500, 1, 0}));
}

TEST_CASE("residue classes partition the primes") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 30; ++i) {
        std::uint64_t k = 2 + rng() % 15, x = rng() % 100000, y = 1 + rng() % 5000;
        std::uint64_t sum = 0;
        for (std::uint64_t a = 0; a < k; ++a)
            if (gcd(a, k) == 1) sum += pi_ap({x, y, k, a});
        for (auto p : prime_divisors(k))
            if (p > x && p <= x + y) ++sum;
        CHECK(sum == pi_ap({x, y, 1, 0}));
    }
}

TEST_CASE("pi_ap is additive over adjacent windows") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 30; ++i) {
        std::uint64_t x = rng() % 5000000, y1 = 1 + rng() % 50000, y2 = 1 + rng() % 50000;
        CHECK(pi_ap({x, y1 + y2, 4, 3}) == pi_ap({x, y1, 4, 3}) + pi_ap({x + y1, y2, 4, 3}));
    }
}

TEST_CASE("spot checks") {
    auto ok1 = spot_check(1, Rational::parse("0.8601"), 1000);
    CHECK(ok1.verified());
    CHECK(ok1.parameters["seed"] == kDefaultSeed);
    CHECK(spot_check(12, Rational::parse("2.3143"), 1000).verified());
    auto bad = spot_check(1, Rational(40), 1000);
    CHECK(bad.status == Status::failed);
    CHECK(bad.witnesses.size() > 2);
    CHECK_THROWS(spot_check(1, Rational(1), 0));
}

TEST_CASE("spot checks are reproducible and independent of jobs") {
    SpotCheckOptions a, b;
    a.seed = b.seed = 77;
    b.scan.jobs = 3;
    auto ra = spot_check(7, Rational::parse("1.3925"), 200, a);
    auto rb = spot_check(7, Rational::parse("1.3925"), 200, b);
    CHECK(ra.to_json(false) == rb.to_json(false));
}
