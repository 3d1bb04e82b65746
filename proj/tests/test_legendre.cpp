#include <doctest.h>

#include <numeric>
#include <random>

#include <btcert/bounds.hpp>
#include <btcert/legendre.hpp>
#include <btcert/primes.hpp>
#include <btcert/tables.hpp>

using namespace btcert;

namespace {

Rational q(long long n, long long d = 1) { return Rational(n) / Rational(d); }
Rational u(std::uint64_t n) { return Rational(static_cast<unsigned long long>(n)); }

// max over starting terms s of #{n in [s, s + y) : n = a (mod k), gcd(n, Q) = 1}
std::uint64_t slide_oracle(std::uint64_t k, std::uint64_t a, std::uint64_t Q, const Rational& y) {
    std::uint64_t span = to_u64(y.ceil()) - 1;
    std::uint64_t best = 0;
    for (std::uint64_t s = 1; s <= 2 * k * Q + 1; ++s) {
        std::uint64_t c = 0;
        for (std::uint64_t n = s; n <= s + span; ++n)
            if (n % k == a % k && std::gcd(n, Q) == 1) ++c;
        best = std::max(best, c);
    }
    return best;
}

Rational discrepancy(std::uint64_t N, std::uint64_t Q) {
    return u(sieve_count(u(N), 1, 0, Q)) - u(totient(Q)) * u(N) / u(Q);
}

}  // namespace

TEST_CASE("sieve_count examples") {
    CHECK(sieve_count(q(10), 1, 0, 2) == 5);
    CHECK(sieve_count(q(10), 1, 0, 6) == 3);
    CHECK(sieve_count(q(30), 1, 0, 30) == 8);
    CHECK(sieve_count_oracle(q(10), 1, 0, 6) == 3);
    CHECK(sieve_count_oracle(q(0), 1, 0, 2) == 0);
    CHECK(sieve_count(q(0), 1, 0, 2) == 0);
    CHECK(sieve_count(q(21, 2), 1, 0, 2) == 5);
}

TEST_CASE("sieve_count matches the direct loop on random instances") {
    std::mt19937_64 rng(12345);
    const std::uint64_t small[] = {2, 3, 5, 7, 11, 13};
    int mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
        std::uint64_t Q = 1;
        for (auto p : small)
            if (rng() & 1) Q *= p;
        std::uint64_t k = 1 + rng() % 16;
        std::int64_t a = static_cast<std::int64_t>(rng() % k);
        Rational z = q(static_cast<long long>(rng() % 10001));
        if (sieve_count(z, k, a, Q) != sieve_count_oracle(z, k, a, Q)) ++mismatches;
    }
    CHECK(mismatches == 0);
}

TEST_CASE("extremal constants reproduce small wheels") {
    auto c11 = extremal_constants(1, 1);
    CHECK(c11.a_const == q(-1, 2));
    CHECK(c11.b_const == q(1));
    auto c12 = extremal_constants(1, 2);
    CHECK(c12.a_const == q(-2, 3));
    CHECK(c12.b_const == q(4, 3));
    auto c54 = extremal_constants(5, 4);
    CHECK(c54.wheel == 42);
    CHECK(c54.a_const == q(-8, 7));
    CHECK(c54.b_const == q(16, 7));
    auto c18 = extremal_constants(1, 8);
    CHECK(c18.a_const == q(-2799708, 323323));
    CHECK(c18.b_const == q(5599416, 323323));
}

TEST_CASE("extremal values are attained and bracket the discrepancy") {
    for (auto [k, r] : {std::pair{1ULL, 3u}, {1, 4}, {3, 4}, {4, 5}, {7, 5}}) {
        auto c = extremal_constants(k, r);
        std::uint64_t Q = to_u64(c.wheel);
        Rational density = u(totient(Q)) / u(Q);
        CHECK(discrepancy(c.argmin_n, Q) == c.a_const + density);
        CHECK(discrepancy(c.argmax_n, Q) == c.a_const + c.b_const);
        for (std::uint64_t N = 1; N <= Q; ++N) {
            Rational d = discrepancy(N, Q);
            CHECK(c.a_const + density <= d);
            CHECK(d <= c.a_const + c.b_const);
        }
    }
}

TEST_CASE("discrepancy is periodic in the wheel") {
    for (std::uint64_t Q : {30ULL, 210ULL, 2310ULL})
        for (std::uint64_t N = 0; N <= 10000; N += 7) CHECK(discrepancy(N + Q, Q) == discrepancy(N, Q));
}

TEST_CASE("equal wheels give equal constants") {
    for (unsigned r = 1; r <= 6; ++r) {
        auto b4 = extremal_constants(4, r), b8 = extremal_constants(8, r), b16 = extremal_constants(16, r);
        CHECK(b4.wheel == b8.wheel);
        CHECK(b4.b_const == b8.b_const);
        CHECK(b4.b_const == b16.b_const);
        auto b3 = extremal_constants(3, r), b9 = extremal_constants(9, r);
        CHECK(b3.b_const == b9.b_const);
        CHECK(b3.a_const == b9.a_const);
    }
    for (unsigned r = 1; r <= 3; ++r) CHECK(extremal_constants(1, r).b_const == extremal_constants(7, r).b_const);
}

TEST_CASE("shipped rows with r <= 6 match the scan") {
    auto tables = load_tables();
    for (const auto& row : tables.extremal) {
        if (row.r > 6) continue;
        auto c = extremal_constants(row.k, row.r);
        CHECK(c.a_const == row.a_const);
        CHECK(c.b_const == row.b_const);
    }
}

TEST_CASE("window_count_max") {
    CHECK(window_count_max(1, 0, 2, q(3)) == 2);
    CHECK(window_count_max(1, 0, 6, q(6)) == 2);
    CHECK(slide_oracle(1, 0, 6, q(6)) == 2);
    CHECK(window_count_max(1, 0, 30, q(7)) == slide_oracle(1, 0, 30, q(7)));
    CHECK_THROWS(window_count_max(2, 1, 6, q(5)));
    CHECK_THROWS(window_count_max(1, 0, 0, q(5)));
    CHECK_THROWS(window_count_max(1, 0, 9699690, q(5), 1000));
}

TEST_CASE("window_count_max matches a brute slide and ignores the residue") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 60; ++i) {
        std::uint64_t k = 1 + rng() % 12;
        std::uint64_t Q = 1;
        for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL})
            if (k % p != 0 && (rng() & 1)) Q *= p;
        Rational y = q(static_cast<long long>(1 + rng() % 60), static_cast<long long>(1 + rng() % 3));
        std::uint64_t ref = window_count_max(k, 0, Q, y);
        for (std::uint64_t a = 0; a < k && k * Q <= 100000; ++a) {
            CHECK(window_count_max(k, static_cast<std::int64_t>(a), Q, y) == ref);
        }
        CHECK(slide_oracle(k, 1 % k, Q, y) == ref);
    }
}

TEST_CASE("window_count_max stays below the linear bound") {
    std::mt19937_64 rng(4242);
    for (int i = 0; i < 1000; ++i) {
        std::uint64_t k = 1 + rng() % 16;
        unsigned r = 1 + rng() % 6;
        auto c = extremal_constants(k, r);
        std::uint64_t Q = to_u64(c.wheel);
        if (k * Q > 5'000'000) continue;
        Rational y = q(static_cast<long long>(1 + rng() % 2000), static_cast<long long>(1 + rng() % 4));
        std::uint64_t w = window_count_max(k, 1, Q, y);
        CHECK(u(w) < u(totient(Q)) * y / (u(Q) * u(k)) + c.b_const);
    }
}

TEST_CASE("window bounds") {
    auto tables = load_tables();
    ExtremalTable ext(tables.extremal, 8);
    auto b2 = lemma23_window_bound(1, 2, q(14), ext);
    CHECK(b2.is_point());
    CHECK(b2.contains(q(8)));
    auto b10 = lemma23_window_bound(1, 10, q(381), ext);
    CHECK(b10.lower() > 112.0);
    CHECK(b10.upper() < 112.011);
    CHECK(certainly_less(b10, simple_bound(1, q(381), Rational::parse("0.8601"))));

    auto c39 = ext.get(3, 9);
    CHECK(c39.source == "table");
    BigInt Q39 = coprime_part(9, 3);
    CHECK(omega(Q39) == 8);
    Rational expect = u(totient(to_u64(Q39))) * q(463) / (q(3) * Rational(Q39)) + c39.b_const + q(8);
    CHECK(lemma23_window_bound(3, 9, q(463), ext).contains(expect));

    auto ch = chained_window_bound(1, 6, q(111557), ext);
    CHECK(ch.lower() > 17874.0);
    CHECK(certainly_less(ch, simple_bound(1, q(111557), Rational::parse("0.8601"))));
    auto c10 = ext.get(1, 10);
    BigInt Q11 = primorial(11);
    Rational phi11(1);
    for (unsigned i = 1; i <= 11; ++i) phi11 *= u(nth_prime(i) - 1);
    CHECK(chained_window_bound(1, 1, q(100000), ext).contains(phi11 * q(100000) / Rational(Q11) + Rational(2) * c10.b_const + q(11)));
    CHECK(certainly_less(chained_window_bound(1, 6, q(669671), ext), simple_bound(1, q(669671), Rational::parse("0.8601"))));
}

TEST_CASE("extremal table sources") {
    auto tables = load_tables();
    ExtremalTable ext(tables.extremal, 8);
    CHECK(ext.get(1, 8).source == "scan");
    CHECK(ext.get(1, 10).source == "table");
    CHECK(ext.get(1, 10).b_const == q(117142226, 2800733));
    CHECK(ext.get(16, 9).b_const == ext.get(4, 9).b_const);
}
