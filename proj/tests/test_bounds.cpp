#include <doctest.h>

#include "oracle.hpp"

#include <btcert/bounds.hpp>
#include <btcert/mertens.hpp>
#include <btcert/prime_count.hpp>
#include <btcert/primes.hpp>
#include <btcert/tables.hpp>

#include <random>

using namespace btcert;
using btcert::test::agrees;

namespace {

Rational q(long long n, long long d = 1) { return Rational(n) / Rational(d); }
Rational dec(const char* s) { return Rational::parse(s); }
const Rational kXi1 = dec("0.8601");

// Values below: mpmath at 40 digits from the displayed formulas.
const char* kEta1 = "1.332582275733220881765828776071027748838";

struct Fixture {
    TableSet tables = load_tables();
    ExtremalTable extremal{tables.extremal, 8};
};

Fixture& fixture() {
    static Fixture f;
    return f;
}

}  // namespace

TEST_CASE("epsilon pieces") {
    CHECK(agrees(eps1(1, q(10000)), "0.03149696008998075254142002772530334053119"));
    CHECK(agrees(eps2(1, 1), "0.4254150112525098331659984965423274154141"));
    auto e3 = eps3(1, q(10000000000LL));
    CHECK(agrees(e3, "0.00000005768181646252420299128909808164955961455"));
    CHECK(agrees(eps_total(1, q(10000000000LL), EpsVariant::thm11), "0.01317080871556656487504583944965333696279"));
    CHECK_THROWS_AS(eps1(1, q(0)), std::domain_error);
    CHECK_THROWS_AS(eps2(1, 0), std::domain_error);
    CHECK_THROWS_AS(eps3(1, q(-1)), std::domain_error);
    CHECK_THROWS_AS(eps_total(5, q(5), EpsVariant::thm11), std::domain_error);
}

TEST_CASE("eps1 uses the remainder constant 2.44 for k = 1") {
    Rational z(10000);
    auto expect = IntervalReal(Rational::parse(kEta1)) / IntervalReal(q(10001)) +
                  IntervalReal(dec("1.285398163397448309615660845819875721049")) * IntervalReal(q(61, 25)) / IntervalReal(q(100));
    CHECK(std::abs(eps1(1, z).mid() - expect.mid()) < 1e-15);
}

TEST_CASE("tilde variant validity window") {
    TildeParams t{IntervalReal(dec("0.3271")), IntervalReal(dec("4.7910")), 475, 100000};
    CHECK_NOTHROW(eps_total(1, q(669671), EpsVariant::tilde, t));
    CHECK_THROWS_AS(eps_total(1, q(300000), EpsVariant::tilde, t), std::domain_error);
    CHECK_THROWS_AS(eps_total(1, Rational(BigInt("20000000000")), EpsVariant::tilde, t), std::domain_error);
    CHECK_THROWS_AS(eps_total(1, q(669671), EpsVariant::tilde), std::invalid_argument);
}

TEST_CASE("primed variant is dominated by the k = 1 epsilon") {
    for (std::uint64_t k = 1; k <= 16; ++k)
        for (long long u : {100000LL, 100000000LL}) {
            auto lhs = eps_total(k, q(u) * q(static_cast<long long>(k)), EpsVariant::primed);
            auto rhs = eps_total(1, q(u), EpsVariant::thm11);
            CHECK(lhs.upper() <= rhs.upper());
            if (k > 1) CHECK(certainly_less(lhs, rhs));
        }
    std::vector<Rational> grid{q(100000), q(100000000), q(10000000000000LL)};
    CHECK(verify_primed_domination(16, grid).verified());
}

TEST_CASE("simple bound values") {
    CHECK(agrees(simple_bound(1, q(381), kXi1), "112.011064397936665072681544678917082897"));
    CHECK(agrees(simple_bound(1, q(14), kXi1), "8.001926567582679202966931741783700964637"));
    CHECK(agrees(simple_bound(3, q(463), dec("1.5864")), "69.88136264017229133515019124338823138858"));
    CHECK_THROWS_AS(simple_bound(3, q(3), kXi1), std::domain_error);
}

TEST_CASE("simple bound is decreasing in xi and increasing past its turning point") {
    for (std::uint64_t k : {1, 4, 13}) {
        // 2y/(log(y/k) + xi) turns at y = k e^(1 - xi) < 1.151 k.
        const long long turn = static_cast<long long>(k) * 1151 / 1000 + 1;
        IntervalReal prev = simple_bound(k, q(turn), kXi1);
        for (long long y = static_cast<long long>(k) + 1; y < 100000; y = y * 5 / 4 + 1) {
            IntervalReal cur = simple_bound(k, q(y), kXi1);
            CHECK(certainly_less(simple_bound(k, q(y), dec("0.9")), cur));
            if (y <= turn) continue;
            CHECK(certainly_less(prev, cur));
            prev = cur;
        }
    }
    CHECK(certainly_less(simple_bound(13, q(14), kXi1), simple_bound(13, q(1301, 100), kXi1)));
}

TEST_CASE("simple bound increasing on the full domain") {
    for (std::uint64_t k : {1, 4, 13}) {
        IntervalReal prev = simple_bound(k, q(static_cast<long long>(k)) + q(1, 100), kXi1);
        for (long long y = static_cast<long long>(k) + 1; y < 100000; y = y * 5 / 4 + 1) {
            IntervalReal cur = simple_bound(k, q(y), kXi1);
            CHECK(certainly_less(prev, cur));
            prev = cur;
        }
    }
}

TEST_CASE("thm11 bound") {
    auto b = thm11_bound(1, q(1000000000000LL));
    REQUIRE(b);
    CHECK(agrees(*b, "69884906915.57562939105414233598082600305"));
    auto b5 = thm11_bound(5, q(100000000000LL));
    REQUIRE(b5);
    CHECK(agrees(*b5, "1974569383.27072963189508403231013691509"));
    CHECK_FALSE(thm11_bound(1, q(3, 2)));
    CHECK_FALSE(thm11_bound(7, q(10)));
    CHECK_FALSE(thm11_bound(1, q(20)));
}

TEST_CASE("epsilon decreases towards zero") {
    IntervalReal prev = eps_total(1, q(1000000), EpsVariant::thm11);
    for (long long y = 10000000; y <= 1000000000000000000LL / 10; y *= 10) {
        IntervalReal cur = eps_total(1, q(y), EpsVariant::thm11);
        CHECK(certainly_less(cur, prev));
        prev = cur;
    }
}

TEST_CASE("eps_total decay at 1e14 k") {
    for (std::uint64_t k : {1, 7, 16}) {
        Rational y = Rational(BigInt("100000000000000")) * q(static_cast<long long>(k));
        CHECK(certainly_less(eps_total(k, y, EpsVariant::thm11), IntervalReal(dec("0.000001"))));
    }
}

TEST_CASE("large range") {
    CHECK(verify_large_range(1, kXi1).verified());
    CHECK(verify_large_range(13, dec("1.2385")).verified());
    auto bad = verify_large_range(1, dec("1.20"));
    CHECK(bad.status == Status::failed);
    bool at_scale = false;
    for (const auto& w : bad.witnesses)
        if (w.value("kind", "") == "left_edge" && w["y"] == "10000000000") at_scale = true;
    CHECK(at_scale);
    for (const auto& row : fixture().tables.xi) CHECK(verify_large_range(row.k, row.xi).verified());
}

TEST_CASE("mid range with the shipped delta constants") {
    auto& f = fixture();
    RangeOptions trusted;
    trusted.trust_printed_delta = true;
    auto r1 = verify_mid_range(1, kXi1, *f.tables.delta_for(1), f.tables.remainder_for(1), trusted);
    CHECK(r1.verified());
    CHECK(r1.mode_flags.at("delta_source") == "printed");
    auto r12 = verify_mid_range(12, dec("2.3143"), *f.tables.delta_for(12), f.tables.remainder_for(12), trusted);
    CHECK(r12.verified());
    CHECK(r12.parameters["y_from"] == "1559201");
}

TEST_CASE("mid range with recomputed delta constants reports the left-edge margin") {
    auto& f = fixture();
    auto r = verify_mid_range(1, kXi1, *f.tables.delta_for(1), f.tables.remainder_for(1));
    CHECK(r.mode_flags.at("delta_source") == "recomputed");
    CHECK(r.status == Status::failed);
    double margin = 1;
    for (const auto& w : r.witnesses)
        if (w.value("kind", "") == "left_edge") margin = std::stod(w["margin"][1].get<std::string>());
    CHECK(margin < 0);
    CHECK(margin > -1e-3);
}

TEST_CASE("mid range rejects rows outside the remainder table") {
    auto& f = fixture();
    DeltaRow row = *f.tables.delta_for(1);
    row.I = 40;
    CHECK_THROWS(verify_mid_range(1, kXi1, row, f.tables.remainder_for(1)));
}

TEST_CASE("sieve ranges") {
    auto& f = fixture();
    CHECK(verify_sieve_range(1, kXi1, {1, 10, 381, 111557}, f.extremal).verified());
    auto tight = verify_sieve_range(1, kXi1, {1, 2, 14, 19}, f.extremal);
    CHECK(tight.verified());
    CHECK(verify_sieve_range(16, dec("1.5857"), {16, 8, 1140, 295860}, f.extremal).verified());
    // Starting one below the threshold breaks the row.
    CHECK(verify_sieve_range(1, kXi1, {1, 10, 380, 111557}, f.extremal).status == Status::failed);
}

TEST_CASE("crossover near y = 381") {
    auto& f = fixture();
    auto bound = window_bound_coefficients(1, 10, f.extremal);
    auto c = sieve_crossover(1, kXi1, bound, q(300), q(400));
    REQUIRE(c);
    CHECK(q(380) <= c->below);
    CHECK(c->above <= q(382));
    CHECK(certainly_negative(sieve_gap(1, kXi1, bound, q(380))));
    CHECK(certainly_positive(sieve_gap(1, kXi1, bound, q(381))));
}

TEST_CASE("tiny range, specific moduli") {
    CHECK(verify_tiny_range({TinyClass::Kind::specific, 1, 14}, kXi1).verified());
    CHECK(verify_tiny_range({TinyClass::Kind::specific, 13, 213}, dec("1.2385")).verified());
    auto k5 = verify_tiny_range({TinyClass::Kind::specific, 5, 52}, dec("1.4782"));
    CHECK(k5.status == Status::failed);
    bool found = false;
    for (const auto& w : k5.witnesses)
        if (w.value("kind", "") == "counterexample") {
            found = true;
            auto x = Rational::parse(w["x"].get<std::string>());
            auto y = Rational::parse(w["y"].get<std::string>());
            const auto a = w["a"].get<std::uint64_t>();
            std::uint64_t count = 0;
            for (std::uint64_t n = a % 5; q(static_cast<long long>(n)) <= x + y; n += 5)
                if (q(static_cast<long long>(n)) > x && is_prime(n)) ++count;
            CHECK(count == w["count"].get<std::uint64_t>());
            CHECK(certainly_less(simple_bound(5, y, dec("1.4782")), IntervalReal(q(static_cast<long long>(count)))));
        }
    CHECK(found);
}

TEST_CASE("tiny range, all moduli") {
    auto r = verify_tiny_range({TinyClass::Kind::generic, 1, 0}, kXi1);
    CHECK(r.verified());
    const Json* patterns = nullptr;
    for (const auto& w : r.witnesses)
        if (w.value("kind", "") == "patterns") patterns = &w;
    REQUIRE(patterns);
    const auto& last = (*patterns)["per_m"].back();
    CHECK(last["m"] == 14);
    CHECK(last["T_m"] == 7);
    CHECK(std::stod(last["inf_2u_over_log"][0].get<std::string>()) > 7.59);
}

TEST_CASE("theorem orchestration and coverage") {
    auto& f = fixture();
    TheoremInputs inputs{&f.tables, &f.extremal, {}, false};
    RangeOptions trusted;
    trusted.trust_printed_delta = true;
    CHECK(verify_theorem(1, kXi1, inputs, trusted).verified());
    CHECK(verify_theorem(11, dec("1.2765"), inputs, trusted).status == Status::failed);

    auto rows = f.tables.sieve_ranges_for(1);
    std::erase_if(rows, [](const SieveRangeRow& r) { return r.y1 == 381; });
    TheoremInputs gapped{&f.tables, &f.extremal, rows, true};
    auto g = verify_theorem(1, kXi1, gapped, trusted);
    CHECK(g.status == Status::failed);
    bool gap = false;
    for (const auto& w : g.witnesses)
        if (w.value("kind", "") == "coverage_gap" && w["from"] == "381" && w["to"] == "111557") gap = true;
    CHECK(gap);
}

TEST_CASE("bounds dominate true counts on random windows") {
    auto& f = fixture();
    std::mt19937_64 rng(2024);
    for (const auto& row : f.tables.xi) {
        for (int i = 0; i < 40; ++i) {
            std::uint64_t y = row.k + 1 + rng() % 20000;
            std::uint64_t x = rng() % 10000000;
            std::uint64_t a;
            do a = rng() % row.k; while (gcd(a, row.k) != 1);
            auto count = IntervalReal(Rational(static_cast<unsigned long long>(pi_ap({x, y, row.k, a}))));
            Rational yr(static_cast<unsigned long long>(y));
            CHECK(certainly_less(count, simple_bound(row.k, yr, row.xi)));
            if (auto t = thm11_bound(row.k, yr)) CHECK(certainly_le(count, *t));
        }
    }
}
