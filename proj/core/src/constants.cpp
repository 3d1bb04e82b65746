#include "btcert/constants.hpp"

#include <stdexcept>

#include "btcert/primes.hpp"

namespace btcert {

namespace {

constexpr int kConstantBits = 160;

// Euler's constant to 50 places (OEIS A001620).
constexpr const char* kGamma = "0.57721566490153286060651209008240243104215933593992";
constexpr const char* kGammaRadius = "1e-50";

// sum_p log p / (p(p-1)), evaluated to 45 digits as
// -sum_{m>=2} sum_{n>=1} mu(n) zeta'(nm)/zeta(nm) and truncated to 39 places.
constexpr const char* kMertensC = "0.755366610831688021159316685988625317796";
constexpr const char* kMertensCRadius = "1e-39";

FixedConstants build() {
    FixedConstants c{
        IntervalReal::from_decimal(kGamma, kGammaRadius, kConstantBits),
        IntervalReal::from_decimal(kMertensC, kMertensCRadius, kConstantBits),
        IntervalReal(Rational(1, 2), kConstantBits) + IntervalReal::pi(kConstantBits) / IntervalReal(4),
        log(IntervalReal(Rational(16, 3), kConstantBits)),
    };
    return c;
}

}  // namespace

const FixedConstants& fixed_constants() {
    static const FixedConstants constants = build();
    return constants;
}

MertensConstantBracket bracket_mertens_c(std::uint64_t prime_limit) {
    if (prime_limit < 3) throw std::invalid_argument("bracket_mertens_c: prime limit must be at least 3");
    const int bits = 128;
    IntervalReal sum(Rational(0), bits);
    for (std::uint64_t p : primes_upto(prime_limit)) {
        IntervalReal lp = log(IntervalReal(Rational(static_cast<unsigned long long>(p)), bits));
        sum += lp / IntervalReal(Rational(static_cast<unsigned long long>(p * (p - 1))), bits);
    }
    IntervalReal P(Rational(static_cast<unsigned long long>(prime_limit)), bits);
    IntervalReal tail = (log(P) + IntervalReal(1)) / (P - IntervalReal(1));
    IntervalReal zero(Rational(0), bits);
    IntervalReal bracket = IntervalReal::hull(sum, sum + IntervalReal::hull(zero, tail));
    return {prime_limit, sum, tail, bracket};
}

}  // namespace btcert
