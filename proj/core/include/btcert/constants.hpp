#pragma once

#include <cstdint>

#include "btcert/interval.hpp"

namespace btcert {

/// Fixed transcendental constants, each enclosed to width below 1e-25.
struct FixedConstants {
    IntervalReal gamma;                 ///< Euler-Mascheroni constant
    IntervalReal mertens_c;             ///< sum over primes of log p / (p (p - 1))
    IntervalReal half_plus_quarter_pi;  ///< 1/2 + pi/4
    IntervalReal log_16_3;              ///< log(16/3)
};

/// Shared instance, built once at 160 bits.
const FixedConstants& fixed_constants();

/// Partial sum over p <= P of log p / (p (p - 1)) together with a rigorous tail bound.
struct MertensConstantBracket {
    std::uint64_t prime_limit;
    IntervalReal partial_sum;
    IntervalReal tail_bound;  ///< upper bound for the sum over p > P
    IntervalReal bracket;     ///< [partial_sum.lo, partial_sum.hi + tail_bound.hi]
};

/// Uses tail <= integral_P^inf log t / (t (t - 1)) dt <= (log P + 1) / (P - 1).
MertensConstantBracket bracket_mertens_c(std::uint64_t prime_limit);

}  // namespace btcert
