#pragma once

// Double-endpoint interval for hot loops. Each operation rounds to nearest
// and then steps one ulp outward, which encloses the exact result because
// IEEE round-to-nearest is off by at most half an ulp.

#include <algorithm>
#include <cmath>
#include <limits>

#include "btcert/interval.hpp"

namespace btcert::detail {

struct FastInterval {
    double lo = 0.0;
    double hi = 0.0;

    static FastInterval point(double v) { return {v, v}; }
    static FastInterval from(const IntervalReal& x) { return {x.lower(), x.upper()}; }
};

inline double down(double v) { return std::nextafter(v, -std::numeric_limits<double>::infinity()); }
inline double up(double v) { return std::nextafter(v, std::numeric_limits<double>::infinity()); }

inline FastInterval operator+(FastInterval a, FastInterval b) { return {down(a.lo + b.lo), up(a.hi + b.hi)}; }
inline FastInterval operator-(FastInterval a, FastInterval b) { return {down(a.lo - b.hi), up(a.hi - b.lo)}; }

inline FastInterval operator*(FastInterval a, FastInterval b) {
    double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {down(std::min({p1, p2, p3, p4})), up(std::max({p1, p2, p3, p4}))};
}

/// Requires 0 outside b.
inline FastInterval operator/(FastInterval a, FastInterval b) {
    double p1 = a.lo / b.lo, p2 = a.lo / b.hi, p3 = a.hi / b.lo, p4 = a.hi / b.hi;
    return {down(std::min({p1, p2, p3, p4})), up(std::max({p1, p2, p3, p4}))};
}

inline FastInterval abs(FastInterval a) {
    if (a.lo >= 0) return a;
    if (a.hi <= 0) return {-a.hi, -a.lo};
    return {0.0, std::max(-a.lo, a.hi)};
}

/// Square root of a nonnegative integer-valued double; IEEE sqrt is correctly rounded.
inline FastInterval sqrt_of(double v) {
    double s = std::sqrt(v);
    return {down(s), up(s)};
}

}  // namespace btcert::detail
