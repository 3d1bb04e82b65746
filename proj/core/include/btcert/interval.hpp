#pragma once

#include <string>
#include <string_view>

#include <mpfr.h>

#include "btcert/rational.hpp"

namespace btcert {

/// Mantissa bits used for new interval results (default 80). Thread-safe.
void set_working_precision(int bits);
int working_precision();

/// Outward-rounded enclosure [lo, hi] backed by MPFR.
///
/// Results are computed at the larger of the working precision and the
/// operand precisions, lower endpoints rounded down and upper endpoints up.
class IntervalReal {
public:
    IntervalReal();
    IntervalReal(double point);
    IntervalReal(long long point);
    IntervalReal(int point) : IntervalReal(static_cast<long long>(point)) {}
    explicit IntervalReal(const Rational& q, int precision = 0);
    IntervalReal(const IntervalReal& o);
    IntervalReal(IntervalReal&& o) noexcept;
    IntervalReal& operator=(const IntervalReal& o);
    IntervalReal& operator=(IntervalReal&& o) noexcept;
    ~IntervalReal();

    /// Encloses the exact value of a decimal literal such as "0.57721566...".
    static IntervalReal from_decimal(std::string_view text, int precision = 0);
    /// Encloses [value - radius, value + radius] for decimal strings.
    static IntervalReal from_decimal(std::string_view text, std::string_view radius, int precision = 0);
    static IntervalReal hull(const IntervalReal& a, const IntervalReal& b);
    static IntervalReal pi(int precision = 0);

    double lower() const;
    double upper() const;
    double mid() const;
    double width() const;
    int precision() const { return prec_; }
    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }

    bool contains(const Rational& q) const;
    bool contains(const IntervalReal& inner) const;
    bool is_point() const;
    /// Same enclosure rounded outward to the given mantissa width.
    IntervalReal rounded(int bits) const;

    /// Decimal rendering with the given number of significant digits, rounded outward.
    std::string lower_str(int digits = 20) const;
    std::string upper_str(int digits = 20) const;
    std::string str(int digits = 20) const;

    IntervalReal& operator+=(const IntervalReal& o);
    IntervalReal& operator-=(const IntervalReal& o);
    IntervalReal& operator*=(const IntervalReal& o);
    IntervalReal& operator/=(const IntervalReal& o);

    friend IntervalReal operator+(IntervalReal a, const IntervalReal& b) { return a += b; }
    friend IntervalReal operator-(IntervalReal a, const IntervalReal& b) { return a -= b; }
    friend IntervalReal operator*(IntervalReal a, const IntervalReal& b) { return a *= b; }
    friend IntervalReal operator/(IntervalReal a, const IntervalReal& b) { return a /= b; }
    friend IntervalReal operator-(const IntervalReal& a);

    friend IntervalReal sqrt(const IntervalReal& x);
    friend IntervalReal log(const IntervalReal& x);
    friend IntervalReal exp(const IntervalReal& x);
    friend IntervalReal sqr(const IntervalReal& x);
    friend IntervalReal abs(const IntervalReal& x);
    friend IntervalReal max(const IntervalReal& a, const IntervalReal& b);
    friend IntervalReal min(const IntervalReal& a, const IntervalReal& b);

private:
    explicit IntervalReal(int precision, bool);
    void set_precision(int bits);

    mpfr_t lo_;
    mpfr_t hi_;
    int prec_;
};

/// a < b holds for every pair of enclosed values.
bool certainly_less(const IntervalReal& a, const IntervalReal& b);
/// a <= b holds for every pair of enclosed values.
bool certainly_le(const IntervalReal& a, const IntervalReal& b);
bool certainly_positive(const IntervalReal& a);
bool certainly_negative(const IntervalReal& a);

IntervalReal enclose_log(const Rational& x);
IntervalReal enclose_sqrt(const Rational& x);

}  // namespace btcert
