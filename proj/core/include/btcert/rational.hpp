#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace btcert {

using BigInt = mpz_class;

/// Exact signed rational, always in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : v_(static_cast<long>(n)) {}
    Rational(int n) : v_(static_cast<long>(n)) {}
    Rational(unsigned long long n);
    Rational(const BigInt& n) : v_(n) {}
    Rational(const BigInt& num, const BigInt& den);
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    /// Accepts "p", "p/q" and plain decimals such as "-0.8601" (read exactly).
    static Rational parse(std::string_view text);

    const mpq_class& value() const { return v_; }
    BigInt numerator() const { return v_.get_num(); }
    BigInt denominator() const { return v_.get_den(); }

    int sign() const { return sgn(v_); }
    BigInt floor() const;
    BigInt ceil() const;
    double to_double() const { return v_.get_d(); }
    std::string str() const { return v_.get_str(); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class v_;
};

std::string to_string(const BigInt& n);
std::uint64_t to_u64(const BigInt& n);

}  // namespace btcert
