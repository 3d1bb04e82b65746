#include "btcert/rational.hpp"

#include <stdexcept>

namespace btcert {

Rational::Rational(unsigned long long n) {
    mpz_class z;
    mpz_import(z.get_mpz_t(), 1, -1, sizeof n, 0, 0, &n);
    v_ = z;
}

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.sign() == 0) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\n')) s.pop_back();
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty input");

    if (auto slash = s.find('/'); slash != std::string::npos) {
        BigInt num, den;
        if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0)
            throw std::invalid_argument("Rational::parse: malformed fraction '" + s + "'");
        return Rational(num, den);
    }

    bool negative = false;
    std::size_t pos = 0;
    if (s[0] == '-' || s[0] == '+') {
        negative = s[0] == '-';
        pos = 1;
    }
    std::string mantissa;
    long exponent = 0;
    bool seen_point = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (c >= '0' && c <= '9') {
            mantissa += c;
            if (seen_point) --exponent;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (c == 'e' || c == 'E') {
            exponent += std::stol(s.substr(pos + 1));
            break;
        } else {
            throw std::invalid_argument("Rational::parse: malformed number '" + s + "'");
        }
    }
    if (mantissa.empty()) throw std::invalid_argument("Rational::parse: no digits in '" + s + "'");

    BigInt num(mantissa, 10);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational r = exponent >= 0 ? Rational(BigInt(num * scale)) : Rational(num, scale);
    return negative ? -r : r;
}

BigInt Rational::floor() const {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

BigInt Rational::ceil() const {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

std::string to_string(const BigInt& n) { return n.get_str(); }

std::uint64_t to_u64(const BigInt& n) {
    if (sgn(n) < 0 || mpz_sizeinbase(n.get_mpz_t(), 2) > 64)
        throw std::range_error("value does not fit in 64 bits: " + n.get_str());
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof out, 0, 0, n.get_mpz_t());
    return out;
}

}  // namespace btcert
