#include "btcert/detail/fixed_sum.hpp"

#include <algorithm>
#include <cmath>

#include <mpfr.h>

#include "btcert/primes.hpp"

namespace btcert::detail {

namespace {

constexpr std::size_t kBlock = std::size_t(1) << 18;

double to_double_down(u128 x) {
    double d = static_cast<double>(x);
    if (static_cast<u128>(d) > x) d = down(d);
    return d;
}

double to_double_up(u128 x) {
    double d = static_cast<double>(x);
    if (static_cast<u128>(d) < x) d = up(d);
    return d;
}

BigInt to_big(u128 x) {
    BigInt hi = static_cast<unsigned long>(static_cast<std::uint64_t>(x >> 64));
    BigInt lo = static_cast<unsigned long>(static_cast<std::uint64_t>(x));
    return (hi << 64) + lo;
}

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

FastInterval FixedSum::fast() const {
    return {std::ldexp(to_double_down(lo), -kFixedShift), std::ldexp(to_double_up(hi), -kFixedShift)};
}

IntervalReal FixedSum::interval() const {
    BigInt den = BigInt(1) << kFixedShift;
    IntervalReal l(Rational(to_big(lo), den), 160);
    IntervalReal h(Rational(to_big(hi), den), 160);
    return IntervalReal::hull(l, h);
}

CoprimeSquarefreeStream::CoprimeSquarefreeStream(std::uint64_t k, std::uint64_t first, std::uint64_t last)
    : k_(k), next_(std::max<std::uint64_t>(first, 1)), last_(last) {
    base_primes_ = primes_upto(isqrt(std::max<std::uint64_t>(last, 1)) + 1);
    k_primes_ = prime_divisors(k);
}

void CoprimeSquarefreeStream::refill() {
    block_lo_ = next_;
    std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>(kBlock, last_ - next_ + 1));
    block_.assign(len, 0);
    squarefree_totients(block_lo_, base_primes_, block_);
    for (std::uint64_t p : k_primes_) {
        std::uint64_t first = (block_lo_ + p - 1) / p * p;
        for (std::uint64_t m = first; m < block_lo_ + len; m += p) block_[m - block_lo_] = 0;
    }
}

std::uint64_t CoprimeSquarefreeStream::next() {
    if (block_.empty() || next_ >= block_lo_ + block_.size()) refill();
    std::uint64_t w = block_[next_ - block_lo_];
    ++next_;
    return w;
}

FixedSum prefix_plain_sum(std::uint64_t k, std::uint64_t n) {
    FixedSum s;
    if (n == 0) return s;
    CoprimeSquarefreeStream stream(k, 1, n);
    while (!stream.done())
        if (std::uint64_t w = stream.next()) s.add_reciprocal(w);
    return s;
}

FastInterval log_enclosure(std::uint64_t n) {
    // MPFR rounds correctly, so the nearest double is within half an ulp of log n
    // and one step outward on each side encloses it.
    thread_local struct Scratch {
        Scratch() { mpfr_inits2(64, x, r, static_cast<mpfr_ptr>(nullptr)); mpfr_set_prec(r, 53); }
        ~Scratch() { mpfr_clears(x, r, static_cast<mpfr_ptr>(nullptr)); }
        mpfr_t x, r;
    } s;
    if (n == 1) return {0.0, 0.0};
    mpfr_set_ui(s.x, n, MPFR_RNDN);
    mpfr_log(s.r, s.x, MPFR_RNDN);
    double v = mpfr_get_d(s.r, MPFR_RNDN);
    return {down(v), up(v)};
}

void LogStream::advance() {
    ++n_;
    // Small n: the truncated series is too loose, evaluate directly.
    if (++since_anchor_ == kAnchorEvery || n_ < 4096) {
        since_anchor_ = 0;
        value_ = log_enclosure(n_);
        return;
    }
    // x = 1/(2m+1) with m the previous n; atanh x = x + x^3/3 + r, x^5/5 <= r <= x^5/(5(1-x^2)).
    const double denom = 2.0 * static_cast<double>(n_ - 1) + 1.0;  // exact below 2^52
    FastInterval x = FastInterval::point(1.0) / FastInterval::point(denom);
    FastInterval x2 = x * x;
    FastInterval x3 = x2 * x;
    FastInterval x5 = x3 * x2;
    FastInterval tail_hi = x5 / (FastInterval::point(5.0) * (FastInterval::point(1.0) - x2));
    FastInterval tail{(x5 / FastInterval::point(5.0)).lo, tail_hi.hi};
    FastInterval atanh = x + x3 / FastInterval::point(3.0) + tail;
    value_ = value_ + atanh + atanh;
}

}  // namespace btcert::detail
