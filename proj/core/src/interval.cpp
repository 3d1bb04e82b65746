#include "btcert/interval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace btcert {

namespace {

std::atomic<int> g_precision{80};

int result_precision(int a, int b = 0) { return std::max({g_precision.load(), a, b}); }

struct MpfrTemp {
    explicit MpfrTemp(int prec) { mpfr_init2(v, prec); }
    ~MpfrTemp() { mpfr_clear(v); }
    MpfrTemp(const MpfrTemp&) = delete;
    MpfrTemp& operator=(const MpfrTemp&) = delete;
    mpfr_t v;
};

std::string render(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
    if (mpfr_zero_p(x)) return "0";
    char* buf = nullptr;
    std::string fmt = "%." + std::to_string(std::max(1, digits - 1)) + "R*e";
    mpfr_asprintf(&buf, fmt.c_str(), rnd, x);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

}  // namespace

void set_working_precision(int bits) {
    if (bits < 53 || bits > 4096) throw std::invalid_argument("working precision must lie in [53, 4096]");
    g_precision = bits;
}

int working_precision() { return g_precision.load(); }

IntervalReal::IntervalReal(int precision, bool) : prec_(precision) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
}

IntervalReal::IntervalReal() : IntervalReal(working_precision(), true) {
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

IntervalReal::IntervalReal(double point) : IntervalReal(std::max(working_precision(), 53), true) {
    if (!std::isfinite(point)) throw std::domain_error("IntervalReal: non-finite point");
    mpfr_set_d(lo_, point, MPFR_RNDD);
    mpfr_set_d(hi_, point, MPFR_RNDU);
}

IntervalReal::IntervalReal(long long point) : IntervalReal(std::max(working_precision(), 64), true) {
    mpfr_set_sj(lo_, point, MPFR_RNDD);
    mpfr_set_sj(hi_, point, MPFR_RNDU);
}

IntervalReal::IntervalReal(const Rational& q, int precision)
    : IntervalReal(precision > 0 ? precision : working_precision(), true) {
    mpfr_set_q(lo_, q.value().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, q.value().get_mpq_t(), MPFR_RNDU);
}

IntervalReal::IntervalReal(const IntervalReal& o) : IntervalReal(o.prec_, true) {
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

IntervalReal::IntervalReal(IntervalReal&& o) noexcept : IntervalReal(o.prec_, true) {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

IntervalReal& IntervalReal::operator=(const IntervalReal& o) {
    if (this != &o) {
        set_precision(o.prec_);
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
}

IntervalReal& IntervalReal::operator=(IntervalReal&& o) noexcept {
    if (this != &o) {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        std::swap(prec_, o.prec_);
    }
    return *this;
}

IntervalReal::~IntervalReal() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

void IntervalReal::set_precision(int bits) {
    if (bits == prec_) return;
    // mpfr_prec_round keeps the value, rounding in the safe direction.
    mpfr_prec_round(lo_, bits, MPFR_RNDD);
    mpfr_prec_round(hi_, bits, MPFR_RNDU);
    prec_ = bits;
}

IntervalReal IntervalReal::from_decimal(std::string_view text, int precision) {
    IntervalReal r(precision > 0 ? precision : working_precision(), true);
    std::string s(text);
    if (mpfr_set_str(r.lo_, s.c_str(), 10, MPFR_RNDD) != 0 || mpfr_set_str(r.hi_, s.c_str(), 10, MPFR_RNDU) != 0)
        throw std::invalid_argument("IntervalReal: malformed decimal '" + s + "'");
    return r;
}

IntervalReal IntervalReal::from_decimal(std::string_view text, std::string_view radius, int precision) {
    IntervalReal v = from_decimal(text, precision);
    IntervalReal e = from_decimal(radius, precision);
    IntervalReal r(v.prec_, true);
    mpfr_sub(r.lo_, v.lo_, e.hi_, MPFR_RNDD);
    mpfr_add(r.hi_, v.hi_, e.hi_, MPFR_RNDU);
    return r;
}

IntervalReal IntervalReal::hull(const IntervalReal& a, const IntervalReal& b) {
    IntervalReal r(result_precision(a.prec_, b.prec_), true);
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

IntervalReal IntervalReal::pi(int precision) {
    IntervalReal r(precision > 0 ? precision : working_precision(), true);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

double IntervalReal::lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double IntervalReal::upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double IntervalReal::mid() const {
    MpfrTemp m(prec_ + 1);
    mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
    return mpfr_get_d(m.v, MPFR_RNDN);
}

double IntervalReal::width() const {
    MpfrTemp w(prec_);
    mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
    return mpfr_get_d(w.v, MPFR_RNDU);
}

bool IntervalReal::contains(const Rational& q) const {
    return mpfr_cmp_q(lo_, q.value().get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.value().get_mpq_t()) >= 0;
}

bool IntervalReal::contains(const IntervalReal& inner) const {
    return mpfr_lessequal_p(lo_, inner.lo_) && mpfr_greaterequal_p(hi_, inner.hi_);
}

bool IntervalReal::is_point() const { return mpfr_equal_p(lo_, hi_); }

std::string IntervalReal::lower_str(int digits) const { return render(lo_, digits, MPFR_RNDD); }
std::string IntervalReal::upper_str(int digits) const { return render(hi_, digits, MPFR_RNDU); }
std::string IntervalReal::str(int digits) const {
    return "[" + lower_str(digits) + ", " + upper_str(digits) + "]";
}

IntervalReal& IntervalReal::operator+=(const IntervalReal& o) {
    set_precision(result_precision(prec_, o.prec_));
    mpfr_add(lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(hi_, hi_, o.hi_, MPFR_RNDU);
    return *this;
}

IntervalReal& IntervalReal::operator-=(const IntervalReal& o) {
    set_precision(result_precision(prec_, o.prec_));
    mpfr_sub(lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(hi_, hi_, o.lo_, MPFR_RNDU);
    return *this;
}

IntervalReal& IntervalReal::operator*=(const IntervalReal& o) {
    int p = result_precision(prec_, o.prec_);
    MpfrTemp lo(p), hi(p), t(p);
    mpfr_srcptr a[2] = {lo_, hi_};
    mpfr_srcptr b[2] = {o.lo_, o.hi_};
    mpfr_set_inf(lo.v, 1);
    mpfr_set_inf(hi.v, -1);
    for (auto x : a) {
        for (auto y : b) {
            mpfr_mul(t.v, x, y, MPFR_RNDD);
            mpfr_min(lo.v, lo.v, t.v, MPFR_RNDD);
            mpfr_mul(t.v, x, y, MPFR_RNDU);
            mpfr_max(hi.v, hi.v, t.v, MPFR_RNDU);
        }
    }
    set_precision(p);
    mpfr_set(lo_, lo.v, MPFR_RNDD);
    mpfr_set(hi_, hi.v, MPFR_RNDU);
    return *this;
}

IntervalReal& IntervalReal::operator/=(const IntervalReal& o) {
    if (mpfr_sgn(o.lo_) <= 0 && mpfr_sgn(o.hi_) >= 0)
        throw std::domain_error("IntervalReal: division by an interval containing zero");
    int p = result_precision(prec_, o.prec_);
    MpfrTemp lo(p), hi(p), t(p);
    mpfr_srcptr a[2] = {lo_, hi_};
    mpfr_srcptr b[2] = {o.lo_, o.hi_};
    mpfr_set_inf(lo.v, 1);
    mpfr_set_inf(hi.v, -1);
    for (auto x : a) {
        for (auto y : b) {
            mpfr_div(t.v, x, y, MPFR_RNDD);
            mpfr_min(lo.v, lo.v, t.v, MPFR_RNDD);
            mpfr_div(t.v, x, y, MPFR_RNDU);
            mpfr_max(hi.v, hi.v, t.v, MPFR_RNDU);
        }
    }
    set_precision(p);
    mpfr_set(lo_, lo.v, MPFR_RNDD);
    mpfr_set(hi_, hi.v, MPFR_RNDU);
    return *this;
}

IntervalReal operator-(const IntervalReal& a) {
    IntervalReal r(a.prec_, true);
    mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    return r;
}

IntervalReal sqrt(const IntervalReal& x) {
    if (mpfr_sgn(x.lo_) < 0) throw std::domain_error("IntervalReal: sqrt of a possibly negative value");
    IntervalReal r(result_precision(x.prec_), true);
    mpfr_sqrt(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, x.hi_, MPFR_RNDU);
    return r;
}

IntervalReal log(const IntervalReal& x) {
    if (mpfr_sgn(x.lo_) <= 0) throw std::domain_error("IntervalReal: log of a possibly nonpositive value");
    IntervalReal r(result_precision(x.prec_), true);
    mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
    return r;
}

IntervalReal exp(const IntervalReal& x) {
    IntervalReal r(result_precision(x.prec_), true);
    mpfr_exp(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, x.hi_, MPFR_RNDU);
    return r;
}

IntervalReal sqr(const IntervalReal& x) {
    IntervalReal a = abs(x);
    IntervalReal r(result_precision(x.prec_), true);
    mpfr_sqr(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_sqr(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

IntervalReal abs(const IntervalReal& x) {
    IntervalReal r(x.prec_, true);
    if (mpfr_sgn(x.lo_) >= 0) {
        mpfr_set(r.lo_, x.lo_, MPFR_RNDD);
        mpfr_set(r.hi_, x.hi_, MPFR_RNDU);
    } else if (mpfr_sgn(x.hi_) <= 0) {
        mpfr_neg(r.lo_, x.hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, x.lo_, MPFR_RNDU);
    } else {
        mpfr_set_zero(r.lo_, 1);
        mpfr_neg(r.hi_, x.lo_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, x.hi_, MPFR_RNDU);
    }
    return r;
}

IntervalReal max(const IntervalReal& a, const IntervalReal& b) {
    IntervalReal r(result_precision(a.prec_, b.prec_), true);
    mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

IntervalReal min(const IntervalReal& a, const IntervalReal& b) {
    IntervalReal r(result_precision(a.prec_, b.prec_), true);
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

bool certainly_less(const IntervalReal& a, const IntervalReal& b) { return mpfr_less_p(a.hi(), b.lo()); }
bool certainly_le(const IntervalReal& a, const IntervalReal& b) { return mpfr_lessequal_p(a.hi(), b.lo()); }
bool certainly_positive(const IntervalReal& a) { return mpfr_sgn(a.lo()) > 0; }
bool certainly_negative(const IntervalReal& a) { return mpfr_sgn(a.hi()) < 0; }

IntervalReal IntervalReal::rounded(int bits) const {
    IntervalReal r(*this);
    r.set_precision(bits);
    return r;
}

IntervalReal enclose_log(const Rational& x) {
    if (x.sign() <= 0) throw std::domain_error("enclose_log: nonpositive argument");
    // Guard bits keep the result within a couple of ulps after outward rounding.
    int p = working_precision();
    return log(IntervalReal(x, p + 16)).rounded(p);
}

IntervalReal enclose_sqrt(const Rational& x) {
    if (x.sign() < 0) throw std::domain_error("enclose_sqrt: negative argument");
    int p = working_precision();
    return sqrt(IntervalReal(x, p + 16)).rounded(p);
}

}  // namespace btcert
