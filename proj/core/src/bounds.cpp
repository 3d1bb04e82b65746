#include "btcert/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "btcert/constants.hpp"
#include "btcert/primes.hpp"

namespace btcert {
namespace {

IntervalReal iv(const Rational& q) { return IntervalReal(q); }
IntervalReal iv(std::uint64_t n) { return IntervalReal(Rational(static_cast<unsigned long long>(n))); }
Rational rat(std::uint64_t n) { return Rational(static_cast<unsigned long long>(n)); }
Rational frac(std::uint64_t a, std::uint64_t b) { return rat(a) / rat(b); }

const Rational kLargeScale = Rational(10'000'000'000ULL);

IntervalReal log_shift(const IntervalReal& eta) { return IntervalReal(2) * eta - fixed_constants().log_16_3; }

std::uint64_t floor_div(const Rational& y, std::uint64_t k) { return to_u64((y / rat(k)).floor()); }

Json interval_json(const IntervalReal& x) { return Json::array({x.lower_str(17), x.upper_str(17)}); }

struct VariantParams {
    EpsilonParams first;   ///< parameters of the epsilon_1 piece
    EpsilonParams rest;    ///< parameters of the epsilon_2 and epsilon_3 pieces
};

VariantParams variant_params(std::uint64_t k, EpsVariant variant, const std::optional<TildeParams>& tilde) {
    switch (variant) {
    case EpsVariant::thm11: {
        auto p = EpsilonParams::for_modulus(k);
        return {p, p};
    }
    case EpsVariant::primed: {
        auto rest = EpsilonParams::for_modulus(1);
        rest.k = k;
        rest.density = frac(totient(k), k);
        return {EpsilonParams::for_modulus(1), rest};
    }
    case EpsVariant::tilde: {
        if (!tilde) throw std::invalid_argument("eps_total: tilde variant needs (d1, d2)");
        auto p = EpsilonParams::for_modulus(k);
        p.delta_coeffs = tilde;
        return {p, p};
    }
    }
    throw std::invalid_argument("eps_total: unknown variant");
}

IntervalReal z_of(std::uint64_t N) { return enclose_sqrt(Rational(3) * rat(N) / Rational(4)); }

/// log N + c > 4 and log(y/k) + c > 2 make epsilon_2 and epsilon_3 nonincreasing from (N, y) on.
Json monotone_certificate(const EpsilonParams& rest, std::uint64_t N, const Rational& y, bool& ok) {
    IntervalReal shift = log_shift(rest.eta);
    IntervalReal t2 = enclose_log(rat(N)) + shift;
    IntervalReal t3 = enclose_log(y / rat(rest.k)) + shift;
    bool ok2 = certainly_less(IntervalReal(4), t2);
    bool ok3 = certainly_less(IntervalReal(2), t3);
    ok = ok2 && ok3;
    return Json{{"eps1", "positive terms in 1/(1+z), 1/sqrt(z), 1/z"},
                {"eps2_log_term", interval_json(t2)},
                {"eps2_threshold", 4},
                {"eps2_decreasing", ok2},
                {"eps3_log_term", interval_json(t3)},
                {"eps3_threshold", 2},
                {"eps3_decreasing", ok3}};
}

/// Margins on a geometric grid between y_lo and y_hi; records the tightest one.
void grid_margins(VerificationReport& report, std::uint64_t k, const Rational& xi, EpsVariant variant,
                  const std::optional<TildeParams>& tilde, Eps1Form form, const Rational& y_lo, const Rational& y_hi,
                  int points) {
    double ratio = std::pow((y_hi / y_lo).to_double(), 1.0 / std::max(1, points - 1));
    std::optional<IntervalReal> tightest;
    Rational tight_y;
    for (int i = 0; i < points; ++i) {
        Rational y = y_lo;
        if (i == points - 1)
            y = y_hi;
        else if (i > 0)
            y = Rational(BigInt(std::to_string(std::llround(y_lo.to_double() * std::pow(ratio, i)))));
        if (!(y_lo <= y) || !(y <= y_hi)) continue;
        IntervalReal m = regime_margin(k, y, xi, variant, tilde, form);
        if (!certainly_positive(m)) {
            report.fail("grid margin not certified positive at y = " + y.str());
            report.witnesses.push_back({{"kind", "grid_violation"}, {"y", y.str()}, {"margin", interval_json(m)}});
        }
        if (!tightest || m.lower() < tightest->lower()) {
            tightest = m;
            tight_y = y;
        }
    }
    if (tightest)
        report.witnesses.push_back({{"kind", "grid_tightest"}, {"y", tight_y.str()}, {"margin", interval_json(*tightest)}});
}

std::string variant_name(EpsVariant v) {
    switch (v) {
    case EpsVariant::thm11: return "thm11";
    case EpsVariant::primed: return "primed";
    case EpsVariant::tilde: return "tilde";
    }
    return "?";
}

std::string form_name(Eps1Form f) { return f == Eps1Form::displayed ? "displayed" : "rederived"; }

/// Certifies margin > 0 on [y_lo, y_hi] (y_hi may be unbounded) from the left edge.
void certify_from_left_edge(VerificationReport& report, std::uint64_t k, const Rational& xi, EpsVariant variant,
                            const std::optional<TildeParams>& tilde, Eps1Form form, const Rational& y_lo,
                            const Rational& grid_hi) {
    auto vp = variant_params(k, variant, tilde);
    std::uint64_t N = floor_div(y_lo, k);
    IntervalReal m = regime_margin(k, y_lo, xi, variant, tilde, form);
    IntervalReal e = eps_total(k, y_lo, variant, tilde, form);
    report.witnesses.push_back({{"kind", "left_edge"},
                                {"y", y_lo.str()},
                                {"N", N},
                                {"eps", interval_json(e)},
                                {"margin", interval_json(m)}});
    if (certainly_negative(m))
        report.fail("margin negative at y = " + y_lo.str());
    else if (!certainly_positive(m)) {
        report.demote(Status::inconclusive);
        report.notes.push_back("margin at y = " + y_lo.str() + " straddles zero");
    }
    bool mono = false;
    report.witnesses.push_back(
        {{"kind", "monotonicity"}, {"from_y", y_lo.str()}, {"certificate", monotone_certificate(vp.rest, N, y_lo, mono)}});
    if (!mono) report.fail("monotone decrease of the epsilon pieces not certified from y = " + y_lo.str());
    grid_margins(report, k, xi, variant, tilde, form, y_lo, grid_hi, 12);
}

// ---------------------------------------------------------------------------------------------
// Tiny range

/// Lower bound for inf over u in [lo, hi] of u / (log u + xi), lo >= 1.
IntervalReal inf_g(const Rational& lo, const Rational& hi, const Rational& xi) {
    auto g = [&](const Rational& u) { return iv(u) / (enclose_log(u) + iv(xi)); };
    IntervalReal best = min(g(lo), g(hi));
    // Single critical point u* = e^{1 - xi} with value e^{1 - xi}.
    IntervalReal ustar = exp(IntervalReal(1) - iv(xi));
    if (!certainly_less(ustar, iv(lo)) && !certainly_less(iv(hi), ustar)) best = min(best, ustar);
    return best;
}

struct WindowWitness {
    std::uint64_t count = 0;
    std::uint64_t a = 0;
    std::uint64_t first = 0;  ///< first AP term of the window
};

std::vector<std::uint64_t> residues(std::uint64_t k) {
    std::vector<std::uint64_t> out;
    if (k == 1) return {1};
    for (std::uint64_t a = 1; a < k; ++a)
        if (gcd(a, k) == 1) out.push_back(a);
    return out;
}

/// Max number of sieve survivors among w consecutive terms a + k m (m >= 0), where a survivor is
/// n >= 2 with gcd(n, Q) = 1 or n itself a prime factor of Q. Every prime is a survivor.
std::vector<WindowWitness> max_survivors(std::uint64_t k, const std::vector<std::uint64_t>& wheel,
                                         const std::vector<std::uint64_t>& widths) {
    std::uint64_t Q = 1;
    for (auto p : wheel) Q *= p;
    std::uint64_t wmax = *std::max_element(widths.begin(), widths.end());
    std::uint64_t special = (wheel.empty() ? 2 : wheel.back()) / k + 2;
    std::uint64_t M = special + Q + wmax;
    std::vector<WindowWitness> best(widths.size());
    std::vector<std::uint32_t> prefix(M + 1);
    for (auto a : residues(k)) {
        prefix[0] = 0;
        for (std::uint64_t m = 0; m < M; ++m) {
            std::uint64_t n = a + k * m;
            bool survivor = false;
            if (n >= 2) {
                survivor = true;
                for (auto p : wheel)
                    if (n % p == 0) {
                        survivor = n == p;
                        break;
                    }
            }
            prefix[m + 1] = prefix[m] + (survivor ? 1 : 0);
        }
        for (std::size_t j = 0; j < widths.size(); ++j) {
            std::uint64_t w = widths[j];
            for (std::uint64_t s = 0; s + w <= M; ++s) {
                std::uint64_t c = prefix[s + w] - prefix[s];
                if (c > best[j].count) best[j] = {c, a, a + k * s};
            }
        }
    }
    return best;
}

/// Largest number of primes among w consecutive AP terms with first term below `limit`.
WindowWitness max_primes(std::uint64_t k, std::uint64_t w, std::uint64_t limit) {
    WindowWitness best;
    for (auto a : residues(k)) {
        std::vector<std::uint8_t> flag;
        for (std::uint64_t n = a; n < limit + k * w; n += k) flag.push_back(is_prime(n) ? 1 : 0);
        std::uint64_t c = 0;
        for (std::size_t i = 0; i < flag.size(); ++i) {
            c += flag[i];
            if (i >= w) c -= flag[i - w];
            if (i + 1 >= w && c > best.count) best = {c, a, a + k * (i + 1 - w)};
        }
    }
    return best;
}

std::vector<std::uint64_t> wheel_coprime_to(std::uint64_t k, unsigned s) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; out.size() < s; ++p)
        if (is_prime(p) && k % p != 0) out.push_back(p);
    return out;
}

/// Tries to turn a window of w prime AP terms into a certified violation of simple_bound.
std::optional<Json> certify_counterexample(std::uint64_t k, const Rational& xi, const WindowWitness& win,
                                           std::uint64_t w, const Rational& u_lo, const Rational& u_hi) {
    std::vector<Rational> candidates{u_lo + Rational(1, 1000000)};
    double ustar = std::exp(1.0 - xi.to_double());
    if (ustar > u_lo.to_double() && ustar < u_hi.to_double())
        candidates.push_back(frac(static_cast<std::uint64_t>(std::llround(ustar * 1e6)), 1000000));
    for (const auto& u : candidates) {
        if (!(u_lo < u) || !(u < Rational(static_cast<long long>(w)))) continue;
        Rational y = u * rat(k);
        Rational x = rat(win.first) - Rational(1, 2000000);
        std::uint64_t count = 0;
        std::vector<std::uint64_t> primes;
        for (std::uint64_t n = win.first; Rational(rat(n)) <= x + y; n += k)
            if (is_prime(n)) {
                ++count;
                primes.push_back(n);
            }
        IntervalReal bound = simple_bound(k, y, xi);
        if (certainly_less(bound, iv(count)))
            return Json{{"x", x.str()}, {"y", y.str()}, {"a", win.a % std::max<std::uint64_t>(k, 1)},
                        {"primes", primes}, {"count", count}, {"bound", interval_json(bound)}};
    }
    return std::nullopt;
}

VerificationReport tiny_specific(std::uint64_t k, std::uint64_t y_top, const Rational& xi, const RangeOptions& options) {
    VerificationReport report("tiny_range");
    report.parameters = {{"class", "specific"}, {"k", k}, {"xi", xi.str()}, {"y_from", k}, {"y_to", y_top}};
    if (y_top <= k) {
        report.notes.push_back("empty range");
        return report;
    }
    const Rational uk_top = rat(y_top) / rat(k);
    const std::uint64_t phi = totient(k);
    const IntervalReal scale = IntervalReal(2) * iv(k) / iv(phi);

    struct Block {
        std::uint64_t d;
        Rational u_lo, u_hi;
        IntervalReal inf_bound;
        bool closed = false;
    };
    std::vector<Block> blocks;
    for (std::uint64_t d = 1; Rational(static_cast<unsigned long long>(d)) < uk_top; ++d) {
        Rational lo = rat(d), hi = std::min(rat(d + 1), uk_top);
        blocks.push_back({d, lo, hi, scale * inf_g(lo, hi, xi)});
    }
    Json block_log = Json::array();
    for (unsigned s = 3; s <= options.max_wheel_order; ++s) {
        std::vector<std::uint64_t> widths;
        std::vector<std::size_t> index;
        for (std::size_t i = 0; i < blocks.size(); ++i)
            if (!blocks[i].closed) {
                widths.push_back(blocks[i].d + 1);
                index.push_back(i);
            }
        if (widths.empty()) break;
        auto wheel = wheel_coprime_to(k, s);
        auto best = max_survivors(k, wheel, widths);
        for (std::size_t j = 0; j < index.size(); ++j) {
            auto& b = blocks[index[j]];
            if (certainly_less(iv(best[j].count), b.inf_bound)) {
                b.closed = true;
                block_log.push_back({{"d", b.d},
                                     {"u_range", {b.u_lo.str(), b.u_hi.str()}},
                                     {"terms", widths[j]},
                                     {"wheel_order", s},
                                     {"max_survivors", best[j].count},
                                     {"inf_bound", interval_json(b.inf_bound)}});
                continue;
            }
            // A real prime cluster above the bound refutes the block outright.
            WindowWitness real = max_primes(k, widths[j], 10000);
            if (!certainly_less(iv(real.count), b.inf_bound)) {
                if (auto ce = certify_counterexample(k, xi, real, widths[j], b.u_lo, b.u_hi)) {
                    b.closed = true;
                    report.fail("counterexample in y-block [" + (b.u_lo * rat(k)).str() + ", " +
                                (b.u_hi * rat(k)).str() + "]");
                    Json w = *ce;
                    w["kind"] = "counterexample";
                    report.witnesses.push_back(w);
                }
            }
        }
    }
    for (const auto& b : blocks)
        if (!b.closed) {
            report.demote(Status::inconclusive);
            report.notes.push_back("block d = " + std::to_string(b.d) + " not closed up to wheel order " +
                                   std::to_string(options.max_wheel_order));
        }
    report.witnesses.push_back({{"kind", "blocks"}, {"closed", block_log}});
    return report;
}

VerificationReport tiny_generic(const Rational& xi, const RangeOptions& options) {
    VerificationReport report("tiny_range");
    report.parameters = {{"class", "generic"}, {"xi", xi.str()}, {"y_from", "k"}, {"y_to", "14k"}};
    for (std::uint64_t k = 1; k <= 9; ++k) {
        auto sub = tiny_specific(k, 14 * k, xi, options);
        report.add(std::move(sub));
    }
    static constexpr std::uint64_t small[] = {2, 3, 5, 7, 11};
    Json per_m = Json::array();
    for (std::uint64_t m = 2; m <= 14; ++m) {
        Rational lo = rat(m - 1), hi = rat(m);
        IntervalReal g = IntervalReal(2) * inf_g(lo, hi, xi);
        auto t_m = static_cast<std::uint64_t>(std::ceil(g.lower())) - 1;
        if (!certainly_less(iv(t_m), g)) --t_m;
        std::uint64_t worst_count = 0;
        unsigned branch2 = 0;
        for (unsigned mask = 0; mask < 32; ++mask) {
            std::uint64_t q = 1;
            Rational rho(1);
            std::vector<std::uint64_t> divides;
            for (unsigned i = 0; i < 5; ++i) {
                if (mask & (1u << i)) {
                    rho *= frac(small[i] - 1, small[i]);
                    divides.push_back(small[i]);
                } else {
                    q *= small[i];
                }
            }
            // A prime AP term <= 11 has no prime before it in the progression (k >= 10), so it
            // opens the window and the remaining primes lie among the next m - 1 terms.
            std::uint64_t count = window_count_max(1, 0, q, rat(m));
            if (q > 1) count = std::max(count, 1 + window_count_max(1, 0, q, rat(m - 1)));
            worst_count = std::max(worst_count, count);
            if (count <= t_m) continue;
            ++branch2;
            if (!certainly_less(iv(Rational(static_cast<unsigned long long>(count)) * rho), g)) {
                report.fail("m = " + std::to_string(m) + ": no branch closes");
                report.witnesses.push_back(
                    {{"kind", "open_pattern"}, {"m", m}, {"divisors", divides}, {"count", count}});
            }
        }
        per_m.push_back({{"m", m}, {"T_m", t_m}, {"inf_2u_over_log", interval_json(g)},
                         {"max_count", worst_count}, {"patterns_closed_by_density", branch2}});
    }
    report.witnesses.push_back({{"kind", "patterns"}, {"k_min", 10}, {"per_m", per_m}});
    return report;
}

// ---------------------------------------------------------------------------------------------
// Sieve range

IntervalReal gap_lower_on(std::uint64_t k, const Rational& xi, const LinearBound& bound, const Rational& a,
                          const Rational& b) {
    IntervalReal phi = iv(totient(k));
    return IntervalReal(2) * iv(a) - phi * (enclose_log(b / rat(k)) + iv(xi)) * iv(bound.at(b));
}

bool bisect_positive(std::uint64_t k, const Rational& xi, const LinearBound& bound, const Rational& a,
                     const Rational& b, int depth, std::uint64_t& pieces) {
    if (++pieces > 2'000'000) return false;
    if (certainly_positive(gap_lower_on(k, xi, bound, a, b))) return true;
    if (depth == 0) return false;
    Rational mid = (a + b) / Rational(2);
    return bisect_positive(k, xi, bound, a, mid, depth - 1, pieces) &&
           bisect_positive(k, xi, bound, mid, b, depth - 1, pieces);
}

}  // namespace

EpsilonParams EpsilonParams::for_modulus(std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("modulus must be positive");
    return {k, btcert::eta(k), remainder_constant(k), frac(totient(k), k), std::nullopt};
}

IntervalReal eps1(const EpsilonParams& p, const IntervalReal& z, Eps1Form form) {
    if (!certainly_positive(z)) throw std::domain_error("eps1: z must be positive");
    IntervalReal value = p.eta / (IntervalReal(1) + z) +
                         fixed_constants().half_plus_quarter_pi * p.c / (iv(p.density) * sqrt(z));
    return form == Eps1Form::displayed ? value : IntervalReal(2) * value;
}

IntervalReal eps1_tilde(const EpsilonParams& p, const IntervalReal& z, Eps1Form form) {
    if (!p.delta_coeffs) throw std::invalid_argument("eps1_tilde: missing (d1, d2)");
    if (!certainly_positive(z)) throw std::domain_error("eps1_tilde: z must be positive");
    const auto& d = *p.delta_coeffs;
    if (form == Eps1Form::displayed) return p.eta / (IntervalReal(1) + z) + d.d1 / sqrt(z) + d.d2 / z;
    IntervalReal delta = d.d1 / sqrt(z) + IntervalReal(2) * d.d2 / z;
    return IntervalReal(2) * p.eta / (IntervalReal(1) + z) + IntervalReal(2) * delta / iv(p.density);
}

IntervalReal eps2(const EpsilonParams& p, std::uint64_t N) {
    if (N < 1) throw std::domain_error("eps2: N must be at least 1");
    IntervalReal t = enclose_log(rat(N)) + log_shift(p.eta);
    return iv(p.density) * sqr(t) / enclose_sqrt(Rational(16) * rat(N) / Rational(3));
}

IntervalReal eps3(const EpsilonParams& p, const Rational& y) {
    if (y.sign() <= 0) throw std::domain_error("eps3: y must be positive");
    IntervalReal t = enclose_log(y / rat(p.k)) + log_shift(p.eta);
    return iv(p.k) * sqr(t) / iv(y);
}

IntervalReal eps1(std::uint64_t k, const Rational& z) {
    if (z.sign() <= 0) throw std::domain_error("eps1: z must be positive");
    return eps1(EpsilonParams::for_modulus(k), iv(z));
}
IntervalReal eps2(std::uint64_t k, std::uint64_t N) { return eps2(EpsilonParams::for_modulus(k), N); }
IntervalReal eps3(std::uint64_t k, const Rational& y) { return eps3(EpsilonParams::for_modulus(k), y); }

IntervalReal eps_total(std::uint64_t k, const Rational& y, EpsVariant variant, const std::optional<TildeParams>& tilde,
                       Eps1Form form) {
    if (!(rat(k) < y)) throw std::domain_error("eps_total: requires y > k");
    auto vp = variant_params(k, variant, tilde);
    std::uint64_t N = floor_div(y, k);
    IntervalReal z = z_of(N);
    IntervalReal first;
    if (variant == EpsVariant::tilde) {
        Rational z2 = Rational(3) * rat(N) / Rational(4);
        if (!(rat(tilde->z_lo) * rat(tilde->z_lo) < z2) || !(z2 <= rat(tilde->z_hi) * rat(tilde->z_hi)))
            throw std::domain_error("eps_total: z = sqrt(3N/4) outside the tilde validity window");
        first = eps1_tilde(vp.first, z, form);
    } else {
        first = eps1(vp.first, z, form);
    }
    return first + eps2(vp.rest, N) + eps3(vp.rest, y);
}

IntervalReal regime_margin(std::uint64_t k, const Rational& y, const Rational& xi, EpsVariant variant,
                           const std::optional<TildeParams>& tilde, Eps1Form form) {
    IntervalReal e = variant == EpsVariant::primed ? eta(1) : eta(k);
    return log_shift(e) - eps_total(k, y, variant, tilde, form) - iv(xi);
}

std::optional<IntervalReal> thm11_bound(std::uint64_t k, const Rational& y) {
    if (!(rat(k) < y) || floor_div(y, k) < 2) return std::nullopt;
    IntervalReal denom = enclose_log(y / rat(k)) + log_shift(eta(k)) - eps_total(k, y, EpsVariant::thm11);
    if (!certainly_positive(denom)) return std::nullopt;
    return IntervalReal(2) * iv(y) / (iv(totient(k)) * denom);
}

IntervalReal simple_bound(std::uint64_t k, const Rational& y, const Rational& xi) {
    if (k == 0) throw std::invalid_argument("simple_bound: modulus must be positive");
    if (!(rat(k) < y)) throw std::domain_error("simple_bound: requires y > k");
    IntervalReal denom = iv(totient(k)) * (enclose_log(y / rat(k)) + iv(xi));
    if (!certainly_positive(denom)) throw std::domain_error("simple_bound: denominator not positive");
    return IntervalReal(2) * iv(y) / denom;
}

VerificationReport verify_large_range(std::uint64_t k, const Rational& xi, const RangeOptions& options) {
    VerificationReport report("large_range");
    ScopedTimer timer(report);
    EpsVariant variant = options.generic_modulus ? EpsVariant::primed : EpsVariant::thm11;
    Rational y0 = kLargeScale * rat(k);
    report.parameters = {{"k", k}, {"xi", xi.str()}, {"y_from", y0.str()}, {"y_to", "infinity"}};
    report.mode_flags["variant"] = variant_name(variant);
    report.mode_flags["eps1_form"] = form_name(options.eps1_form);
    certify_from_left_edge(report, k, xi, variant, std::nullopt, options.eps1_form, y0, y0 * Rational(10000));
    return report;
}

VerificationReport verify_mid_range(std::uint64_t k, const Rational& xi, const DeltaRow& row,
                                    const RemainderWindowTable& table, const RangeOptions& options) {
    VerificationReport report("mid_range");
    ScopedTimer timer(report);
    Rational y0 = rat(row.y0), y_top = kLargeScale * rat(k);
    report.parameters = {{"k", k}, {"xi", xi.str()}, {"y_from", y0.str()}, {"y_to", y_top.str()}, {"I", row.I}};
    report.mode_flags["variant"] = "tilde";
    report.mode_flags["eps1_form"] = form_name(options.eps1_form);
    report.mode_flags["delta_source"] = options.trust_printed_delta ? "printed" : "recomputed";
    if (row.k != k || table.k != k) throw std::invalid_argument("verify_mid_range: row and table must match k");
    if (row.I < 1 || row.I > table.rows.size()) throw std::out_of_range("verify_mid_range: I outside the table");

    auto computed = piecewise_delta_bound(table, row.I);
    report.witnesses.push_back({{"kind", "delta_coefficients"},
                                {"d1_recomputed", interval_json(computed.d1)},
                                {"d2_recomputed", interval_json(computed.d2)},
                                {"d1_printed", row.d1_text},
                                {"d2_printed", row.d2_text}});
    TildeParams tilde{computed.d1, computed.d2, table.rows[row.I - 1].z, 100000};
    if (options.trust_printed_delta) {
        tilde.d1 = iv(row.d1);
        tilde.d2 = iv(row.d2);
        report.notes.push_back("uses the shipped d1, d2 without recomputation");
    }

    // z = sqrt(3 floor(y/k) / 4) must stay inside (z_I, 10^5] for the whole regime.
    auto z2 = [&](const Rational& y) { return Rational(3) * rat(floor_div(y, k)) / Rational(4); };
    Rational zlo2 = rat(tilde.z_lo) * rat(tilde.z_lo), zhi2 = rat(tilde.z_hi) * rat(tilde.z_hi);
    if (!(zlo2 < z2(y0)) || !(z2(y_top) <= zhi2)) {
        report.fail("tilde validity window violated on [y0, 10^10 k]");
        return report;
    }
    certify_from_left_edge(report, k, xi, EpsVariant::tilde, tilde, options.eps1_form, y0, y_top);
    return report;
}

IntervalReal sieve_gap(std::uint64_t k, const Rational& xi, const LinearBound& bound, const Rational& y) {
    return IntervalReal(2) * iv(y) - iv(totient(k)) * (enclose_log(y / rat(k)) + iv(xi)) * iv(bound.at(y));
}

VerificationReport verify_sieve_range(std::uint64_t k, const Rational& xi, const SieveRangeRow& row,
                                      const ExtremalTable& table) {
    VerificationReport report("sieve_range");
    ScopedTimer timer(report);
    report.parameters = {{"k", k}, {"xi", xi.str()}, {"r", row.r}, {"y_from", row.y1}, {"y_to", row.y2}};
    if (row.k != k) throw std::invalid_argument("verify_sieve_range: row belongs to another modulus");
    if (row.y1 <= k || row.y2 < row.y1) {
        report.fail("row range must satisfy k < y1 <= y2");
        return report;
    }
    LinearBound bound = window_bound_coefficients(k, row.r, table);
    report.mode_flags["window_bound"] = row.r <= 10 ? "direct" : "chained";
    report.witnesses.push_back({{"kind", "coefficients"}, {"alpha", bound.alpha.str()}, {"beta", bound.beta.str()}});

    Rational y1 = rat(row.y1), y2 = rat(row.y2);
    for (const auto& y : {y1, y2}) {
        IntervalReal lhs = iv(bound.at(y));
        IntervalReal rhs = simple_bound(k, y, xi);
        report.witnesses.push_back({{"kind", "endpoint"},
                                    {"y", y.str()},
                                    {"window_bound", interval_json(lhs)},
                                    {"simple_bound", interval_json(rhs)},
                                    {"gap", interval_json(sieve_gap(k, xi, bound, y))}});
    }
    // h'' = -phi(k)(alpha y - beta)/y^2, so alpha y1 > beta makes h concave on [y1, y2].
    bool concave = bound.beta < bound.alpha * y1;
    report.mode_flags["certificate"] = concave ? "concavity" : "bisection";
    if (concave) {
        for (const auto& y : {y1, y2}) {
            IntervalReal h = sieve_gap(k, xi, bound, y);
            if (certainly_negative(h))
                report.fail("window bound exceeds simple_bound at y = " + y.str());
            else if (!certainly_positive(h)) {
                report.demote(Status::inconclusive);
                report.notes.push_back("gap straddles zero at y = " + y.str());
            }
        }
        return report;
    }
    std::uint64_t pieces = 0;
    if (!bisect_positive(k, xi, bound, y1, y2, 40, pieces)) {
        bool refuted = certainly_negative(sieve_gap(k, xi, bound, y1)) || certainly_negative(sieve_gap(k, xi, bound, y2));
        if (refuted)
            report.fail("window bound exceeds simple_bound at an endpoint");
        else {
            report.demote(Status::inconclusive);
            report.notes.push_back("bisection did not close the range");
        }
    }
    report.witnesses.push_back({{"kind", "bisection"}, {"pieces", pieces}});
    return report;
}

std::optional<Crossover> sieve_crossover(std::uint64_t k, const Rational& xi, const LinearBound& bound,
                                         const Rational& lo, const Rational& hi, const Rational& tol) {
    Rational below = lo, above = hi;
    if (!certainly_negative(sieve_gap(k, xi, bound, below)) || !certainly_positive(sieve_gap(k, xi, bound, above)))
        return std::nullopt;
    while (tol < above - below) {
        Rational mid = (below + above) / Rational(2);
        IntervalReal h = sieve_gap(k, xi, bound, mid);
        if (certainly_negative(h))
            below = mid;
        else if (certainly_positive(h))
            above = mid;
        else
            break;
    }
    return Crossover{below, above};
}

VerificationReport verify_tiny_range(const TinyClass& cls, const Rational& xi, const RangeOptions& options) {
    if (xi.sign() <= 0) throw std::domain_error("verify_tiny_range: xi must be positive");
    VerificationReport report = cls.kind == TinyClass::Kind::generic ? tiny_generic(xi, options)
                                                                     : tiny_specific(cls.k, cls.y_top, xi, options);
    return report;
}

VerificationReport verify_primed_domination(std::uint64_t k_max, std::span<const Rational> u_grid) {
    VerificationReport report("primed_domination");
    ScopedTimer timer(report);
    report.parameters = {{"k_max", k_max}, {"grid_points", u_grid.size()}};
    // With N = floor(y/k) = floor(u): the epsilon_1 pieces coincide, k(log(y/k) + c)^2/y equals
    // (log u + c)^2/u, so only (phi(k)/k) eps_{1,2}(N) <= eps_{1,2}(N) needs certifying.
    report.notes.push_back("eps_1 pieces identical; eps_3 pieces equal as functions of y/k");
    auto one = EpsilonParams::for_modulus(1);
    std::optional<IntervalReal> tightest;
    for (std::uint64_t k = 2; k <= k_max; ++k) {
        auto primed = one;
        primed.k = k;
        primed.density = frac(totient(k), k);
        for (const auto& u : u_grid) {
            std::uint64_t N = to_u64(u.floor());
            IntervalReal lhs = eps2(primed, N), rhs = eps2(one, N);
            IntervalReal total_l = eps_total(k, u * rat(k), EpsVariant::primed);
            IntervalReal total_r = eps_total(1, u, EpsVariant::thm11);
            if (!certainly_less(lhs, rhs)) {
                report.fail("domination not certified at k = " + std::to_string(k) + ", y/k = " + u.str());
                report.witnesses.push_back({{"k", k}, {"u", u.str()}, {"eps2_primed", interval_json(lhs)},
                                            {"eps2_one", interval_json(rhs)}});
            }
            IntervalReal slack = total_r - total_l;
            if (!tightest || slack.lower() < tightest->lower()) tightest = slack;
        }
    }
    if (tightest) report.witnesses.push_back({{"kind", "tightest_slack"}, {"slack", interval_json(*tightest)}});
    return report;
}

VerificationReport verify_theorem(std::uint64_t k, const Rational& xi, const TheoremInputs& inputs,
                                  const RangeOptions& options) {
    if (!inputs.tables || !inputs.extremal) throw std::invalid_argument("verify_theorem: tables not loaded");
    VerificationReport report("theorem");
    ScopedTimer timer(report);
    report.parameters = {{"k", k}, {"xi", xi.str()}};
    report.mode_flags["eps1_form"] = form_name(options.eps1_form);
    report.mode_flags["delta_source"] = options.trust_printed_delta ? "printed" : "recomputed";
    const TableSet& tables = *inputs.tables;

    auto rows = inputs.override_sieve_rows ? inputs.sieve_rows : tables.sieve_ranges_for(k);
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.y1 < b.y1; });
    auto delta = tables.delta_for(k);
    if (!delta) throw std::invalid_argument("verify_theorem: no delta row for k = " + std::to_string(k));

    std::uint64_t tiny_top = rows.empty() ? 14 * k : rows.front().y1;
    auto progress = [&](const std::string& what) {
        if (options.scan.progress) options.scan.progress("theorem k=" + std::to_string(k) + ": " + what);
    };

    progress("tiny range");
    report.add(verify_tiny_range({TinyClass::Kind::specific, k, tiny_top}, xi, options));
    if (k == 1) {
        progress("tiny range, all moduli");
        report.add(verify_tiny_range({TinyClass::Kind::generic, 1, 0}, xi, options));
    }
    progress("sieve rows");
    for (const auto& row : rows) report.add(verify_sieve_range(k, xi, row, *inputs.extremal));

    progress("remainder table precondition");
    const auto& table = tables.remainder_for(k);
    auto pre = verify_remainder_table(table, options.remainder_scan_limit, options.scan);
    pre.task = "remainder_precondition";
    report.add(std::move(pre));
    progress("mid range");
    report.add(verify_mid_range(k, xi, *delta, table, options));
    progress("large range");
    report.add(verify_large_range(k, xi, options));
    if (k == 1) {
        progress("uniformity in k");
        std::vector<Rational> grid;
        BigInt p = 100000;
        for (int e = 5; e <= 14; ++e, p *= 10) grid.push_back(Rational(p));
        report.add(verify_primed_domination(16, grid));
        RangeOptions generic = options;
        generic.generic_modulus = true;
        for (std::uint64_t j = 2; j <= 16; ++j) {
            auto sub = verify_large_range(j, xi, generic);
            sub.task = "large_range_primed";
            report.add(std::move(sub));
        }
    }

    // Coverage: (k, tiny_top], then the rows, then [y0, 10^10 k], then [10^10 k, infinity).
    Json tiles = Json::array();
    tiles.push_back({{"regime", "tiny"}, {"from", k}, {"to", tiny_top}});
    Rational top = rat(tiny_top);
    auto gap = [&](const Rational& from, const Rational& to) {
        report.fail("coverage gap (" + from.str() + ", " + to.str() + ")");
        report.witnesses.push_back({{"kind", "coverage_gap"}, {"from", from.str()}, {"to", to.str()}});
    };
    for (const auto& row : rows) {
        if (top < rat(row.y1)) gap(top, rat(row.y1));
        tiles.push_back({{"regime", "sieve"}, {"r", row.r}, {"from", row.y1}, {"to", row.y2}});
        top = std::max(top, rat(row.y2));
    }
    if (top < rat(delta->y0)) gap(top, rat(delta->y0));
    Rational mid_top = kLargeScale * rat(k);
    tiles.push_back({{"regime", "mid"}, {"from", delta->y0}, {"to", mid_top.str()}});
    tiles.push_back({{"regime", "large"}, {"from", mid_top.str()}, {"to", "infinity"}});
    report.witnesses.push_back({{"kind", "coverage"}, {"tiles", tiles}});
    return report;
}

}  // namespace btcert
