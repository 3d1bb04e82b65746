#include "btcert/mertens.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "btcert/constants.hpp"
#include "btcert/detail/fast_interval.hpp"
#include "btcert/detail/fixed_sum.hpp"
#include "btcert/primes.hpp"

namespace btcert {

using detail::FastInterval;
using detail::FixedSum;

namespace {

constexpr std::uint64_t kExactWeightedLimit = 5000;
constexpr int kBits = 160;

Rational density(std::uint64_t k) {
    return Rational(BigInt(static_cast<unsigned long>(totient(k))), BigInt(static_cast<unsigned long>(k)));
}

std::uint64_t checked_floor(const Rational& z, const char* what) {
    if (z < Rational(1)) throw std::domain_error(std::string(what) + ": z must be at least 1");
    return to_u64(z.floor());
}

Rational u(std::uint64_t v) { return Rational(static_cast<unsigned long long>(v)); }

FastInterval fast(const Rational& q) { return FastInterval::from(IntervalReal(q, 64)); }

}  // namespace

Rational SieveDensity::g(std::uint64_t p) const { return rho(p) == 0 ? Rational(0) : Rational(1) / u(p - 1); }

MertensExpansion mertens_expansion(std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("mertens_expansion: k must be positive");
    return {k, density(k), eta(k), alterman_c(k), k % 2 == 0 ? Rational(493, 1000) : Rational(1)};
}

void RemainderWindowTable::validate() const {
    if (rows.empty()) throw std::invalid_argument("remainder table for k=" + std::to_string(k) + " is empty");
    if (rows.front().z != 1) throw std::invalid_argument("remainder table must start at z = 1");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].c.sign() <= 0) throw std::invalid_argument("remainder table constants must be positive");
        if (i > 0 && rows[i].z <= rows[i - 1].z)
            throw std::invalid_argument("remainder table abscissae must increase strictly");
    }
}

Rational plain_sum(std::uint64_t k, const Rational& z) {
    std::uint64_t n = checked_floor(z, "plain_sum");
    if (n > kExactSumLimit) throw std::out_of_range("plain_sum: exact sums are limited to z <= 1e5");
    // Group terms by phi(q) so each distinct denominator is added once.
    std::map<std::uint64_t, std::uint64_t> by_phi;
    SmallestFactorSieve sieve(static_cast<std::uint32_t>(n));
    for (std::uint32_t q = 1; q <= n; ++q)
        if (std::gcd<std::uint64_t>(q, k) == 1 && sieve.is_squarefree(q)) ++by_phi[sieve.totient(q)];
    Rational sum;
    for (auto [phi, count] : by_phi) sum += u(count) / u(phi);
    return sum;
}

Rational weighted_sum(std::uint64_t k, const Rational& z, Weight w) {
    std::uint64_t n = checked_floor(z, "weighted_sum");
    if (n > kExactWeightedLimit) throw std::out_of_range("weighted_sum: exact sums are limited to z <= 5000");
    SmallestFactorSieve sieve(static_cast<std::uint32_t>(n));
    Rational sum;
    for (std::uint32_t q = 1; q <= n; ++q) {
        if (std::gcd<std::uint64_t>(q, k) != 1 || !sieve.is_squarefree(q)) continue;
        Rational weight = (w == Weight::displayed ? u(q) : z) / (u(q) + z);
        sum += weight / u(sieve.totient(q));
    }
    return sum;
}

IntervalReal plain_sum_enclosure(std::uint64_t k, const Rational& z) {
    std::uint64_t n = checked_floor(z, "plain_sum_enclosure");
    return detail::prefix_plain_sum(k, n).interval();
}

IntervalReal weighted_sum_enclosure(std::uint64_t k, const Rational& z, Weight w) {
    std::uint64_t n = checked_floor(z, "weighted_sum_enclosure");
    FastInterval zf = fast(z);
    FastInterval sum{0.0, 0.0};
    detail::CoprimeSquarefreeStream stream(k, 1, n);
    for (std::uint64_t q = 1; q <= n; ++q) {
        std::uint64_t phi = stream.next();
        if (phi == 0) continue;
        FastInterval qf = FastInterval::point(static_cast<double>(q));
        sum = sum + (w == Weight::displayed ? qf : zf) / ((qf + zf) * FastInterval::point(static_cast<double>(phi)));
    }
    return IntervalReal::hull(IntervalReal(sum.lo), IntervalReal(sum.hi));
}

IntervalReal eta(std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("eta: k must be positive");
    const auto& c = fixed_constants();
    IntervalReal e = c.gamma + c.mertens_c;
    for (std::uint64_t p : prime_divisors(k)) {
        IntervalReal pp(u(p), kBits);
        e += log(pp) / pp;
    }
    return e;
}

IntervalReal alterman_c(std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("alterman_c: k must be positive");
    IntervalReal c(Rational(22, 5), kBits);
    if (k % 2 == 0) c *= IntervalReal(Rational(493, 1000), kBits);
    for (std::uint64_t p : prime_divisors(k)) {
        IntervalReal pp(u(p), kBits);
        IntervalReal rp = sqrt(pp);
        IntervalReal den = pp * rp - pp - rp + IntervalReal(2);
        c *= IntervalReal(1) + (pp - IntervalReal(2)) / den;
    }
    return c;
}

IntervalReal remainder_constant(std::uint64_t k) {
    return k == 1 ? IntervalReal(Rational(61, 25), kBits) : alterman_c(k);
}

IntervalReal remainder(std::uint64_t k, const Rational& t) {
    std::uint64_t n = checked_floor(t, "remainder");
    IntervalReal s = detail::prefix_plain_sum(k, n).interval();
    IntervalReal cg(density(k), kBits);
    return s - cg * (log(IntervalReal(t, kBits)) + eta(k));
}

IntervalReal remainder_left(std::uint64_t k, const Rational& t) {
    std::uint64_t n = checked_floor(t, "remainder_left");
    if (Rational(BigInt(static_cast<unsigned long>(n))) == t) --n;
    IntervalReal s = detail::prefix_plain_sum(k, n).interval();
    IntervalReal cg(density(k), kBits);
    return s - cg * (log(IntervalReal(t, kBits)) + eta(k));
}

namespace {

struct SegmentAccumulator {
    double best_lo = 0.0;
    double best_hi = 0.0;
    std::uint64_t witness = 0;
    bool left_limit = false;
    std::uint64_t peaks = 0;

    void offer(FastInterval f, std::uint64_t t, bool is_left) {
        best_hi = std::max(best_hi, f.hi);
        if (witness == 0 || f.lo > best_lo) {
            best_lo = f.lo;
            witness = t;
            left_limit = is_left;
        }
    }

    void merge(const SegmentAccumulator& o) {
        best_hi = std::max(best_hi, o.best_hi);
        if (o.best_lo > best_lo || (o.best_lo == best_lo && witness == 0)) {
            best_lo = o.best_lo;
            witness = o.witness;
            left_limit = o.left_limit;
        }
        peaks += o.peaks;
    }

    SupScanResult result() const {
        SupScanResult r{IntervalReal::hull(IntervalReal(best_lo), IntervalReal(best_hi)),
                        Rational(static_cast<unsigned long long>(witness)), left_limit, peaks};
        return r;
    }
};

/// Scans the segments (cuts[j], cuts[j+1]] given the fixed-point sum through cuts[0].
std::vector<SegmentAccumulator> scan_from(std::uint64_t k, FixedSum sum, std::span<const std::uint64_t> cuts) {
    const FastInterval cg = fast(density(k));
    const FastInterval eta_k = FastInterval::from(eta(k));
    const FastInterval two_cg = cg + cg;

    std::vector<SegmentAccumulator> out(cuts.size() - 1);
    detail::CoprimeSquarefreeStream stream(k, cuts.front() + 1, cuts.back());
    std::uint64_t n = cuts.front();
    detail::LogStream logs(n);
    FastInterval log_n = logs.value();
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
        SegmentAccumulator& acc = out[j];
        for (; n < cuts[j + 1]; ++n) {
            FastInterval s = sum.fast();
            logs.advance();
            FastInterval log_next = logs.value();
            FastInterval e_here = s - cg * (log_n + eta_k);
            FastInterval e_left = s - cg * (log_next + eta_k);
            FastInterval root_here = detail::sqrt_of(static_cast<double>(n));
            FastInterval root_next = detail::sqrt_of(static_cast<double>(n + 1));
            acc.offer(abs(e_here) * root_here, n, false);
            acc.offer(abs(e_left) * root_next, n + 1, true);
            if (!(e_here.hi < two_cg.lo)) {
                // |E| sqrt(t) may rise inside the piece; its peak is 2 C_g sqrt(t*) with t* < n + 1.
                acc.best_hi = std::max(acc.best_hi, (two_cg * root_next).hi);
                ++acc.peaks;
            }
            if (std::uint64_t w = stream.next()) sum.add_reciprocal(w);
            log_n = log_next;
        }
        FastInterval e_end = sum.fast() - cg * (log_n + eta_k);
        acc.offer(abs(e_end) * detail::sqrt_of(static_cast<double>(n)), n, false);
    }
    return out;
}

}  // namespace

std::vector<SupScanResult> scan_remainder_segments(std::uint64_t k, std::span<const std::uint64_t> cuts,
                                                   const ScanOptions& options) {
    if (cuts.size() < 2) throw std::invalid_argument("scan_remainder_segments: need at least two cuts");
    if (cuts.front() < 1) throw std::invalid_argument("scan_remainder_segments: scan must start at t >= 1");
    for (std::size_t i = 1; i < cuts.size(); ++i)
        if (cuts[i] <= cuts[i - 1]) throw std::invalid_argument("scan_remainder_segments: cuts must increase");

    // Refine long segments into pieces so that workers get comparable loads.
    std::vector<std::uint64_t> refined;
    std::vector<std::size_t> owner;  // original segment of each refined segment
    const std::uint64_t span = cuts.back() - cuts.front();
    const unsigned jobs = std::max(1u, options.jobs);
    const std::uint64_t piece = jobs > 1 ? std::max<std::uint64_t>(1 << 16, span / (4 * jobs) + 1) : span + 1;
    refined.push_back(cuts.front());
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
        for (std::uint64_t c = cuts[j] + piece; c < cuts[j + 1]; c += piece) {
            refined.push_back(c);
            owner.push_back(j);
        }
        refined.push_back(cuts[j + 1]);
        owner.push_back(j);
    }

    std::vector<SegmentAccumulator> merged(cuts.size() - 1);
    if (jobs == 1) {
        auto parts = scan_from(k, detail::prefix_plain_sum(k, refined.front()), refined);
        for (std::size_t i = 0; i < parts.size(); ++i) merged[owner[i]].merge(parts[i]);
    } else {
        // Sequential pre-pass for the exact prefix sums at every refined cut.
        std::vector<FixedSum> prefix(refined.size());
        FixedSum s;
        detail::CoprimeSquarefreeStream stream(k, 1, refined.back());
        std::uint64_t n = 0;
        for (std::size_t i = 0; i < refined.size(); ++i) {
            for (; n < refined[i]; ) {
                ++n;
                if (std::uint64_t w = stream.next()) s.add_reciprocal(w);
            }
            prefix[i] = s;
        }
        std::vector<SegmentAccumulator> parts(refined.size() - 1);
        parallel_for(parts.size(), jobs, [&](std::size_t i) {
            std::uint64_t local[2] = {refined[i], refined[i + 1]};
            parts[i] = scan_from(k, prefix[i], local).front();
            if (options.progress && i % 16 == 0)
                options.progress("remainder scan k=" + std::to_string(k) + " reached t=" + std::to_string(refined[i + 1]));
        });
        for (std::size_t i = 0; i < parts.size(); ++i) merged[owner[i]].merge(parts[i]);
    }

    std::vector<SupScanResult> out;
    out.reserve(merged.size());
    for (const auto& m : merged) out.push_back(m.result());
    return out;
}

SupScanResult scan_remainder_sup(std::uint64_t k, std::uint64_t t_lo, std::uint64_t t_hi, const ScanOptions& options) {
    if (t_lo < 1 || t_hi <= t_lo) throw std::invalid_argument("scan_remainder_sup: need 1 <= t_lo < t_hi");
    std::uint64_t cuts[2] = {t_lo, t_hi};
    return scan_remainder_segments(k, cuts, options).front();
}

VerificationReport verify_remainder_table(const RemainderWindowTable& table, std::uint64_t t_max,
                                          const ScanOptions& options) {
    VerificationReport report("verify_remainder_table");
    ScopedTimer timer(report);
    table.validate();
    report.parameters = {{"k", table.k}, {"t_max", t_max}, {"rows", table.rows.size()}};
    report.mode_flags["sum_enclosure"] = "fixed-point 2^-96";
    report.mode_flags["piece_rule"] = "endpoints plus interior-peak bound";

    std::vector<std::uint64_t> cuts;
    for (const auto& row : table.rows)
        if (row.z < t_max) cuts.push_back(row.z);
    cuts.push_back(t_max);
    const std::size_t active = cuts.size() - 1;
    if (active == 0) {
        report.notes.push_back("every row starts at or beyond t_max; nothing to scan");
        return report;
    }
    auto segments = scan_remainder_segments(table.k, cuts, options);

    // Row i must hold on (z_i, t_max]: combine the suprema of all later segments.
    std::size_t worst = active - 1;
    std::uint64_t peak_pieces = 0;
    for (const auto& s : segments) peak_pieces += s.peak_pieces;
    for (std::size_t i = active; i-- > 0;) {
        if (segments[i].sup.upper() >= segments[worst].sup.upper()) worst = i;
        const auto& row = table.rows[i];
        const auto& seg = segments[worst];
        IntervalReal bound = IntervalReal(seg.sup.upper());
        IntervalReal c(row.c, kBits);
        std::string verdict = "verified";
        if (!certainly_less(bound, c)) {
            if (certainly_less(c, IntervalReal(seg.sup.lower()))) {
                report.fail("row " + std::to_string(i + 1) + " violated at t=" + seg.witness_t.str());
                verdict = "failed";
            } else {
                report.demote(Status::inconclusive);
                verdict = "inconclusive";
            }
        }
        std::ostringstream margin;
        margin.precision(6);
        margin << (row.c.to_double() - seg.sup.upper());
        report.witnesses.push_back({{"row", i + 1},
                                    {"z", row.z},
                                    {"c", row.c_text.empty() ? row.c.str() : row.c_text},
                                    {"sup_upper", seg.sup.upper()},
                                    {"sup_lower", seg.sup.lower()},
                                    {"witness_t", seg.witness_t.str()},
                                    {"witness_is_left_limit", seg.witness_is_left_limit},
                                    {"margin", margin.str()},
                                    {"status", verdict}});
    }
    std::reverse(report.witnesses.begin(), report.witnesses.end());
    for (std::size_t i = active; i < table.rows.size(); ++i)
        report.notes.push_back("row " + std::to_string(i + 1) + " starts at or beyond t_max and is vacuous");
    report.parameters["peak_pieces"] = peak_pieces;
    return report;
}

IntervalReal lemma21_main_term(std::uint64_t k, const Rational& z) {
    if (z < Rational(1)) throw std::domain_error("lemma21_main_term: z must be at least 1");
    IntervalReal zi(z, kBits);
    IntervalReal one(1);
    IntervalReal inner = log(zi) - log(IntervalReal(Rational(2), kBits)) + log(one + one / zi) + zi / (zi + one) * eta(k);
    return IntervalReal(density(k), kBits) * inner;
}

VerificationReport verify_weighted_lower_bound(std::uint64_t k, std::span<const Rational> z_set, DeltaMode mode) {
    VerificationReport report("verify_weighted_lower_bound");
    ScopedTimer timer(report);
    report.parameters = {{"k", k}, {"points", z_set.size()}};
    report.mode_flags["delta_mode"] = mode == DeltaMode::paper ? "paper" : "conservative";
    report.mode_flags["c"] = k == 1 ? "2.44" : "alterman";
    report.mode_flags["weight"] = "(1+q/z)^-1";

    const auto& fc = fixed_constants();
    const IntervalReal c = remainder_constant(k);
    const IntervalReal m_paper = fc.half_plus_quarter_pi;
    const IntervalReal m_cons = fc.half_plus_quarter_pi + IntervalReal(Rational(1, 2), kBits);

    bool conservative_needed = false, displayed_holds = true;
    double tightest = INFINITY;
    for (const Rational& z : z_set) {
        IntervalReal h = weighted_sum_enclosure(k, z, Weight::summation);
        IntervalReal main = lemma21_main_term(k, z);
        IntervalReal root = sqrt(IntervalReal(z, kBits));
        IntervalReal lower_paper = main - m_paper * c / root;
        IntervalReal lower_cons = main - m_cons * c / root;
        bool paper_ok = certainly_less(lower_paper, h);
        bool cons_ok = certainly_less(lower_cons, h);
        bool displayed_ok = certainly_less(lower_paper, weighted_sum_enclosure(k, z));
        displayed_holds = displayed_holds && displayed_ok;
        if (!paper_ok && cons_ok) conservative_needed = true;
        bool ok = mode == DeltaMode::paper ? paper_ok : cons_ok;
        double margin = h.lower() - (mode == DeltaMode::paper ? lower_paper : lower_cons).upper();
        tightest = std::min(tightest, margin);
        if (!ok) {
            if (certainly_less(h, mode == DeltaMode::paper ? lower_paper : lower_cons))
                report.fail("lower bound violated at z=" + z.str());
            else
                report.demote(Status::inconclusive);
        }
        report.witnesses.push_back({{"z", z.str()},
                                    {"weighted_sum_lower", h.lower()},
                                    {"paper_bound_upper", lower_paper.upper()},
                                    {"conservative_bound_upper", lower_cons.upper()},
                                    {"paper_ok", paper_ok},
                                    {"conservative_ok", cons_ok},
                                    {"displayed_weight_ok", displayed_ok}});
    }
    report.parameters["conservative_required"] = conservative_needed;
    report.parameters["displayed_weight_holds"] = displayed_holds;
    report.parameters["tightest_margin"] = tightest;
    return report;
}

DeltaCoefficients piecewise_delta_bound(const RemainderWindowTable& table, std::size_t I) {
    table.validate();
    if (I < 1 || I > table.rows.size()) throw std::out_of_range("piecewise_delta_bound: row index out of range");
    for (std::size_t i = 0; i + 1 < I; ++i)
        if (!(table.rows[i + 1].c < table.rows[i].c))
            throw std::domain_error("piecewise_delta_bound: constants must decrease through row I");
    const auto& fc = fixed_constants();
    IntervalReal d1 = IntervalReal(table.rows[I - 1].c, kBits) * fc.half_plus_quarter_pi;
    IntervalReal d2(Rational(0), kBits);
    for (std::size_t i = 0; i + 1 < I; ++i) {
        IntervalReal drop(table.rows[i].c - table.rows[i + 1].c, kBits);
        IntervalReal root = sqrt(IntervalReal(u(table.rows[i + 1].z), kBits));
        d2 += drop * (root - IntervalReal(1));
    }
    return {d1, d2};
}

}  // namespace btcert
