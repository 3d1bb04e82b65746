#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "btcert/interval.hpp"
#include "btcert/parallel.hpp"
#include "btcert/rational.hpp"
#include "btcert/report.hpp"

namespace btcert {

/// Constants of sum_{q<=z, (q,k)=1} mu^2(q)/phi(q) = (phi(k)/k)(log z + eta_k) + E_k(z).
struct MertensExpansion {
    std::uint64_t k;
    Rational density_coeff;   ///< phi(k)/k
    IntervalReal eta;         ///< gamma + C + sum_{p|k} log p / p
    IntervalReal c_alterman;  ///< c_k in |E_k(z)| < c_k / sqrt(z)
    Rational delta_k;         ///< 1 for odd k, 493/1000 for even k
};

MertensExpansion mertens_expansion(std::uint64_t k);

/// Multiplicative density with g(p) = 0 for p | k and 1/(p-1) otherwise.
struct SieveDensity {
    std::uint64_t k;
    int rho(std::uint64_t p) const { return k % p == 0 ? 0 : 1; }
    Rational g(std::uint64_t p) const;
};

struct RemainderWindowRow {
    std::uint64_t z;
    Rational c;
    std::string c_text;  ///< constant as printed
};

/// Rows (z_i, c_i) asserting |E_k(t)| < c_i / sqrt(t) for z_i < t.
struct RemainderWindowTable {
    std::uint64_t k = 1;
    std::vector<RemainderWindowRow> rows;

    /// Throws if z is not strictly increasing from 1 or some c_i <= 0.
    void validate() const;
};

/// Largest z for which the exact rational sums are offered.
constexpr std::uint64_t kExactSumLimit = 100000;

/// Weight of the q-th term in weighted_sum: (1 + z/q)^-1 as displayed, or (1 + q/z)^-1,
/// the orientation the partial-summation identity behind the lower bound is derived for.
enum class Weight { displayed, summation };

Rational plain_sum(std::uint64_t k, const Rational& z);
Rational weighted_sum(std::uint64_t k, const Rational& z, Weight w = Weight::displayed);
/// Certified enclosures usable far beyond kExactSumLimit.
IntervalReal plain_sum_enclosure(std::uint64_t k, const Rational& z);
IntervalReal weighted_sum_enclosure(std::uint64_t k, const Rational& z, Weight w = Weight::displayed);

IntervalReal eta(std::uint64_t k);
IntervalReal alterman_c(std::uint64_t k);
/// Constant used for |E_k| in the bounds: 2.44 for k = 1, alterman_c(k) otherwise.
IntervalReal remainder_constant(std::uint64_t k);

/// E_k(t) = plain_sum(k, t) - (phi(k)/k)(log t + eta_k).
IntervalReal remainder(std::uint64_t k, const Rational& t);
/// Left limit E_k(t^-), where the sum runs over q < t.
IntervalReal remainder_left(std::uint64_t k, const Rational& t);

struct SupScanResult {
    IntervalReal sup;         ///< encloses sup |E_k(t)| sqrt(t) over the range
    Rational witness_t;       ///< abscissa attaining sup.lower()
    bool witness_is_left_limit = false;
    std::uint64_t peak_pieces = 0;  ///< unit pieces closed by the interior-peak bound
};

/// sup over t in (t_lo, t_hi] of |E_k(t)| sqrt(t).
SupScanResult scan_remainder_sup(std::uint64_t k, std::uint64_t t_lo, std::uint64_t t_hi,
                                 const ScanOptions& options = {});

/// One result per segment (cuts[j], cuts[j+1]]; cuts must be strictly increasing.
std::vector<SupScanResult> scan_remainder_segments(std::uint64_t k, std::span<const std::uint64_t> cuts,
                                                   const ScanOptions& options = {});

VerificationReport verify_remainder_table(const RemainderWindowTable& table, std::uint64_t t_max,
                                          const ScanOptions& options = {});

/// (phi(k)/k)(log z - log 2 + log(1 + 1/z) + z/(z+1) eta_k).
IntervalReal lemma21_main_term(std::uint64_t k, const Rational& z);

enum class DeltaMode { paper, conservative };

/// Checks weighted_sum(k, z, Weight::summation) > lemma21_main_term(k, z) - m c / sqrt(z) with m = 1/2 + pi/4
/// (paper) or 1 + pi/4 (conservative) and c = remainder_constant(k). Each witness also
/// records whether the displayed weighting would satisfy the same paper-mode bound.
VerificationReport verify_weighted_lower_bound(std::uint64_t k, std::span<const Rational> z_set, DeltaMode mode);

struct DeltaCoefficients {
    IntervalReal d1;
    IntervalReal d2;
};

/// d1 = c_I (1/2 + pi/4), d2 = sum_{i<I} (c_i - c_{i+1})(sqrt(z_{i+1}) - 1); I is 1-based.
DeltaCoefficients piecewise_delta_bound(const RemainderWindowTable& table, std::size_t I);

}  // namespace btcert
