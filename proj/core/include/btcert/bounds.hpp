#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "btcert/interval.hpp"
#include "btcert/legendre.hpp"
#include "btcert/mertens.hpp"
#include "btcert/parallel.hpp"
#include "btcert/rational.hpp"
#include "btcert/report.hpp"
#include "btcert/tables.hpp"

namespace btcert {

enum class EpsVariant { thm11, primed, tilde };

/// `displayed` evaluates the epsilon_{k,1} terms exactly as printed. `rederived`
/// applies the factors that the derivation from the weighted-sum bound produces:
/// 2 eta/(1+z) + 2 (k/phi(k)) Delta, with the piecewise d2 doubled.
enum class Eps1Form { displayed, rederived };

/// Coefficients of |Delta_k(z)| < d1/sqrt(z) + d2/z on z_lo < z <= z_hi.
struct TildeParams {
    IntervalReal d1;
    IntervalReal d2;
    std::uint64_t z_lo;
    std::uint64_t z_hi = 100000;
};

struct EpsilonParams {
    std::uint64_t k;
    IntervalReal eta;  ///< eta in the epsilon_1 and log terms
    IntervalReal c;    ///< remainder constant in epsilon_1
    Rational density;  ///< phi(k)/k in epsilon_2 and in the k c / phi(k) factor
    std::optional<TildeParams> delta_coeffs;

    static EpsilonParams for_modulus(std::uint64_t k);
};

IntervalReal eps1(const EpsilonParams& p, const IntervalReal& z, Eps1Form form = Eps1Form::displayed);
IntervalReal eps2(const EpsilonParams& p, std::uint64_t N);
IntervalReal eps3(const EpsilonParams& p, const Rational& y);
IntervalReal eps1(std::uint64_t k, const Rational& z);
IntervalReal eps2(std::uint64_t k, std::uint64_t N);
IntervalReal eps3(std::uint64_t k, const Rational& y);

/// Tilde epsilon_1: eta/(1+z) + d1/sqrt(z) + d2/z (displayed form).
IntervalReal eps1_tilde(const EpsilonParams& p, const IntervalReal& z, Eps1Form form = Eps1Form::displayed);

/// Composite epsilon at y with N = floor(y/k) and z = sqrt(3N/4). Throws std::domain_error
/// when y <= k, or for the tilde variant when z leaves (z_lo, z_hi].
IntervalReal eps_total(std::uint64_t k, const Rational& y, EpsVariant variant,
                       const std::optional<TildeParams>& tilde = std::nullopt, Eps1Form form = Eps1Form::displayed);

/// 2 eta - log(16/3) - eps(y) - xi; the bound of the variant beats 2y/(phi(k)(log(y/k)+xi)) iff positive.
IntervalReal regime_margin(std::uint64_t k, const Rational& y, const Rational& xi, EpsVariant variant,
                           const std::optional<TildeParams>& tilde = std::nullopt, Eps1Form form = Eps1Form::displayed);

/// 2y/(phi(k)(log(3y e^{2 eta_k}/(16k)) - eps_k(y))), or nullopt when floor(y/k) < 2 or the
/// denominator is not certifiably positive.
std::optional<IntervalReal> thm11_bound(std::uint64_t k, const Rational& y);

/// 2y/(phi(k)(log(y/k) + xi)); throws std::domain_error for y <= k.
IntervalReal simple_bound(std::uint64_t k, const Rational& y, const Rational& xi);

struct RangeOptions {
    Eps1Form eps1_form = Eps1Form::displayed;
    bool trust_printed_delta = false;          ///< use the shipped d1, d2 instead of recomputed ones
    std::uint64_t remainder_scan_limit = 100000;  ///< t_max for the remainder table precondition
    bool generic_modulus = false;              ///< verify the k-uniform statement (primed variant)
    unsigned max_wheel_order = 8;              ///< tiny-range wheel escalation limit
    ScanOptions scan;
};

/// y >= 10^10 k: margin at the left edge plus monotone decrease of every epsilon piece.
VerificationReport verify_large_range(std::uint64_t k, const Rational& xi, const RangeOptions& options = {});

/// [y0, 10^10 k] with the tilde variant built from the remainder table of k.
VerificationReport verify_mid_range(std::uint64_t k, const Rational& xi, const DeltaRow& row,
                                    const RemainderWindowTable& table, const RangeOptions& options = {});

/// 2y - phi(k)(log(y/k) + xi)(alpha y + beta) for the window bound of the row.
IntervalReal sieve_gap(std::uint64_t k, const Rational& xi, const LinearBound& bound, const Rational& y);

/// [y1, y2]: the window bound stays below simple_bound.
VerificationReport verify_sieve_range(std::uint64_t k, const Rational& xi, const SieveRangeRow& row,
                                      const ExtremalTable& table);

/// Localises the sign change of sieve_gap in [lo, hi] to an interval of width <= tol.
struct Crossover {
    Rational below;  ///< gap certified negative here
    Rational above;  ///< gap certified positive here
};
std::optional<Crossover> sieve_crossover(std::uint64_t k, const Rational& xi, const LinearBound& bound,
                                         const Rational& lo, const Rational& hi, const Rational& tol = Rational(1, 100));

/// Modulus class for the smallest y.
struct TinyClass {
    enum class Kind { specific, generic } kind = Kind::specific;
    std::uint64_t k = 1;          ///< for `specific`
    std::uint64_t y_top = 0;      ///< specific: covers (k, y_top]; generic: covers (k, 14k]
};

VerificationReport verify_tiny_range(const TinyClass& cls, const Rational& xi, const RangeOptions& options = {});

/// epsilon'_k(y) <= epsilon_1(y/k) on a geometric grid of y/k, for 1 <= k <= k_max.
VerificationReport verify_primed_domination(std::uint64_t k_max, std::span<const Rational> u_grid);

struct TheoremInputs {
    const TableSet* tables = nullptr;
    const ExtremalTable* extremal = nullptr;
    std::vector<SieveRangeRow> sieve_rows;  ///< overrides the shipped rows when non-empty
    bool override_sieve_rows = false;
};

/// Runs every regime for (k, xi) and checks that they tile (k, infinity).
VerificationReport verify_theorem(std::uint64_t k, const Rational& xi, const TheoremInputs& inputs,
                                  const RangeOptions& options = {});

}  // namespace btcert
