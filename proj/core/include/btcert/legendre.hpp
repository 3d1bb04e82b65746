#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "btcert/interval.hpp"
#include "btcert/parallel.hpp"
#include "btcert/rational.hpp"

namespace btcert {

/// Extremal discrepancy constants of the wheel Q_{k,r}:
/// A + phi(Q)/Q <= Pi(N; Q) - (phi(Q)/Q) N <= A + B, both attained.
struct ExtremalConstants {
    std::uint64_t k = 1;
    unsigned r = 0;
    BigInt wheel;
    Rational a_const;
    Rational b_const;
    std::uint64_t argmin_n = 0;  ///< N attaining the minimum discrepancy
    std::uint64_t argmax_n = 0;  ///< N attaining the maximum discrepancy
    std::string source;          ///< "scan" or "table"
};

/// A row of A_{k,r}, B_{k,r} as shipped with the data files.
struct ExtremalRow {
    std::uint64_t k;
    unsigned r;
    Rational a_const;
    Rational b_const;
};

/// y-range [y1, y2] closed by the window bound of order r.
struct SieveRangeRow {
    std::uint64_t k;
    unsigned r;
    std::uint64_t y1;
    std::uint64_t y2;
};

/// Number of n in [1, z] with n = a (mod k) and gcd(n, Q) = 1; Q squarefree.
std::uint64_t sieve_count(const Rational& z, std::uint64_t k, std::int64_t a, std::uint64_t Q);
/// Direct loop; z <= 1e6.
std::uint64_t sieve_count_oracle(const Rational& z, std::uint64_t k, std::int64_t a, std::uint64_t Q);

/// One-period scan of the discrepancy for Q_{k,r}.
ExtremalConstants extremal_constants(std::uint64_t k, unsigned r, const ScanOptions& options = {});

/// sup over x >= 0 of #{n in (x, x+y] : n = a (mod k), gcd(n, Q) = 1}. Requires gcd(Q, k) = 1.
std::uint64_t window_count_max(std::uint64_t k, std::int64_t a, std::uint64_t Q, const Rational& y,
                               std::uint64_t period_cap = 100'000'000);

/// Source of B_{k,r}: period scans up to a wheel order, shipped rows beyond it.
class ExtremalTable {
public:
    explicit ExtremalTable(std::vector<ExtremalRow> shipped = {}, unsigned scan_up_to = 8, ScanOptions options = {});

    /// Constants for Q_{k,r}; rows sharing a wheel share constants.
    ExtremalConstants get(std::uint64_t k, unsigned r) const;
    unsigned scan_up_to() const { return scan_up_to_; }

private:
    std::vector<ExtremalRow> shipped_;
    unsigned scan_up_to_;
    ScanOptions options_;
    mutable std::mutex mutex_;
    mutable std::map<std::string, ExtremalConstants> cache_;
};

/// Window bound alpha*y + beta for a sieve range row.
struct LinearBound {
    Rational alpha;
    Rational beta;
    Rational at(const Rational& y) const { return alpha * y + beta; }
};

/// alpha = phi(Q_{k,r})/(k Q_{k,r}), beta = B_{k,r} + omega(Q_{k,r}).
LinearBound lemma23_coefficients(std::uint64_t k, unsigned r, const ExtremalTable& table);
/// alpha = phi(Q_{k,10+j})/(k Q_{k,10+j}), beta = 2^j B_{k,10} + omega(Q_{k,10}) + j.
LinearBound chained_coefficients(std::uint64_t k, unsigned j, const ExtremalTable& table);
/// Order r <= 10 uses the direct bound, r > 10 the chain from order 10.
LinearBound window_bound_coefficients(std::uint64_t k, unsigned r, const ExtremalTable& table);

IntervalReal lemma23_window_bound(std::uint64_t k, unsigned r, const Rational& y, const ExtremalTable& table);
IntervalReal chained_window_bound(std::uint64_t k, unsigned j, const Rational& y, const ExtremalTable& table);

}  // namespace btcert
