#pragma once

#include <cstdint>
#include <optional>

#include "btcert/legendre.hpp"
#include "btcert/parallel.hpp"
#include "btcert/report.hpp"
#include "btcert/tables.hpp"

namespace btcert {

/// Every remainder row of k (or of every k) against sup |E_k(t)| sqrt(t) on (z_i, t_max].
VerificationReport verify_table2(const TableSet& tables, std::uint64_t t_max, std::optional<std::uint64_t> k = {},
                                 const ScanOptions& options = {});

/// Exact comparison of period scans with the shipped A, B for rows with r <= r_max.
VerificationReport verify_table3(const TableSet& tables, unsigned r_max, const ScanOptions& options = {});

/// Recomputes (d1, d2); a row passes when each upper end, rounded up to four decimals,
/// is at most the printed value + 10^-4.
VerificationReport verify_table4(const TableSet& tables);

/// Every sieve row of k (or of every k), plus the crossover of the (1, 10) row near y = 381.
VerificationReport verify_table5(const TableSet& tables, const ExtremalTable& extremal,
                                 std::optional<std::uint64_t> k = {});

/// Crossover of the order-10 window bound against simple_bound for k = 1, xi = 0.8601,
/// certified to lie in [380, 382].
VerificationReport verify_threshold_381(const ExtremalTable& extremal);

}  // namespace btcert
