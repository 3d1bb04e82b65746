#pragma once

// Drift-free enclosures of sums of 1/phi(q): each term is stored as
// [floor(2^96/phi), ceil(2^96/phi)] and summed exactly in 128-bit integers.

#include <cstdint>
#include <vector>

#include "btcert/detail/fast_interval.hpp"
#include "btcert/interval.hpp"

namespace btcert::detail {

using u128 = unsigned __int128;

constexpr int kFixedShift = 96;

struct FixedSum {
    u128 lo = 0;
    u128 hi = 0;

    void add_reciprocal(std::uint64_t phi) {
        const u128 one = u128(1) << kFixedShift;
        u128 q = one / phi;
        lo += q;
        hi += (q * phi == one) ? q : q + 1;
    }

    FastInterval fast() const;
    IntervalReal interval() const;
};

/// Streams w(n) = phi(n) for squarefree n coprime to k, 0 otherwise, over n in [first, last].
class CoprimeSquarefreeStream {
public:
    CoprimeSquarefreeStream(std::uint64_t k, std::uint64_t first, std::uint64_t last);

    std::uint64_t position() const { return next_; }
    bool done() const { return next_ > last_; }
    /// Weight of the current n, then advances.
    std::uint64_t next();

private:
    void refill();

    std::uint64_t k_;
    std::uint64_t next_;
    std::uint64_t last_;
    std::uint64_t block_lo_ = 0;
    std::vector<std::uint64_t> block_;
    std::vector<std::uint64_t> base_primes_;
    std::vector<std::uint64_t> k_primes_;
};

/// Fixed-point enclosure of sum_{q <= n} mu^2(q)/phi(q) over q coprime to k.
FixedSum prefix_plain_sum(std::uint64_t k, std::uint64_t n);

/// Enclosure of log n from a correctly rounded MPFR evaluation.
FastInterval log_enclosure(std::uint64_t n);

/// Enclosures of log n for consecutive n. Steps use
/// log(n+1) - log(n) = 2 atanh(1/(2n+1)) with a bounded series tail and
/// re-anchor on log_enclosure periodically so widths stay near a few ulps.
class LogStream {
public:
    explicit LogStream(std::uint64_t n) : n_(n), value_(log_enclosure(n)) {}
    std::uint64_t position() const { return n_; }
    FastInterval value() const { return value_; }
    void advance();

private:
    static constexpr unsigned kAnchorEvery = 512;
    std::uint64_t n_;
    FastInterval value_;
    unsigned since_anchor_ = 0;
};

}  // namespace btcert::detail
