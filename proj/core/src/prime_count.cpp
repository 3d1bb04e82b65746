#include "btcert/prime_count.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>
#include <stdexcept>
#include <vector>

#include "btcert/bounds.hpp"
#include "btcert/primes.hpp"

namespace btcert {
namespace {

constexpr std::uint64_t kSegment = 1u << 20;

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

/// Base primes shared across queries, grown on demand.
std::vector<std::uint64_t> base_primes(std::uint64_t bound) {
    static std::mutex mutex;
    static std::vector<std::uint64_t> cache;
    static std::uint64_t cached_bound = 0;
    std::lock_guard lock(mutex);
    if (bound > cached_bound) {
        cached_bound = std::max(bound, 2 * cached_bound);
        cache = primes_upto(cached_bound);
    }
    auto end = std::upper_bound(cache.begin(), cache.end(), bound);
    return {cache.begin(), end};
}

}  // namespace

std::uint64_t pi_ap(const ApWindowQuery& q, std::uint64_t limit) {
    if (q.k == 0) throw std::invalid_argument("pi_ap: modulus must be positive");
    std::uint64_t a = q.a % q.k;
    if (gcd(q.k, a) != 1) throw std::invalid_argument("pi_ap: gcd(k, a) must be 1");
    if (q.y > limit || q.x > limit - q.y) throw std::out_of_range("pi_ap: x + y exceeds the range guard");
    std::uint64_t lo = q.x + 1, hi = q.x + q.y;
    if (q.y == 0 || hi < 2) return 0;
    lo = std::max<std::uint64_t>(lo, 2);
    auto primes = base_primes(isqrt(hi));

    std::uint64_t count = 0;
    std::vector<std::uint8_t> composite(kSegment);
    for (std::uint64_t start = lo; start <= hi; start += kSegment) {
        std::uint64_t end = std::min(hi, start + kSegment - 1);
        std::fill(composite.begin(), composite.begin() + (end - start + 1), 0);
        for (auto p : primes) {
            if (p * p > end) break;
            std::uint64_t first = std::max(p * p, (start + p - 1) / p * p);
            for (std::uint64_t m = first; m <= end; m += p) composite[m - start] = 1;
        }
        std::uint64_t n = start + (a + q.k - start % q.k) % q.k;
        for (; n <= end; n += q.k)
            if (!composite[n - start]) ++count;
    }
    return count;
}

VerificationReport spot_check(std::uint64_t k, const Rational& xi, std::uint64_t trials,
                              const SpotCheckOptions& options) {
    if (trials == 0) throw std::invalid_argument("spot_check: trials must be at least 1");
    if (k == 0 || options.y_max <= k) throw std::invalid_argument("spot_check: need y_max > k >= 1");
    VerificationReport report("spotcheck");
    ScopedTimer timer(report);
    report.parameters = {{"k", k},           {"xi", xi.str()},           {"trials", trials},
                         {"seed", options.seed}, {"x_max", options.x_max}, {"y_max", options.y_max}};

    std::vector<std::uint64_t> residues;
    for (std::uint64_t a = 0; a < k; ++a)
        if (gcd(k, a) == 1) residues.push_back(a);
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::uint64_t> pick_x(0, options.x_max);
    std::uniform_int_distribution<std::uint64_t> pick_y(k + 1, options.y_max);
    std::uniform_int_distribution<std::size_t> pick_a(0, residues.size() - 1);
    std::vector<ApWindowQuery> queries(trials);
    for (auto& query : queries) {
        query.x = pick_x(rng);
        query.y = pick_y(rng);
        query.k = k;
        query.a = residues[pick_a(rng)];
    }

    struct Outcome {
        std::uint64_t count = 0;
        Status simple = Status::verified;
        Status thm11 = Status::verified;
        bool thm11_applies = false;
        double slack = 0;
    };
    std::vector<Outcome> outcomes(trials);
    parallel_for(trials, options.scan.jobs, [&](std::size_t i) {
        const auto& query = queries[i];
        Outcome out;
        out.count = pi_ap(query);
        IntervalReal c(Rational(static_cast<unsigned long long>(out.count)));
        Rational y(static_cast<unsigned long long>(query.y));
        IntervalReal bound = simple_bound(k, y, xi);
        out.slack = bound.lower() - static_cast<double>(out.count);
        if (!certainly_less(c, bound)) out.simple = certainly_le(bound, c) ? Status::failed : Status::inconclusive;
        if (auto t = thm11_bound(k, y)) {
            out.thm11_applies = true;
            if (!certainly_le(c, *t)) out.thm11 = certainly_less(*t, c) ? Status::failed : Status::inconclusive;
        }
        outcomes[i] = out;
    });

    std::uint64_t violations = 0, applicable = 0;
    std::size_t tightest = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        const auto& out = outcomes[i];
        const auto& query = queries[i];
        applicable += out.thm11_applies ? 1 : 0;
        if (out.slack < outcomes[tightest].slack) tightest = i;
        for (auto [status, which] : {std::pair{out.simple, "simple_bound"}, std::pair{out.thm11, "thm11_bound"}}) {
            if (status == Status::verified) continue;
            report.demote(status);
            if (status == Status::failed) ++violations;
            report.witnesses.push_back({{"kind", "violation"},
                                        {"bound", which},
                                        {"status", to_string(status)},
                                        {"x", query.x},
                                        {"y", query.y},
                                        {"a", query.a},
                                        {"count", out.count}});
        }
    }
    const auto& tq = queries[tightest];
    report.witnesses.push_back({{"kind", "tightest"},
                                {"x", tq.x},
                                {"y", tq.y},
                                {"a", tq.a},
                                {"count", outcomes[tightest].count},
                                {"slack", outcomes[tightest].slack}});
    report.witnesses.push_back({{"kind", "summary"}, {"violations", violations}, {"thm11_applicable", applicable}});
    return report;
}

}  // namespace btcert
