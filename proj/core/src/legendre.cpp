#include "btcert/legendre.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "btcert/primes.hpp"

namespace btcert {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

std::uint64_t normalize_residue(std::int64_t a, std::uint64_t k) {
    auto m = static_cast<std::int64_t>(k);
    return static_cast<std::uint64_t>(((a % m) + m) % m);
}

std::uint64_t floor_u64(const Rational& z) {
    if (z.sign() < 0) throw std::domain_error("sieve count: z must be nonnegative");
    return to_u64(z.floor());
}

/// Inverse of a modulo m (gcd(a, m) = 1, m >= 1).
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
    if (m == 1) return 0;
    i128 t = 0, new_t = 1;
    i128 r = m, new_r = a % m;
    while (new_r != 0) {
        i128 q = r / new_r;
        std::swap(t, new_t);
        new_t -= q * t;
        std::swap(r, new_r);
        new_r -= q * r;
    }
    if (t < 0) t += m;
    return static_cast<std::uint64_t>(t);
}

BigInt big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

BigInt totient_of_squarefree(const BigInt& q) {
    BigInt phi = 1, rest = q;
    for (unsigned long p = 2; rest > 1; ++p) {
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            phi *= p - 1;
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        }
    }
    return phi;
}

constexpr std::size_t kSegment = std::size_t(1) << 20;

struct Extremes {
    i128 min = std::numeric_limits<i128>::max();
    i128 max = std::numeric_limits<i128>::min();
    std::uint64_t argmin = 0;
    std::uint64_t argmax = 0;

    void offer(i128 d, std::uint64_t n) {
        if (d < min) { min = d; argmin = n; }
        if (d > max) { max = d; argmax = n; }
    }
    void merge(const Extremes& o) {
        if (o.min < min || (o.min == min && o.argmin < argmin)) { min = o.min; argmin = o.argmin; }
        if (o.max > max || (o.max == max && o.argmax < argmax)) { max = o.max; argmax = o.argmax; }
    }
};

}  // namespace

std::uint64_t sieve_count(const Rational& z, std::uint64_t k, std::int64_t a, std::uint64_t Q) {
    if (k == 0 || Q == 0) throw std::invalid_argument("sieve_count: k and Q must be positive");
    if (!is_squarefree(Q)) throw std::invalid_argument("sieve_count: Q must be squarefree");
    const std::uint64_t Z = floor_u64(z);
    const std::uint64_t res = normalize_residue(a, k);
    const auto primes = prime_divisors(Q);
    const std::size_t subsets = std::size_t(1) << primes.size();

    i128 total = 0;
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        u128 d = 1;
        int sign = 1;
        for (std::size_t b = 0; b < primes.size(); ++b)
            if (mask >> b & 1) {
                d *= primes[b];
                sign = -sign;
            }
        // n = res (mod k) and n = 0 (mod d): solvable iff g | res, then unique mod lcm(k, d).
        std::uint64_t g = std::gcd<std::uint64_t>(static_cast<std::uint64_t>(d % k), k);
        if (g == 0) g = k;
        if (res % g != 0) continue;
        std::uint64_t kg = k / g;
        std::uint64_t t0 = kg == 1 ? 0
                                   : static_cast<std::uint64_t>(
                                         (u128(res / g) * inverse_mod(static_cast<std::uint64_t>((d / g) % kg), kg)) % kg);
        u128 L = d * kg;
        u128 n0 = d * t0;
        u128 count;
        if (n0 == 0)
            count = Z / L;
        else
            count = Z >= n0 ? (Z - n0) / L + 1 : 0;
        total += sign * static_cast<i128>(count);
    }
    return static_cast<std::uint64_t>(total);
}

std::uint64_t sieve_count_oracle(const Rational& z, std::uint64_t k, std::int64_t a, std::uint64_t Q) {
    const std::uint64_t Z = floor_u64(z);
    if (Z > 1'000'000) throw std::out_of_range("sieve_count_oracle: z must be at most 1e6");
    const std::uint64_t res = normalize_residue(a, k);
    std::uint64_t count = 0;
    for (std::uint64_t n = 1; n <= Z; ++n)
        if (n % k == res && std::gcd(n, Q) == 1) ++count;
    return count;
}

ExtremalConstants extremal_constants(std::uint64_t k, unsigned r, const ScanOptions& options) {
    if (r < 1) throw std::invalid_argument("extremal_constants: r must be at least 1");
    const BigInt wheel = coprime_part(r, k);
    const std::uint64_t Q = to_u64(wheel);
    const auto primes = prime_divisors(Q);
    std::uint64_t phi = 1;
    for (auto p : primes) phi *= p - 1;

    // D(N) * Q = count(N) * Q - phi * N, tracked in 128-bit integers over N in [0, Q).
    const std::size_t segments = static_cast<std::size_t>((Q + kSegment - 1) / kSegment);
    std::vector<Extremes> parts(segments);
    parallel_for(segments, std::max(1u, options.jobs), [&](std::size_t s) {
        const std::uint64_t lo = s * kSegment;
        const std::uint64_t hi = std::min<std::uint64_t>(Q, lo + kSegment);
        std::vector<std::uint8_t> coprime(hi - lo, 1);
        for (auto p : primes)
            for (std::uint64_t m = (lo + p - 1) / p * p; m < hi; m += p) coprime[m - lo] = 0;
        Extremes e;
        std::uint64_t first = lo;
        i128 d = 0;
        if (lo == 0) {
            e.offer(0, 0);
            first = 1;
        } else {
            std::uint64_t before = sieve_count(Rational(static_cast<unsigned long long>(lo - 1)), 1, 0, Q);
            d = static_cast<i128>(before) * Q - static_cast<i128>(phi) * (lo - 1);
        }
        const i128 step_q = Q;
        const i128 step_phi = phi;
        for (std::uint64_t n = first; n < hi; ++n) {
            d += (coprime[n - lo] ? step_q : 0) - step_phi;
            e.offer(d, n);
        }
        parts[s] = e;
        if (options.progress && s % 256 == 0)
            options.progress("extremal scan k=" + std::to_string(k) + " r=" + std::to_string(r) + " segment " +
                             std::to_string(s + 1) + "/" + std::to_string(segments));
    });
    Extremes all;
    for (const auto& p : parts) all.merge(p);

    auto to_big = [](i128 v) {
        bool neg = v < 0;
        u128 m = neg ? static_cast<u128>(-v) : static_cast<u128>(v);
        BigInt out = (BigInt(static_cast<unsigned long>(static_cast<std::uint64_t>(m >> 64))) << 64) +
                     BigInt(static_cast<unsigned long>(static_cast<std::uint64_t>(m)));
        return neg ? BigInt(-out) : out;
    };
    ExtremalConstants out;
    out.k = k;
    out.r = r;
    out.wheel = wheel;
    out.a_const = Rational(to_big(all.min) - big(phi), wheel);
    out.b_const = Rational(to_big(all.max) - to_big(all.min) + big(phi), wheel);
    out.argmin_n = all.argmin;
    out.argmax_n = all.argmax;
    out.source = "scan";
    return out;
}

std::uint64_t window_count_max(std::uint64_t k, std::int64_t a, std::uint64_t Q, const Rational& y,
                               std::uint64_t period_cap) {
    if (k == 0 || Q == 0) throw std::invalid_argument("window_count_max: k and Q must be positive");
    if (std::gcd(k, Q) != 1) throw std::invalid_argument("window_count_max: Q must be coprime to k");
    if (u128(k) * Q > period_cap) throw std::length_error("window_count_max: period k*Q exceeds the cap");
    if (y.sign() <= 0) return 0;

    // Terms n = res + k m; a window of length y holds indices m_i..m_i + L with L = ceil(y/k) - 1.
    const std::uint64_t res = normalize_residue(a, k);
    const BigInt span = (y / Rational(static_cast<unsigned long long>(k))).ceil();
    const BigInt length = span;  // L + 1 consecutive indices
    const auto primes = prime_divisors(Q);
    std::uint64_t phi = 1;
    for (auto p : primes) phi *= p - 1;

    BigInt full_periods = length / big(Q);
    std::uint64_t rem = to_u64(BigInt(length - full_periods * big(Q)));

    std::vector<std::uint8_t> admissible(Q, 1);
    for (auto p : primes) {
        // res + k m = 0 (mod p)  <=>  m = -res * k^{-1} (mod p)
        std::uint64_t m0 = (p - res % p) % p * inverse_mod(k % p, p) % p;
        for (std::uint64_t m = m0; m < Q; m += p) admissible[m] = 0;
    }
    std::uint64_t best = 0;
    if (rem > 0) {
        std::uint64_t current = 0;
        for (std::uint64_t m = 0; m < rem; ++m) current += admissible[m];
        best = current;
        for (std::uint64_t s = 1; s < Q; ++s) {
            current += admissible[(s + rem - 1) % Q];
            current -= admissible[s - 1];
            best = std::max(best, current);
        }
    }
    return to_u64(BigInt(full_periods * big(phi) + big(best)));
}

ExtremalTable::ExtremalTable(std::vector<ExtremalRow> shipped, unsigned scan_up_to, ScanOptions options)
    : shipped_(std::move(shipped)), scan_up_to_(scan_up_to), options_(std::move(options)) {}

ExtremalConstants ExtremalTable::get(std::uint64_t k, unsigned r) const {
    const BigInt wheel = coprime_part(r, k);
    const std::string key = wheel.get_str() + "/" + std::to_string(r);
    {
        std::lock_guard lock(mutex_);
        if (auto it = cache_.find(key); it != cache_.end()) {
            ExtremalConstants c = it->second;
            c.k = k;
            return c;
        }
    }
    ExtremalConstants c;
    if (r <= scan_up_to_) {
        c = extremal_constants(k, r, options_);
    } else {
        auto it = std::find_if(shipped_.begin(), shipped_.end(), [&](const ExtremalRow& row) {
            return row.r == r && coprime_part(r, row.k) == wheel;
        });
        if (it == shipped_.end())
            throw std::out_of_range("no extremal constants for k=" + std::to_string(k) + " r=" + std::to_string(r));
        c.k = k;
        c.r = r;
        c.wheel = wheel;
        c.a_const = it->a_const;
        c.b_const = it->b_const;
        c.source = "table";
    }
    std::lock_guard lock(mutex_);
    cache_.emplace(key, c);
    return c;
}

LinearBound lemma23_coefficients(std::uint64_t k, unsigned r, const ExtremalTable& table) {
    const BigInt Q = coprime_part(r, k);
    ExtremalConstants c = table.get(k, r);
    return {Rational(totient_of_squarefree(Q), big(k) * Q), c.b_const + Rational(static_cast<long long>(omega(Q)))};
}

LinearBound chained_coefficients(std::uint64_t k, unsigned j, const ExtremalTable& table) {
    if (j < 1) throw std::invalid_argument("chained_coefficients: j must be at least 1");
    for (unsigned i = 11; i <= 10 + j; ++i)
        if (k % nth_prime(i) == 0)
            throw std::domain_error("chained prime " + std::to_string(nth_prime(i)) + " divides k");
    const BigInt Q = coprime_part(10 + j, k);
    const BigInt Q10 = coprime_part(10, k);
    ExtremalConstants c = table.get(k, 10);
    Rational doubling(BigInt(BigInt(1) << j));
    return {Rational(totient_of_squarefree(Q), big(k) * Q),
            doubling * c.b_const + Rational(static_cast<long long>(omega(Q10) + j))};
}

LinearBound window_bound_coefficients(std::uint64_t k, unsigned r, const ExtremalTable& table) {
    return r <= 10 ? lemma23_coefficients(k, r, table) : chained_coefficients(k, r - 10, table);
}

IntervalReal lemma23_window_bound(std::uint64_t k, unsigned r, const Rational& y, const ExtremalTable& table) {
    return IntervalReal(lemma23_coefficients(k, r, table).at(y));
}

IntervalReal chained_window_bound(std::uint64_t k, unsigned j, const Rational& y, const ExtremalTable& table) {
    return IntervalReal(chained_coefficients(k, j, table).at(y));
}

}  // namespace btcert
