#pragma once

/// @file numeric.hpp
/// @brief Shared numeric kernels: exact integer square roots, accurately
///        reduced phases, compensated summation, and small arithmetic sieves.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

namespace apset {

/// Largest s with s*s <= v, computed purely in integer arithmetic.
/// Newton iteration on a floating-point seed, then corrected; the final
/// adjustment loop runs at most twice.
inline std::uint64_t isqrt_u64(std::uint64_t v) {
    if (v == 0) return 0;
    std::uint64_t s = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
    // The floating seed can be off by one in either direction near perfect
    // squares; settle it exactly with 128-bit products.
    while (static_cast<unsigned __int128>(s) * s > v) --s;
    while (static_cast<unsigned __int128>(s + 1) * (s + 1) <= v) ++s;
    return s;
}

/// Integer square root of a 128-bit value. Used where r * a * a may not fit
/// in 64 bits.
inline std::uint64_t isqrt_u128(unsigned __int128 v) {
    if (v == 0) return 0;
    std::uint64_t s;
    if (v <= static_cast<unsigned __int128>(UINT64_MAX)) {
        s = isqrt_u64(static_cast<std::uint64_t>(v));
    } else {
        // Seed from the top 64 bits and refine.
        s = isqrt_u64(static_cast<std::uint64_t>(v >> 64));
        s = (s << 32) + (1u << 16);
        for (int i = 0; i < 6; ++i) {
            std::uint64_t q = static_cast<std::uint64_t>(v / s);
            s = (s + q) / 2;
        }
    }
    while (static_cast<unsigned __int128>(s) * s > v) --s;
    while (static_cast<unsigned __int128>(s + 1) * (s + 1) <= v) ++s;
    return s;
}

/// Fractional part of theta * n in [0, 1), with the product corrected by an
/// fma two-product so the reduction is exact in the working precision.
/// Naive fmod(theta * n, 1.0) loses up to log2(n) bits for large n, which is
/// fatal when the result feeds sin/cos of 2*pi*frac.
inline double frac_mul(double theta, std::uint64_t n) {
    double nd = static_cast<double>(n);
    double p = theta * nd;
    double e = std::fma(theta, nd, -p);   // exact residual of the product
    double f = (p - std::floor(p)) + e;
    // e can push the sum out of [0, 1); renormalize once in each direction.
    if (f >= 1.0) f -= 1.0;
    if (f < 0.0) f += 1.0;
    return f;
}

/// e(t) = exp(2*pi*i*t) for t measured in turns, assumed already in [0, 1).
inline std::complex<double> unit_phase(double turns) {
    double a = 6.283185307179586476925286766559 * turns;
    return {std::cos(a), std::sin(a)};
}

/// e(num/den) with the angle formed from the reduced residue, so rational
/// phases never see a large trigonometric argument.
inline std::complex<double> unit_phase_rational(std::uint64_t num, std::uint64_t den) {
    return unit_phase(static_cast<double>(num % den) / static_cast<double>(den));
}

/// Neumaier's variant of compensated summation. Tracks a running error term
/// so that sums of ~10^6 mixed-sign doubles stay accurate to a few ulps.
class NeumaierSum {
public:
    void add(double v) {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double total() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Primes up to and including limit, by a plain Eratosthenes sieve.
inline std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
    std::vector<std::uint64_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> comp(limit + 1, false);
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (comp[p]) continue;
        primes.push_back(p);
        for (std::uint64_t m = p * p; m <= limit; m += p) comp[m] = true;
    }
    return primes;
}

/// Smallest-prime-factor table; spf[n] = least prime dividing n, spf[1] = 1.
inline std::vector<std::uint32_t> smallest_factor_table(std::uint32_t limit) {
    std::vector<std::uint32_t> spf(limit + 1, 0);
    if (limit >= 1) spf[1] = 1;
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (spf[i] != 0) continue;
        for (std::uint64_t m = i; m <= limit; m += i)
            if (spf[m] == 0) spf[m] = i;
    }
    return spf;
}

/// Moebius function on 1..limit via the smallest-factor table.
inline std::vector<std::int8_t> mobius_table(std::uint32_t limit) {
    auto spf = smallest_factor_table(limit);
    std::vector<std::int8_t> mu(limit + 1, 0);
    if (limit >= 1) mu[1] = 1;
    for (std::uint32_t n = 2; n <= limit; ++n) {
        std::uint32_t p = spf[n];
        std::uint32_t m = n / p;
        mu[n] = (m % p == 0) ? 0 : static_cast<std::int8_t>(-mu[m]);
    }
    return mu;
}

/// Euler's totient of a single argument by trial division.
inline std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t result = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

/// Distinct prime factors of n, ascending.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        ps.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

/// Largest exponent e such that some p^e exactly divides n, i.e. the maximum
/// over the prime factorization of n. max_prime_exponent(1) = 0.
inline std::uint32_t max_prime_exponent(std::uint64_t n) {
    std::uint32_t best = 0;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        std::uint32_t e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e > best) best = e;
    }
    if (n > 1 && best < 1) best = 1;
    return best;
}

/// Riemann zeta(k) for integer k >= 2 by Euler-Maclaurin: direct sum to N,
/// then tail corrections through the B_4 term. With N = 10^4 the truncation
/// error is below 1e-14 for every k >= 2.
inline double zeta_int(unsigned k) {
    if (k < 2) throw std::invalid_argument("zeta_int requires k >= 2");
    const double N = 1e4;
    NeumaierSum s;
    for (std::uint64_t n = 1; n < static_cast<std::uint64_t>(N); ++n)
        s.add(std::pow(static_cast<double>(n), -static_cast<double>(k)));
    double kk = static_cast<double>(k);
    double tail = std::pow(N, 1.0 - kk) / (kk - 1.0)
                + 0.5 * std::pow(N, -kk)
                + kk / 12.0 * std::pow(N, -kk - 1.0)
                - kk * (kk + 1.0) * (kk + 2.0) / 720.0 * std::pow(N, -kk - 3.0);
    s.add(tail);
    return s.total();
}

/// Deterministic parallel reduction over [0, n): the range is cut into
/// fixed-size blocks, each block is summed independently, and the block
/// partials are combined in index order with compensated addition. The block
/// grid depends only on block_size, never on the thread count, so the result
/// is bit-identical for any number of workers.
///
/// BlockFn: double(std::size_t lo, std::size_t hi) summing the half-open
/// index range [lo, hi).
template <typename BlockFn>
double blocked_sum(std::size_t n, std::size_t block_size, unsigned threads,
                   BlockFn&& block_fn) {
    if (block_size == 0) throw std::invalid_argument("block_size must be positive");
    std::size_t nblocks = (n + block_size - 1) / block_size;
    std::vector<double> partial(nblocks, 0.0);

    auto run = [&](std::size_t b0, std::size_t b1) {
        for (std::size_t b = b0; b < b1; ++b) {
            std::size_t lo = b * block_size;
            std::size_t hi = std::min(n, lo + block_size);
            partial[b] = block_fn(lo, hi);
        }
    };

    if (threads <= 1 || nblocks <= 1) {
        run(0, nblocks);
    } else {
        unsigned t = std::min<std::size_t>(threads, nblocks);
        std::vector<std::thread> pool;
        pool.reserve(t);
        // Contiguous block ranges per worker; ownership of partial[] slots is
        // disjoint so no synchronization is needed beyond join.
        std::size_t per = (nblocks + t - 1) / t;
        for (unsigned i = 0; i < t; ++i) {
            std::size_t b0 = std::min<std::size_t>(nblocks, i * per);
            std::size_t b1 = std::min<std::size_t>(nblocks, b0 + per);
            if (b0 < b1) pool.emplace_back(run, b0, b1);
        }
        for (auto& th : pool) th.join();
    }

    NeumaierSum total;
    for (double v : partial) total.add(v);
    return total.total();
}

} // namespace apset
