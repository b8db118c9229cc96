#pragma once

/// @file generators.hpp
/// @brief Deterministic generators for the studied set families: k-free
///        numbers, Beatty sequences, unions of residue classes, and general
///        0/1 multiplicative indicators.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "integer_set.hpp"
#include "numeric.hpp"

namespace apset {

/// A 0/1 multiplicative indicator, described by its values on prime powers.
/// rule(p, e) must return 0 or 1, with rule(p, 0) = 1 for every prime; the
/// induced f(n) is the product of rule over the prime powers exactly
/// dividing n.
struct MultiplicativeSpec {
    std::function<int(std::uint64_t p, std::uint32_t e)> rule;
    std::string name;
};

/// f(n) = 1 iff n is k-free, i.e. every prime exponent in n is below k.
inline MultiplicativeSpec k_free_spec(unsigned k) {
    if (k < 2) throw std::invalid_argument("k_free_spec requires k >= 2");
    return {[k](std::uint64_t, std::uint32_t e) { return e < k ? 1 : 0; },
            "kfree:" + std::to_string(k)};
}

inline MultiplicativeSpec all_ones_spec() {
    return {[](std::uint64_t, std::uint32_t) { return 1; }, "one"};
}

/// Kills every multiple of the given prime: f(p0^e) = 0 for e >= 1.
inline MultiplicativeSpec drop_prime_spec(std::uint64_t p0) {
    return {[p0](std::uint64_t p, std::uint32_t e) {
                return (p == p0 && e >= 1) ? 0 : 1;
            },
            "drop_prime:" + std::to_string(p0)};
}

/// f vanishes on multiples of any prime p <= bound.
inline MultiplicativeSpec drop_primes_below_spec(std::uint64_t bound) {
    return {[bound](std::uint64_t p, std::uint32_t e) {
                return (p <= bound && e >= 1) ? 0 : 1;
            },
            "drop_primes_below:" + std::to_string(bound)};
}

/// k-free numbers in [1, x]: membership(n) = 1 iff no p^k divides n.
/// Sieve over p^k <= x, clearing arithmetic progressions.
inline IntegerSet gen_kfree(unsigned k, std::uint64_t x) {
    if (k < 2) throw std::invalid_argument("gen_kfree requires k >= 2");
    if (x == 0) throw std::invalid_argument("gen_kfree requires x >= 1");
    std::vector<std::uint64_t> words(IntegerSet::word_count(x), ~std::uint64_t(0));
    // Start from the full set, clear bit 0 and the tail beyond x.
    words[0] &= ~std::uint64_t(1);
    std::uint32_t top_bits = static_cast<std::uint32_t>((x + 1) % 64);
    if (top_bits != 0) words.back() &= (std::uint64_t(1) << top_bits) - 1;

    // Largest integer whose k-th power stays within x; seed from pow and
    // settle with exact 128-bit power checks.
    auto pow_fits = [x, k](std::uint64_t b) {
        unsigned __int128 pw = 1;
        for (unsigned i = 0; i < k; ++i) {
            pw *= b;
            if (pw > x) return false;
        }
        return true;
    };
    std::uint64_t proot =
        static_cast<std::uint64_t>(std::pow(static_cast<double>(x), 1.0 / k)) + 2;
    while (proot > 1 && !pow_fits(proot)) --proot;

    for (std::uint64_t p : sieve_primes(proot)) {
        unsigned __int128 pk = 1;
        for (unsigned i = 0; i < k; ++i) pk *= p;
        if (pk > x) continue;
        for (std::uint64_t m = static_cast<std::uint64_t>(pk); m <= x;
             m += static_cast<std::uint64_t>(pk))
            words[m >> 6] &= ~(std::uint64_t(1) << (m & 63));
    }
    return IntegerSet(x, std::move(words));
}

/// Beatty set {floor(a * sqrt(r)) : a >= 1} intersected with [1, x].
/// floor(a * sqrt(r)) is the integer square root of r * a^2, evaluated in
/// 128-bit integer arithmetic; floating point never touches membership.
inline IntegerSet gen_beatty(std::uint64_t r, std::uint64_t x) {
    if (r < 2) throw std::invalid_argument("gen_beatty requires r >= 2");
    if (x == 0) throw std::invalid_argument("gen_beatty requires x >= 1");
    std::uint64_t s = isqrt_u64(r);
    if (s * s == r)
        throw std::invalid_argument("gen_beatty requires sqrt(r) irrational (r not a perfect square)");
    std::vector<std::uint64_t> words(IntegerSet::word_count(x), 0);
    for (std::uint64_t a = 1;; ++a) {
        unsigned __int128 ra2 = static_cast<unsigned __int128>(r) * a * a;
        std::uint64_t m = isqrt_u128(ra2);
        if (m > x) break;
        words[m >> 6] |= std::uint64_t(1) << (m & 63);
    }
    return IntegerSet(x, std::move(words));
}

/// Union of residue classes mod q, truncated to [1, x]. An empty residue
/// list is legal and yields the empty set.
inline IntegerSet gen_periodic(std::uint64_t q, const std::vector<std::uint64_t>& residues,
                               std::uint64_t x) {
    if (q == 0) throw std::invalid_argument("gen_periodic requires q >= 1");
    if (x == 0) throw std::invalid_argument("gen_periodic requires x >= 1");
    std::vector<bool> keep(q, false);
    for (std::uint64_t r : residues) {
        if (r >= q) throw std::invalid_argument("gen_periodic: residue outside [0, q)");
        keep[r] = true;
    }
    std::vector<std::uint64_t> words(IntegerSet::word_count(x), 0);
    for (std::uint64_t n = 1; n <= x; ++n)
        if (keep[n % q]) words[n >> 6] |= std::uint64_t(1) << (n & 63);
    return IntegerSet(x, std::move(words));
}

/// Membership by a multiplicative 0/1 rule, evaluated from each n's
/// factorization via a smallest-prime-factor table (O(log n) per element).
inline IntegerSet gen_multiplicative(const MultiplicativeSpec& spec, std::uint64_t x) {
    if (!spec.rule) throw std::invalid_argument("gen_multiplicative: empty rule");
    if (x == 0) throw std::invalid_argument("gen_multiplicative requires x >= 1");
    if (x > 0xFFFFFFFFull)
        throw std::invalid_argument("gen_multiplicative: x too large for the factor table");
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull})
        if (spec.rule(p, 0) != 1)
            throw std::invalid_argument("gen_multiplicative: rule(p, 0) must be 1");

    auto spf = smallest_factor_table(static_cast<std::uint32_t>(x));
    std::vector<std::uint64_t> words(IntegerSet::word_count(x), 0);
    words[1 >> 6] |= std::uint64_t(1) << 1;          // empty product: f(1) = 1
    for (std::uint64_t n = 2; n <= x; ++n) {
        std::uint64_t m = n;
        int value = 1;
        while (m > 1) {
            std::uint32_t p = spf[m];
            std::uint32_t e = 0;
            while (m % p == 0) { m /= p; ++e; }
            int v = spec.rule(p, e);
            if (v != 0 && v != 1)
                throw std::invalid_argument("gen_multiplicative: rule must be 0/1-valued");
            if (v == 0) { value = 0; break; }
        }
        if (value) words[n >> 6] |= std::uint64_t(1) << (n & 63);
    }
    return IntegerSet(x, std::move(words));
}

} // namespace apset
