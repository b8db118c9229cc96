#pragma once

/// @file spectrum.hpp
/// @brief Local densities in residue classes, arc coefficients and the
///        extremality sum, Fourier coefficients and spectrum scans, the
///        truncated trigonometric approximant, Besicovitch distance, and the
///        two multiplicative convergence series.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "expsum.hpp"
#include "frequency.hpp"
#include "generators.hpp"
#include "integer_set.hpp"
#include "numeric.hpp"

namespace apset {

/// Empirical densities within the residue classes mod q at truncation x:
/// values[b] = #{n <= x : n in A, n = b (mod q)} / x for b = 0 .. q-1.
/// Their sum is exactly the global density rho.
struct LocalDensityTable {
    std::uint64_t q = 1;
    std::uint64_t x = 0;
    double rho = 0.0;
    std::vector<double> values;

    double value_at(std::uint64_t residue) const { return values[residue % q]; }
};

inline LocalDensityTable local_densities(const IntegerSet& a, std::uint64_t q) {
    if (q == 0) throw std::invalid_argument("local_densities requires q >= 1");
    if (q > a.limit())
        throw std::invalid_argument("local_densities: q exceeds the truncation x");
    std::vector<std::uint64_t> counts(q, 0);
    a.for_each([&](std::uint64_t n) { ++counts[n % q]; });
    LocalDensityTable t;
    t.q = q;
    t.x = a.limit();
    t.rho = density(a);
    t.values.resize(q);
    for (std::uint64_t b = 0; b < q; ++b)
        t.values[b] = static_cast<double>(counts[b]) / static_cast<double>(a.limit());
    return t;
}

/// The transform of a local density table at a reduced residue a:
/// sum over b mod q of f(q, b) e(a b / q). Phases come from the exact
/// integer residue a*b mod q, never from accumulated angles.
inline std::complex<double> arc_coefficient(const LocalDensityTable& t, std::uint64_t a) {
    std::uint64_t ar = a % t.q;
    if (std::gcd(ar, t.q) != 1)
        throw std::invalid_argument("arc_coefficient requires gcd(a, q) = 1");
    NeumaierSum re, im;
    for (std::uint64_t b = 0; b < t.q; ++b) {
        std::complex<double> z = unit_phase_rational(ar * b % t.q, t.q);
        re.add(t.values[b] * z.real());
        im.add(t.values[b] * z.imag());
    }
    return {re.total(), im.total()};
}

/// One arc coefficient at center a/q (gcd(a, q) = 1, with a = 0 for q = 1).
struct ArcCoefficient {
    std::uint64_t q;
    std::uint64_t a;
    std::complex<double> value;
};

/// All arc coefficients with denominator up to Q, ordered by q then a.
/// x = 0 marks a theoretical (limit-density) table.
struct ArcCoefficientTable {
    std::uint64_t Q = 0;
    std::uint64_t x = 0;
    double rho = 0.0;
    std::vector<ArcCoefficient> entries;
};

/// Empirical coefficients from exact residue counts. Denominators are capped
/// at sqrt(x) so every residue class keeps a statistically meaningful count.
inline ArcCoefficientTable arc_coefficient_table(const IntegerSet& a, std::uint64_t Q) {
    if (Q == 0) throw std::invalid_argument("arc_coefficient_table requires Q >= 1");
    if (Q * Q > a.limit())
        throw std::invalid_argument("arc_coefficient_table: Q exceeds sqrt(x)");
    ArcCoefficientTable t;
    t.Q = Q;
    t.x = a.limit();
    t.rho = density(a);
    for (std::uint64_t q = 1; q <= Q; ++q) {
        LocalDensityTable loc = local_densities(a, q);
        for (std::uint64_t r = 1; r <= q; ++r) {
            if (std::gcd(r, q) != 1) continue;
            t.entries.push_back({q, r % q, arc_coefficient(loc, r % q)});
        }
    }
    return t;
}

/// Exact limiting arc coefficient of the k-free set at any reduced a/q:
/// the value of sum over d with q | d^k of mu(d)/d^k. Squarefree d forces
/// rad(q) | d and every exponent of q at most k; summing the remaining
/// series in closed form gives
///
///   mu(rad q) / ( rad(q)^k * prod_{p | q} (1 - p^{-k}) ) * 1/zeta(k)
///
/// and 0 whenever some exponent of q exceeds k.
inline double kfree_coefficient_oracle(unsigned k, std::uint64_t q) {
    if (k < 2) throw std::invalid_argument("kfree_coefficient_oracle requires k >= 2");
    if (q == 0) throw std::invalid_argument("kfree_coefficient_oracle requires q >= 1");
    std::uint64_t rad = 1;
    int mu = 1;
    double local = 1.0;
    std::uint64_t m = q;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        std::uint32_t e = 0;
        while (m % p == 0) { m /= p; ++e; }
        if (e > k) return 0.0;
        rad *= p;
        mu = -mu;
        local *= 1.0 - std::pow(static_cast<double>(p), -static_cast<double>(k));
    }
    if (m > 1) {                                     // leftover prime, exponent 1
        rad *= m;
        mu = -mu;
        local *= 1.0 - std::pow(static_cast<double>(m), -static_cast<double>(k));
    }
    double radk = std::pow(static_cast<double>(rad), static_cast<double>(k));
    return static_cast<double>(mu) / (radk * local * zeta_int(k));
}

/// Theoretical coefficient table for the k-free set: the oracle value is the
/// same real number at every reduced residue of a given denominator.
inline ArcCoefficientTable kfree_arc_coefficient_table(unsigned k, std::uint64_t Q) {
    if (Q == 0) throw std::invalid_argument("kfree_arc_coefficient_table requires Q >= 1");
    ArcCoefficientTable t;
    t.Q = Q;
    t.x = 0;
    t.rho = 1.0 / zeta_int(k);
    for (std::uint64_t q = 1; q <= Q; ++q) {
        double c = kfree_coefficient_oracle(k, q);
        for (std::uint64_t a = 1; a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            t.entries.push_back({q, a % q, {c, 0.0}});
        }
    }
    return t;
}

/// Partial sums of the extremality series
///   sum over q of sum over reduced a of |coef(q, a) / rho|^2,
/// reported per denominator together with the increments, since truncation
/// behavior is the measurable object. For an extremal set the partials climb
/// toward 1/rho; the gap at the truncation is partial.back() vs inv_rho.
struct ExtremalityProfile {
    std::uint64_t Q = 0;
    double inv_rho = 0.0;
    std::vector<double> partial;    // cumulative through denominator q = 1, 2, ...
    std::vector<double> increment;  // contribution of each denominator
};

inline ExtremalityProfile extremality_profile(const ArcCoefficientTable& t) {
    if (!(t.rho > 0.0))
        throw std::invalid_argument("extremality_profile requires positive density");
    ExtremalityProfile p;
    p.Q = t.Q;
    p.inv_rho = 1.0 / t.rho;
    p.increment.assign(static_cast<std::size_t>(t.Q), 0.0);
    for (const ArcCoefficient& e : t.entries) {
        double m = std::abs(e.value) / t.rho;
        p.increment[static_cast<std::size_t>(e.q) - 1] += m * m;
    }
    p.partial.resize(p.increment.size());
    NeumaierSum run;
    for (std::size_t i = 0; i < p.increment.size(); ++i) {
        run.add(p.increment[i]);
        p.partial[i] = run.total();
    }
    return p;
}

/// Final partial sum at denominator cutoff Q, from empirical densities.
inline double extremality_sum(const IntegerSet& a, std::uint64_t Q) {
    if (a.count() == 0)
        throw std::invalid_argument("extremality_sum requires positive density");
    return extremality_profile(arc_coefficient_table(a, Q)).partial.back();
}

inline ExtremalityProfile kfree_extremality_profile(unsigned k, std::uint64_t Q) {
    return extremality_profile(kfree_arc_coefficient_table(k, Q));
}

/// Finite-x estimate of the mean correlation <f, e_beta>:
/// (1/x) sum over members of e(-beta n). At beta = 0 this is the density.
inline std::complex<double> fourier_coefficient(const IntegerSet& a, double beta) {
    return std::conj(eval_s(a, beta)) / static_cast<double>(a.limit());
}

/// Same estimate, but a rational frequency is evaluated through exact
/// residue counts so its phases never accumulate floating error.
inline std::complex<double> fourier_coefficient(const IntegerSet& a, const Frequency& beta) {
    if (!beta.is_rational()) return fourier_coefficient(a, beta.value());
    std::uint64_t q = beta.den();
    std::uint64_t num = beta.num();
    LocalDensityTable t = local_densities(a, q);
    NeumaierSum re, im;
    for (std::uint64_t b = 0; b < q; ++b) {
        std::uint64_t r = num * b % q;               // e(-num b / q) = e((q - r)/q)
        std::complex<double> z = unit_phase_rational((q - r) % q, q);
        re.add(t.values[b] * z.real());
        im.add(t.values[b] * z.imag());
    }
    return {re.total(), im.total()};
}

struct SpectrumEntry {
    Frequency beta;
    std::complex<double> coefficient;
    double modulus;
};

/// Surviving entries of a candidate scan, sorted by modulus descending.
struct SpectrumEstimate {
    std::uint64_t x = 0;
    std::vector<SpectrumEntry> entries;
};

/// Evaluates the Fourier coefficient at each distinct candidate, keeps those
/// with modulus at or above the threshold, and enforces the Bessel bound:
/// the squared moduli over the distinct candidates may not exceed the
/// density (the L^2 mass of a 0/1 indicator) by more than 1e-3. A violation
/// means the candidate list aliases one true frequency many times, so it is
/// rejected rather than reported.
inline SpectrumEstimate spectrum_scan(const IntegerSet& a,
                                      const std::vector<Frequency>& candidates,
                                      double threshold) {
    if (!(threshold > 0.0))
        throw std::invalid_argument("spectrum_scan requires threshold > 0");
    std::vector<Frequency> distinct;
    distinct.reserve(candidates.size());
    for (const Frequency& c : candidates) {
        bool dup = false;
        for (const Frequency& d : distinct)
            if (same_frequency(c, d)) { dup = true; break; }
        if (!dup) distinct.push_back(c);
    }

    SpectrumEstimate est;
    est.x = a.limit();
    NeumaierSum mass;
    for (const Frequency& beta : distinct) {
        std::complex<double> coef = fourier_coefficient(a, beta);
        double mod = std::abs(coef);
        mass.add(mod * mod);
        if (mod >= threshold) est.entries.push_back({beta, coef, mod});
    }
    if (mass.total() > density(a) + 1e-3)
        throw std::runtime_error("spectrum_scan: Bessel bound violated (candidate list "
                                 "aliases a frequency)");
    std::sort(est.entries.begin(), est.entries.end(),
              [](const SpectrumEntry& l, const SpectrumEntry& r) {
                  if (l.modulus != r.modulus) return l.modulus > r.modulus;
                  return l.beta.value() < r.beta.value();
              });
    return est;
}

/// Finite trigonometric polynomial sum of coef * e(beta n). Coefficients are
/// stored exactly as estimated, so rebuilding a set's own truncated spectrum
/// reproduces constants without sign gymnastics.
struct TrigPolynomial {
    struct Term {
        Frequency beta;
        std::complex<double> coef;
    };
    std::vector<Term> terms;

    std::complex<double> evaluate(std::uint64_t n) const {
        std::complex<double> acc{0.0, 0.0};
        for (const Term& t : terms) {
            if (t.beta.is_rational()) {
                std::uint64_t r = t.beta.num() * (n % t.beta.den()) % t.beta.den();
                acc += t.coef * unit_phase_rational(r, t.beta.den());
            } else {
                acc += t.coef * unit_phase(frac_mul(t.beta.value(), n));
            }
        }
        return acc;
    }
};

/// The approximant with the Q largest-modulus spectral entries.
inline TrigPolynomial build_fq(const SpectrumEstimate& est, std::uint64_t Q) {
    if (est.entries.empty())
        throw std::invalid_argument("build_fq requires a nonempty spectrum estimate");
    if (Q == 0) throw std::invalid_argument("build_fq requires Q >= 1");
    TrigPolynomial g;
    std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(Q), est.entries.size());
    g.terms.reserve(take);
    for (std::size_t i = 0; i < take; ++i)
        g.terms.push_back({est.entries[i].beta, est.entries[i].coefficient});
    return g;
}

/// Quadratic-mean distance ((1/x) sum |f(n) - g(n)|^2)^(1/2) between the
/// set's indicator and a trigonometric polynomial at the set's truncation.
///
/// Rational terms step an integer residue per n (exact); irrational terms
/// advance a unit rotor that is resynchronized from the reduced fractional
/// part every 4096 steps, keeping drift near machine precision.
inline double besicovitch_distance(const IntegerSet& a, const TrigPolynomial& g) {
    const std::uint64_t x = a.limit();
    const std::size_t nt = g.terms.size();

    // Per-term iteration state.
    std::vector<std::vector<std::complex<double>>> table(nt); // rational phase tables
    std::vector<std::uint64_t> residue(nt, 0), step(nt, 0);
    std::vector<std::complex<double>> rotor(nt), rotor_step(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        const Frequency& b = g.terms[t].beta;
        if (b.is_rational()) {
            std::uint64_t q = b.den();
            table[t].resize(q);
            for (std::uint64_t r = 0; r < q; ++r)
                table[t][r] = unit_phase_rational(r, q);
            step[t] = b.num() % q;
            residue[t] = 0;                          // state for n = 0
        } else {
            rotor_step[t] = unit_phase(frac_mul(b.value(), 1));
        }
    }

    NeumaierSum acc;
    const auto& words = a.words();
    for (std::uint64_t n = 1; n <= x; ++n) {
        std::complex<double> gval{0.0, 0.0};
        for (std::size_t t = 0; t < nt; ++t) {
            if (!table[t].empty()) {
                residue[t] += step[t];
                if (residue[t] >= g.terms[t].beta.den()) residue[t] -= g.terms[t].beta.den();
                gval += g.terms[t].coef * table[t][residue[t]];
            } else {
                if ((n & 4095) == 1)
                    rotor[t] = unit_phase(frac_mul(g.terms[t].beta.value(), n));
                gval += g.terms[t].coef * rotor[t];
                rotor[t] *= rotor_step[t];
            }
        }
        double f = static_cast<double>((words[n >> 6] >> (n & 63)) & 1u);
        double dr = f - gval.real();
        double di = gval.imag();
        acc.add(dr * dr + di * di);
    }
    double mean = acc.total() / static_cast<double>(x);
    return mean > 0.0 ? std::sqrt(mean) : 0.0;
}

/// Partial sums over primes p <= P of the two convergence series attached to
/// a 0/1 multiplicative rule:
///   s1: sum (f(p) - 1)/p      s2: sum |f(p) - 1|^2 / p
/// For 0/1 rules each prime with f(p) = 0 contributes -1/p to s1 and +1/p to
/// s2. The last-decade fields hold the contribution of p in (P/10, P], a
/// direct read on whether the partials have settled.
struct WirsingSums {
    double s1 = 0.0;
    double s2 = 0.0;
    double s1_last_decade = 0.0;
    double s2_last_decade = 0.0;
    std::uint64_t prime_bound = 0;
};

inline WirsingSums wirsing_series(const MultiplicativeSpec& spec, std::uint64_t P) {
    if (P < 2) throw std::invalid_argument("wirsing_series requires P >= 2");
    if (!spec.rule) throw std::invalid_argument("wirsing_series: empty rule");
    WirsingSums w;
    w.prime_bound = P;
    NeumaierSum s1, s2, s1d, s2d;
    const double decade_lo = static_cast<double>(P) / 10.0;
    for (std::uint64_t p : sieve_primes(P)) {
        int fp = spec.rule(p, 1);
        if (fp != 0 && fp != 1)
            throw std::invalid_argument("wirsing_series: rule must be 0/1-valued");
        if (fp == 1) continue;
        double inv = 1.0 / static_cast<double>(p);
        s1.add(-inv);
        s2.add(inv);
        if (static_cast<double>(p) > decade_lo) {
            s1d.add(-inv);
            s2d.add(inv);
        }
    }
    w.s1 = s1.total();
    w.s2 = s2.total();
    w.s1_last_decade = s1d.total();
    w.s2_last_decade = s2d.total();
    return w;
}

} // namespace apset
