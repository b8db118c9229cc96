#pragma once

/// @file additive.hpp
/// @brief Exact binary representation counts r(n) = #{(a, b) : a + b = n}
///        and the circle-method main terms they are compared against.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "fft.hpp"
#include "integer_set.hpp"
#include "numeric.hpp"
#include "spectrum.hpp"

namespace apset {

/// r[n] for n = 0 .. limit_a + limit_b, counting ordered pairs. The row sum
/// equals count(A) * count(B) exactly.
struct RepCountTable {
    std::uint64_t limit_a = 0;
    std::uint64_t limit_b = 0;
    std::vector<std::uint64_t> r;
};

/// Transform size cap for the convolution path: beyond this the double-
/// precision round-off guarantee behind the 0.25 rounding guard thins out.
inline constexpr std::uint64_t kRepCountTransformCap = std::uint64_t(1) << 21;

/// Exact r(n) via FFT convolution of the indicators, rejected above the
/// transform cap (use rep_count_direct there).
inline RepCountTable rep_count(const IntegerSet& a, const IntegerSet& b) {
    const std::uint64_t xa = a.limit(), xb = b.limit();
    if (xa + xb + 1 > kRepCountTransformCap)
        throw std::invalid_argument("rep_count: combined limit exceeds the transform cap");
    std::vector<double> fa(static_cast<std::size_t>(xa) + 1, 0.0);
    std::vector<double> fb(static_cast<std::size_t>(xb) + 1, 0.0);
    a.for_each([&](std::uint64_t n) { fa[static_cast<std::size_t>(n)] = 1.0; });
    b.for_each([&](std::uint64_t n) { fb[static_cast<std::size_t>(n)] = 1.0; });
    RepCountTable t;
    t.limit_a = xa;
    t.limit_b = xb;
    t.r = convolve_counts(fa, fb);                   // length xa + xb + 1
    return t;
}

/// Bit-level fallback: r(n) is the overlap popcount of A with B reflected
/// about n. No floating point, any size; O((xa + xb) * xa / 64).
inline RepCountTable rep_count_direct(const IntegerSet& a, const IntegerSet& b) {
    const std::uint64_t xa = a.limit(), xb = b.limit();
    // Reflected copy of B: bit j set iff (xb - j) is a member.
    std::vector<std::uint64_t> rev(IntegerSet::word_count(xb), 0);
    b.for_each([&](std::uint64_t m) {
        std::uint64_t j = xb - m;
        rev[j >> 6] |= std::uint64_t(1) << (j & 63);
    });
    const auto& wa = a.words();

    // r(n) = sum_m A(m) B(n - m) = sum_m A(m) Brev(m + xb - n): a cross-
    // correlation of the A words against the reflected words at lag xb - n.
    auto correlate = [](const std::vector<std::uint64_t>& u,
                        const std::vector<std::uint64_t>& v,
                        std::uint64_t lag) -> std::uint64_t {
        // sum_i u(i) v(i + lag), lag >= 0.
        const std::size_t s = static_cast<std::size_t>(lag >> 6);
        const unsigned r = static_cast<unsigned>(lag & 63);
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j + s < v.size() && j < u.size(); ++j) {
            std::uint64_t w = v[j + s] >> r;
            if (r != 0 && j + s + 1 < v.size()) w |= v[j + s + 1] << (64 - r);
            acc += static_cast<std::uint64_t>(std::popcount(u[j] & w));
        }
        return acc;
    };

    RepCountTable t;
    t.limit_a = xa;
    t.limit_b = xb;
    t.r.assign(static_cast<std::size_t>(xa + xb) + 1, 0);
    for (std::uint64_t n = 0; n <= xa + xb; ++n) {
        if (n <= xb)
            t.r[static_cast<std::size_t>(n)] = correlate(wa, rev, xb - n);
        else
            t.r[static_cast<std::size_t>(n)] = correlate(rev, wa, n - xb);
    }
    return t;
}

/// Predicted main term for the Beatty pair: n / sqrt(6).
inline double beatty_main_term(std::uint64_t n) {
    return static_cast<double>(n) / std::sqrt(6.0);
}

/// Truncated singular-series main term with its imaginary residual. The
/// value is n * Re sum over arc centers a/q of coefA * coefB * e(-n a / q);
/// the imaginary part vanishes in the limit and is surfaced as a diagnostic
/// instead of being silently dropped.
struct MainTermValue {
    double value = 0.0;
    double imag_residual = 0.0;
};

inline MainTermValue rational_main_term(const ArcCoefficientTable& ta,
                                        const ArcCoefficientTable& tb, std::uint64_t n) {
    if (ta.Q != tb.Q || ta.entries.size() != tb.entries.size())
        throw std::invalid_argument("rational_main_term: coefficient tables disagree on Q");
    NeumaierSum re, im;
    for (std::size_t i = 0; i < ta.entries.size(); ++i) {
        const ArcCoefficient& ea = ta.entries[i];
        const ArcCoefficient& eb = tb.entries[i];
        if (ea.q != eb.q || ea.a != eb.a)
            throw std::invalid_argument("rational_main_term: coefficient tables misaligned");
        std::uint64_t r = (n % ea.q) * ea.a % ea.q;
        std::complex<double> z =
            ea.value * eb.value * unit_phase_rational((ea.q - r) % ea.q, ea.q);
        re.add(z.real());
        im.add(z.imag());
    }
    MainTermValue out;
    out.value = static_cast<double>(n) * re.total();
    out.imag_residual = static_cast<double>(n) * im.total();
    return out;
}

/// Ratio table r(n) / main(n) over a window, with summary statistics.
struct AsymptoticReport {
    struct Row {
        std::uint64_t n;
        std::uint64_t r;
        double main;
        double ratio;
    };
    std::vector<Row> rows;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
};

/// Windows stop at min(limit_a, limit_b): beyond that point the finite
/// truncations distort r(n) regardless of the underlying asymptotics.
inline AsymptoticReport asymptotic_report(const IntegerSet& a, const IntegerSet& b,
                                          const std::function<double(std::uint64_t)>& main_fn,
                                          std::uint64_t lo, std::uint64_t hi) {
    if (lo < 2 || lo > hi)
        throw std::invalid_argument("asymptotic_report: empty or invalid window");
    std::uint64_t cap = std::min(a.limit(), b.limit());
    if (hi > cap)
        throw std::invalid_argument("asymptotic_report: window extends past min(limit)");
    RepCountTable t = rep_count(a, b);
    AsymptoticReport rep;
    rep.rows.reserve(static_cast<std::size_t>(hi - lo + 1));
    NeumaierSum mean_acc;
    double mn = 0.0, mx = 0.0;
    bool first = true;
    for (std::uint64_t n = lo; n <= hi; ++n) {
        double main = main_fn(n);
        if (!(main > 0.0))
            throw std::domain_error("asymptotic_report: main term must be positive on the window");
        double ratio = static_cast<double>(t.r[static_cast<std::size_t>(n)]) / main;
        rep.rows.push_back({n, t.r[static_cast<std::size_t>(n)], main, ratio});
        mean_acc.add(ratio);
        if (first || ratio < mn) mn = ratio;
        if (first || ratio > mx) mx = ratio;
        first = false;
    }
    rep.mean = mean_acc.total() / static_cast<double>(hi - lo + 1);
    rep.min = mn;
    rep.max = mx;
    return rep;
}

} // namespace apset
