#pragma once

/// @file expsum.hpp
/// @brief The exponential sum S(theta) over a set, its autocorrelation, and
///        the exact closed-form evaluation of arc-restricted energy
///        integral(|S|^2) over an arc system.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "arcs.hpp"
#include "fft.hpp"
#include "integer_set.hpp"
#include "numeric.hpp"

namespace apset {

/// S(theta) = sum over members n of e(theta * n), with compensated real and
/// imaginary accumulation. Each phase is formed from the exactly reduced
/// fractional part of theta * n, so large n costs no trigonometric accuracy.
inline std::complex<double> eval_s(const IntegerSet& a, double theta) {
    NeumaierSum re, im;
    a.for_each([&](std::uint64_t n) {
        std::complex<double> z = unit_phase(frac_mul(theta, n));
        re.add(z.real());
        im.add(z.imag());
    });
    return {re.total(), im.total()};
}

/// c(h) = #{(m, n) in A^2 : m - n = h} for h = 0 .. x-1. c(0) is the element
/// count; every c(h) is a nonnegative integer bounded by c(0).
struct Autocorrelation {
    std::uint64_t x = 0;
    std::vector<std::uint64_t> c;
};

/// Exact c(h) by shifting the membership words h bits down and counting
/// overlaps: c(h) = popcount(bits AND (bits >> h)). O(x^2 / 64) but free of
/// floating point, serving as oracle and as the large-x fallback.
inline Autocorrelation autocorrelation_direct(const IntegerSet& a) {
    const std::uint64_t x = a.limit();
    const auto& w = a.words();
    const std::size_t nw = w.size();
    Autocorrelation out;
    out.x = x;
    out.c.assign(static_cast<std::size_t>(x), 0);
    out.c[0] = a.count();
    for (std::uint64_t h = 1; h < x; ++h) {
        const std::size_t s = static_cast<std::size_t>(h >> 6);
        const unsigned r = static_cast<unsigned>(h & 63);
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j + s < nw; ++j) {
            std::uint64_t hi = w[j + s] >> r;
            if (r != 0 && j + s + 1 < nw) hi |= w[j + s + 1] << (64 - r);
            acc += static_cast<std::uint64_t>(std::popcount(w[j] & hi));
        }
        out.c[static_cast<std::size_t>(h)] = acc;
    }
    return out;
}

/// c(h) for all h via FFT self-correlation of the indicator. Restricted to
/// x <= 2^20 where the transform round-off stays far below the 0.25 integer
/// rounding guard.
inline Autocorrelation autocorrelation_fft(const IntegerSet& a) {
    const std::uint64_t x = a.limit();
    if (x > (std::uint64_t(1) << 20))
        throw std::invalid_argument("autocorrelation_fft: x exceeds 2^20, use the direct method");
    std::vector<double> f(static_cast<std::size_t>(x) + 1, 0.0);
    a.for_each([&](std::uint64_t n) { f[static_cast<std::size_t>(n)] = 1.0; });
    std::vector<std::uint64_t> counts = self_correlation_counts(f);
    Autocorrelation out;
    out.x = x;
    counts.resize(static_cast<std::size_t>(x));     // lags 0 .. x-1
    out.c = std::move(counts);
    return out;
}

/// Preferred entry point: transform path up to 2^20, exact bit method beyond.
/// Small inputs (x <= 2^14) run both and cross-check, which is cheap there.
inline Autocorrelation autocorrelation(const IntegerSet& a) {
    if (a.limit() > (std::uint64_t(1) << 20)) return autocorrelation_direct(a);
    Autocorrelation fast = autocorrelation_fft(a);
    if (a.limit() <= (std::uint64_t(1) << 14)) {
        Autocorrelation exact = autocorrelation_direct(a);
        if (fast.c != exact.c)
            throw std::runtime_error("autocorrelation: transform disagrees with the exact bit method");
    }
    return fast;
}

namespace detail {

/// Rotor bank for one circle point u: iterates z_h = e(u * h) by repeated
/// multiplication with e(u), resynchronized from the exactly reduced phase
/// every kResync steps to stop drift.
inline constexpr std::uint64_t kEnergyResync = 4096;
inline constexpr std::uint64_t kEnergyBlock = 8192;

inline void validate_normalized(const ArcSystem& sys) {
    double prev_hi = 0.0;
    for (const Arc& a : sys.arcs()) {
        if (!(a.lo >= 0.0) || !(a.hi <= 1.0) || !(a.hi > a.lo) || a.lo < prev_hi)
            throw std::invalid_argument("energy_on_arcs: arc system is not normalized");
        prev_hi = a.hi;
    }
}

} // namespace detail

/// integral over the arc system of |S(theta)|^2 d(theta), evaluated in
/// closed form from the autocorrelation:
///
///   E = c(0) * measure + sum_{h >= 1} c(h)/(pi h) *
///         sum_arcs [ sin(2 pi {hi h}) - sin(2 pi {lo h}) ]
///
/// which is the termwise-integrated Fourier expansion of |S|^2; the only
/// error is floating round-off. Over the full circle every sine vanishes
/// identically (the fractional parts are computed exactly), making Parseval
/// exact. The h-sum is split into fixed blocks and reduced in block order,
/// so results are bit-identical for every thread count.
inline double energy_on_arcs(const Autocorrelation& corr, const ArcSystem& sys,
                             unsigned threads = 1) {
    detail::validate_normalized(sys);
    if (corr.x == 0 || corr.c.empty())
        throw std::invalid_argument("energy_on_arcs: empty autocorrelation");
    const double c0 = static_cast<double>(corr.c[0]);
    if (sys.empty() || corr.c[0] == 0) return sys.measure() * c0;

    const std::size_t narcs = sys.size();
    std::vector<double> endpoint(2 * narcs);
    for (std::size_t i = 0; i < narcs; ++i) {
        endpoint[2 * i] = sys.arcs()[i].lo;
        endpoint[2 * i + 1] = sys.arcs()[i].hi;
    }

    const std::uint64_t hmax = corr.x;               // lags run 1 .. x-1
    const double pi = 3.14159265358979323846264338328;

    auto block_fn = [&](std::size_t lo, std::size_t hi) -> double {
        // Lags h = lo+1 .. hi (block index space is shifted by one so the
        // blocked range [0, x-1) covers h >= 1).
        std::vector<std::complex<double>> rot(2 * narcs), step(2 * narcs);
        NeumaierSum acc;
        std::uint64_t since_sync = detail::kEnergyResync; // force initial sync
        for (std::size_t idx = lo; idx < hi; ++idx) {
            const std::uint64_t h = static_cast<std::uint64_t>(idx) + 1;
            if (since_sync >= detail::kEnergyResync) {
                for (std::size_t e = 0; e < endpoint.size(); ++e) {
                    rot[e] = unit_phase(frac_mul(endpoint[e], h));
                    step[e] = unit_phase(frac_mul(endpoint[e], 1));
                }
                since_sync = 0;
            }
            const std::uint64_t ch = corr.c[static_cast<std::size_t>(h)];
            if (ch != 0) {
                double arcsum = 0.0;
                for (std::size_t i = 0; i < narcs; ++i)
                    arcsum += rot[2 * i + 1].imag() - rot[2 * i].imag();
                acc.add(static_cast<double>(ch) / (pi * static_cast<double>(h)) * arcsum);
            }
            for (std::size_t e = 0; e < endpoint.size(); ++e) rot[e] *= step[e];
            ++since_sync;
        }
        return acc.total();
    };

    double tail = blocked_sum(static_cast<std::size_t>(hmax - 1),
                              static_cast<std::size_t>(detail::kEnergyBlock), threads,
                              block_fn);
    double energy = c0 * sys.measure() + tail;

    // Parseval bounds the energy over any sub-system by c(0); beyond a small
    // round-off allowance that signals a numerical defect, while tiny
    // negative values are ordinary cancellation noise and clamp to zero.
    const double upper = c0 * (1.0 + 1e-9) + 1e-9;
    if (energy > upper)
        throw std::runtime_error("energy_on_arcs: result exceeds the Parseval bound");
    if (energy < 0.0) {
        if (energy < -1e-6 * (c0 + 1.0))
            throw std::runtime_error("energy_on_arcs: result is negative beyond round-off");
        energy = 0.0;
    }
    return energy;
}

/// Minor-arc energy fraction: energy over the complement of the given major
/// arcs, divided by x. Values lie in [0, count/x].
inline double minor_arc_ratio(const Autocorrelation& corr, const ArcSystem& major,
                              unsigned threads = 1) {
    return energy_on_arcs(corr, complement(major), threads) / static_cast<double>(corr.x);
}

inline double minor_arc_ratio(const IntegerSet& a, const ArcSystem& major,
                              unsigned threads = 1) {
    return minor_arc_ratio(autocorrelation(a), major, threads);
}

} // namespace apset
