#pragma once

/// @file fft.hpp
/// @brief Minimal iterative radix-2 FFT plus the two integer-output
///        transforms built on it (self-correlation and convolution), each
///        with a strict rounding-residue check.
///
/// The transforms here always produce integers in exact arithmetic; the FFT
/// round-off must therefore stay far below 1/2. Any output farther than 0.25
/// from an integer is treated as a hard numerical failure rather than being
/// silently rounded.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace apset {

/// In-place iterative radix-2 transform. data.size() must be a power of two.
/// invert = true applies the inverse transform including the 1/N scaling.
inline void fft_radix2(std::vector<std::complex<double>>& data, bool invert) {
    const std::size_t n = data.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_radix2 requires a power-of-two length");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    const double pi = 3.14159265358979323846264338328;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * pi / static_cast<double>(len) * (invert ? -1.0 : 1.0);
        std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = data[i + k];
                std::complex<double> v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (invert) {
        for (auto& z : data) z /= static_cast<double>(n);
    }
}

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

/// Rounds v to the nearest integer, throwing if the residue exceeds 0.25.
inline std::uint64_t round_checked(double v, const char* what) {
    double r = std::round(v);
    if (std::abs(v - r) > 0.25)
        throw std::runtime_error(std::string(what) +
                                 ": transform output too far from an integer (precision failure)");
    if (r < 0.0) {
        // Exact arithmetic gives nonnegative counts; tiny negatives are
        // round-off around zero and were already caught by the residue test.
        r = 0.0;
    }
    return static_cast<std::uint64_t>(r);
}

/// c(h) = sum_m f(m) f(m+h) for h = 0 .. f.size()-1, where f is a 0/1
/// indicator array (index 0 included). Transform length is the next power of
/// two at or above 2*f.size(), which keeps the circular correlation free of
/// wrap-around.
inline std::vector<std::uint64_t> self_correlation_counts(const std::vector<double>& f) {
    const std::size_t m = f.size();
    if (m == 0) return {};
    const std::size_t len = next_pow2(2 * m);
    std::vector<std::complex<double>> buf(len, {0.0, 0.0});
    for (std::size_t i = 0; i < m; ++i) buf[i] = {f[i], 0.0};
    fft_radix2(buf, false);
    for (auto& z : buf) z = z * std::conj(z);
    fft_radix2(buf, true);
    std::vector<std::uint64_t> c(m);
    for (std::size_t h = 0; h < m; ++h)
        c[h] = round_checked(buf[h].real(), "self_correlation_counts");
    return c;
}

/// Ordinary (acyclic) convolution of two nonnegative integer-valued arrays,
/// rounded back to integers with the residue check.
inline std::vector<std::uint64_t> convolve_counts(const std::vector<double>& a,
                                                  const std::vector<double>& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t out_len = a.size() + b.size() - 1;
    const std::size_t len = next_pow2(out_len);
    std::vector<std::complex<double>> fa(len, {0.0, 0.0}), fb(len, {0.0, 0.0});
    for (std::size_t i = 0; i < a.size(); ++i) fa[i] = {a[i], 0.0};
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = {b[i], 0.0};
    fft_radix2(fa, false);
    fft_radix2(fb, false);
    for (std::size_t i = 0; i < len; ++i) fa[i] *= fb[i];
    fft_radix2(fa, true);
    std::vector<std::uint64_t> out(out_len);
    for (std::size_t i = 0; i < out_len; ++i)
        out[i] = round_checked(fa[i].real(), "convolve_counts");
    return out;
}

} // namespace apset
