#pragma once

/// @file frequency.hpp
/// @brief Frequencies on the circle [0, 1). Rationals carry their reduced
///        numerator/denominator so equality is exact; irrationals compare by
///        circle distance with a 1e-12 tolerance.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace apset {

/// Distance on the circle R/Z between two points of [0, 1).
inline double circle_distance(double a, double b) {
    double d = std::abs(a - b);
    return std::min(d, 1.0 - d);
}

class Frequency {
public:
    /// a/q reduced mod 1 and to lowest terms.
    static Frequency rational(std::uint64_t a, std::uint64_t q) {
        if (q == 0) throw std::invalid_argument("Frequency: zero denominator");
        a %= q;
        std::uint64_t g = std::gcd(a, q);            // gcd(0, q) = q reduces 0/q to 0/1
        Frequency f;
        f.rational_ = true;
        f.num_ = a / g;
        f.den_ = q / g;
        f.value_ = static_cast<double>(f.num_) / static_cast<double>(f.den_);
        return f;
    }

    /// Arbitrary real frequency, reduced into [0, 1).
    static Frequency irrational(double beta) {
        double v = beta - std::floor(beta);
        if (v >= 1.0) v -= 1.0;
        if (!(v >= 0.0 && v < 1.0))
            throw std::invalid_argument("Frequency: value not reducible to [0, 1)");
        Frequency f;
        f.rational_ = false;
        f.num_ = 0;
        f.den_ = 0;
        f.value_ = v;
        return f;
    }

    bool is_rational() const { return rational_; }
    std::uint64_t num() const { return num_; }
    std::uint64_t den() const { return den_; }
    double value() const { return value_; }

private:
    bool rational_ = false;
    std::uint64_t num_ = 0;
    std::uint64_t den_ = 1;
    double value_ = 0.0;
};

/// Exact comparison for two rationals; otherwise circle distance < 1e-12.
inline bool same_frequency(const Frequency& a, const Frequency& b) {
    if (a.is_rational() && b.is_rational())
        return a.num() == b.num() && a.den() == b.den();
    return circle_distance(a.value(), b.value()) < 1e-12;
}

} // namespace apset
