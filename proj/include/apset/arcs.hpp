#pragma once

/// @file arcs.hpp
/// @brief Arc systems on the circle [0, 1): finite unions of disjoint
///        half-open arcs, always kept normalized, with the major-arc
///        constructors used throughout (Farey centers and prescribed
///        frequency sequences).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "frequency.hpp"
#include "numeric.hpp"

namespace apset {

/// Half-open arc [lo, hi) with 0 <= lo < hi <= 1.
struct Arc {
    double lo;
    double hi;
};

/// Endpoints closer than this are merged during normalization. Farey centers
/// at the scales studied are separated by at least 1/Q^2, far above it.
inline constexpr double kArcMergeTol = 1e-12;

/// A normalized finite union of arcs: sorted by lower endpoint, pairwise
/// disjoint, each inside [0, 1]. Construction normalizes; instances are
/// immutable afterwards.
class ArcSystem {
public:
    ArcSystem() = default;

    /// Accepts raw intervals whose endpoints may stick out of [0, 1)
    /// (e.g. center - halfwidth < 0); they are wrapped, split, sorted and
    /// merged. Intervals of length >= 1 become the full circle.
    explicit ArcSystem(const std::vector<Arc>& raw) {
        std::vector<Arc> pieces;
        pieces.reserve(raw.size() + 2);
        for (const Arc& a : raw) {
            if (!(a.hi > a.lo))
                throw std::invalid_argument("ArcSystem: arc with nonpositive length");
            if (a.hi - a.lo >= 1.0) {
                pieces.clear();
                pieces.push_back({0.0, 1.0});
                break;
            }
            double lo = a.lo - std::floor(a.lo);
            double hi = lo + (a.hi - a.lo);
            if (hi <= 1.0) {
                pieces.push_back({lo, hi});
            } else {                                  // wraps past 1: split
                pieces.push_back({lo, 1.0});
                pieces.push_back({0.0, hi - 1.0});
            }
        }
        std::sort(pieces.begin(), pieces.end(),
                  [](const Arc& a, const Arc& b) { return a.lo < b.lo; });
        for (const Arc& a : pieces) {
            if (!arcs_.empty() && a.lo <= arcs_.back().hi + kArcMergeTol)
                arcs_.back().hi = std::max(arcs_.back().hi, a.hi);
            else
                arcs_.push_back(a);
        }
    }

    const std::vector<Arc>& arcs() const { return arcs_; }
    bool empty() const { return arcs_.empty(); }
    std::size_t size() const { return arcs_.size(); }

    double measure() const {
        NeumaierSum s;
        for (const Arc& a : arcs_) s.add(a.hi - a.lo);
        return s.total();
    }

private:
    std::vector<Arc> arcs_;
};

/// The complementary arc system; measures add to 1 up to round-off.
inline ArcSystem complement(const ArcSystem& a) {
    std::vector<Arc> out;
    double cursor = 0.0;
    for (const Arc& arc : a.arcs()) {
        if (arc.lo > cursor + kArcMergeTol) out.push_back({cursor, arc.lo});
        cursor = arc.hi;
    }
    if (cursor < 1.0 - kArcMergeTol) out.push_back({cursor, 1.0});
    return ArcSystem(out);
}

/// Interval intersection of two normalized systems.
inline ArcSystem intersect_arcs(const ArcSystem& a, const ArcSystem& b) {
    std::vector<Arc> out;
    std::size_t i = 0, j = 0;
    const auto& u = a.arcs();
    const auto& v = b.arcs();
    while (i < u.size() && j < v.size()) {
        double lo = std::max(u[i].lo, v[j].lo);
        double hi = std::min(u[i].hi, v[j].hi);
        if (hi > lo) out.push_back({lo, hi});
        if (u[i].hi < v[j].hi) ++i; else ++j;
    }
    return ArcSystem(out);
}

/// Major arcs with Farey centers: the union over q <= Q, 1 <= a <= q with
/// gcd(a, q) = 1 of arcs of half-width Q/x around a/q (taken mod 1, so q = 1
/// contributes the arc around 0).
inline ArcSystem farey_major_arcs(std::uint64_t x, double Q) {
    if (x == 0) throw std::invalid_argument("farey_major_arcs requires x >= 1");
    if (Q < 1.0) throw std::invalid_argument("farey_major_arcs requires Q >= 1");
    double hw = Q / static_cast<double>(x);
    if (hw >= 0.5)
        throw std::invalid_argument("farey_major_arcs: Q/x >= 1/2 would cover the circle");
    std::vector<Arc> raw;
    std::uint64_t qmax = static_cast<std::uint64_t>(Q);
    for (std::uint64_t q = 1; q <= qmax; ++q) {
        for (std::uint64_t a = 1; a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            double center = static_cast<double>(a % q) / static_cast<double>(q);
            raw.push_back({center - hw, center + hw});
        }
    }
    return ArcSystem(raw);
}

/// Major arcs centered on the first floor(Q) entries of a prescribed
/// frequency sequence, each of half-width Q/x.
inline ArcSystem sequence_major_arcs(const std::vector<double>& alpha, std::uint64_t x,
                                     double Q) {
    if (x == 0) throw std::invalid_argument("sequence_major_arcs requires x >= 1");
    if (!(Q > 0.0)) throw std::invalid_argument("sequence_major_arcs requires Q > 0");
    std::size_t take = static_cast<std::size_t>(Q);
    if (alpha.size() < take)
        throw std::invalid_argument("sequence_major_arcs: frequency list shorter than floor(Q)");
    double hw = Q / static_cast<double>(x);
    std::vector<Arc> raw;
    raw.reserve(take);
    for (std::size_t i = 0; i < take; ++i) {
        double c = alpha[i] - std::floor(alpha[i]);
        raw.push_back({c - hw, c + hw});
    }
    return ArcSystem(raw);
}

/// Frequencies (k / sqrt(r)) mod 1 for |k| <= Q, ordered by |k| with the
/// positive k first at each magnitude, so truncating the list keeps the
/// dominant frequencies.
inline std::vector<double> beatty_spectrum(std::uint64_t r, double Q) {
    if (r < 2 || isqrt_u64(r) * isqrt_u64(r) == r)
        throw std::invalid_argument("beatty_spectrum requires r >= 2 with sqrt(r) irrational");
    if (Q < 0.0) throw std::invalid_argument("beatty_spectrum requires Q >= 0");
    double gamma = 1.0 / std::sqrt(static_cast<double>(r));
    std::vector<double> out;
    out.push_back(0.0);
    for (std::uint64_t k = 1; static_cast<double>(k) <= Q; ++k) {
        double f = frac_mul(gamma, k);
        out.push_back(f);
        out.push_back(f == 0.0 ? 0.0 : 1.0 - f);      // (-k * gamma) mod 1
    }
    return out;
}

/// Rational frequencies a/q for q <= Q, gcd(a, q) = 1, ordered by q then a;
/// the q = 1 entry is the zero frequency.
inline std::vector<Frequency> farey_frequencies(double Q) {
    if (Q < 1.0) throw std::invalid_argument("farey_frequencies requires Q >= 1");
    std::vector<Frequency> out;
    std::uint64_t qmax = static_cast<std::uint64_t>(Q);
    for (std::uint64_t q = 1; q <= qmax; ++q)
        for (std::uint64_t a = 1; a <= q; ++a)
            if (std::gcd(a, q) == 1) out.push_back(Frequency::rational(a % q, q));
    return out;
}

/// Audit/plot format: one "lo hi" pair per line, 17 significant digits.
inline void write_arcs_text(std::ostream& out, const ArcSystem& a) {
    char buf[64];
    for (const Arc& arc : a.arcs()) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", arc.lo, arc.hi);
        out << buf;
    }
}

} // namespace apset
