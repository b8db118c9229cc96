#include <catch2/catch_amalgamated.hpp>

#include <apset/expsum.hpp>
#include <apset/generators.hpp>

#include <cmath>
#include <complex>

#include "oracles.hpp"

using namespace apset;

TEST_CASE("exponential sum point evaluations", "[expsum]") {
    auto sf = gen_kfree(2, 1000);
    auto s0 = eval_s(sf, 0.0);
    CHECK(s0.real() == static_cast<double>(sf.count()));
    CHECK(s0.imag() == 0.0);

    // 1,2,3,4 at frequency 1/2: alternating signs cancel.
    auto four = IntegerSet::from_elements(4, {1, 2, 3, 4});
    CHECK(std::abs(eval_s(four, 0.5)) < 1e-12);

    // Full interval against the geometric closed form.
    auto full = gen_periodic(1, {0}, 1000);
    auto direct = eval_s(full, 0.3);
    auto closed = oracles::geometric_full_sum(1000, 0.3);
    CHECK(std::abs(direct - closed) < 1e-9);
}

TEST_CASE("autocorrelation small cases", "[expsum]") {
    auto one = IntegerSet::from_elements(1, {1});
    auto c1 = autocorrelation(one);
    REQUIRE(c1.c.size() == 1);
    CHECK(c1.c[0] == 1);

    auto a = IntegerSet::from_elements(4, {1, 2, 4});
    auto ca = autocorrelation(a);
    CHECK(ca.c == std::vector<std::uint64_t>{3, 1, 1, 1});

    // The interval 1..50 has c(h) = 50 - h.
    auto interval = gen_periodic(1, {0}, 50);
    auto ci = autocorrelation(interval);
    for (std::uint64_t h = 0; h < 50; ++h) CHECK(ci.c[h] == 50 - h);
}

TEST_CASE("transform and bit-shift autocorrelations agree", "[expsum]") {
    const std::uint64_t x = 1 << 12;
    const IntegerSet sets[] = {
        gen_kfree(2, x),
        gen_beatty(2, x),
        gen_periodic(7, {1, 2, 5}, x),
        oracles::random_set(x, 7),
    };
    for (const auto& s : sets) {
        auto fast = autocorrelation_fft(s);
        auto exact = autocorrelation_direct(s);
        REQUIRE(fast.c == exact.c);
    }
}

TEST_CASE("transform rounding guard", "[expsum]") {
    CHECK(round_checked(1.2, "t") == 1);
    CHECK(round_checked(-0.1, "t") == 0);
    CHECK_THROWS_AS(round_checked(0.3, "t"), std::runtime_error);
}

TEST_CASE("full-circle energy recovers the element count exactly", "[expsum]") {
    ArcSystem circle({{0.0, 1.0}});
    for (const auto& s : {gen_kfree(2, 2000), gen_beatty(3, 1500),
                          oracles::random_set(1 << 11, 3)}) {
        auto corr = autocorrelation(s);
        double e = energy_on_arcs(corr, circle);
        CHECK(e == static_cast<double>(s.count()));
    }
}

TEST_CASE("singleton set has flat spectrum", "[expsum]") {
    // |S|^2 = 1 everywhere, so the energy of any system equals its measure.
    auto one = IntegerSet::from_elements(100, {1});
    auto corr = autocorrelation(one);
    auto m = farey_major_arcs(100, 2);
    CHECK_THAT(energy_on_arcs(corr, m), Catch::Matchers::WithinAbs(m.measure(), 1e-15));
}

TEST_CASE("empty set has zero energy", "[expsum]") {
    auto none = IntegerSet::from_elements(64, {});
    auto corr = autocorrelation(none);
    CHECK(energy_on_arcs(corr, farey_major_arcs(64, 2)) == 0.0);
    CHECK(minor_arc_ratio(corr, farey_major_arcs(64, 2)) == 0.0);
}

TEST_CASE("arc energy matches numerical quadrature", "[expsum]") {
    auto sf = gen_kfree(2, 10000);
    auto m = farey_major_arcs(10000, 10);
    auto corr = autocorrelation(sf);
    double closed = energy_on_arcs(corr, m);
    double quad = oracles::energy_by_quadrature(sf, m);
    CHECK_THAT(closed, Catch::Matchers::WithinRel(quad, 1e-6));
}

TEST_CASE("energy is additive over disjoint systems", "[expsum]") {
    auto sf = gen_kfree(2, 10000);
    auto corr = autocorrelation(sf);
    ArcSystem left({{0.05, 0.15}});
    ArcSystem right({{0.2, 0.35}});
    ArcSystem both({{0.05, 0.15}, {0.2, 0.35}});
    double sum = energy_on_arcs(corr, left) + energy_on_arcs(corr, right);
    CHECK_THAT(energy_on_arcs(corr, both), Catch::Matchers::WithinRel(sum, 1e-12));
}

TEST_CASE("energy is symmetric under reflection of the system", "[expsum]") {
    // c(h) is real, so |S(1 - theta)| = |S(theta)| and mirrored arcs carry
    // the same energy.
    auto be = gen_beatty(2, 20000);
    auto corr = autocorrelation(be);
    ArcSystem arc({{0.1, 0.25}});
    ArcSystem mirror({{0.75, 0.9}});
    CHECK_THAT(energy_on_arcs(corr, arc),
               Catch::Matchers::WithinRel(energy_on_arcs(corr, mirror), 1e-9));
}

TEST_CASE("energy result is independent of the thread count", "[expsum]") {
    auto sf = gen_kfree(2, 50000);
    auto corr = autocorrelation(sf);
    auto m = farey_major_arcs(50000, 12);
    double e1 = energy_on_arcs(corr, m, 1);
    double e4 = energy_on_arcs(corr, m, 4);
    double e7 = energy_on_arcs(corr, m, 7);
    CHECK(e1 == e4);
    CHECK(e1 == e7);
}

TEST_CASE("squarefree minor-arc ratios shrink as Q grows", "[expsum]") {
    auto sf = gen_kfree(2, 100000);
    auto corr = autocorrelation(sf);
    double r5 = minor_arc_ratio(corr, farey_major_arcs(100000, 5));
    double r10 = minor_arc_ratio(corr, farey_major_arcs(100000, 10));
    double r20 = minor_arc_ratio(corr, farey_major_arcs(100000, 20));
    double r40 = minor_arc_ratio(corr, farey_major_arcs(100000, 40));
    CHECK_THAT(r5, Catch::Matchers::WithinAbs(0.111269, 1e-5));
    CHECK_THAT(r10, Catch::Matchers::WithinAbs(0.069333, 1e-5));
    CHECK_THAT(r20, Catch::Matchers::WithinAbs(0.058312, 1e-5));
    CHECK_THAT(r40, Catch::Matchers::WithinAbs(0.027048, 1e-5));
    CHECK(r40 < r20);
    CHECK(r20 < r10);
    CHECK(r10 < r5);
}

TEST_CASE("interval minor-arc ratio decays like 1/Q", "[expsum]") {
    auto full = gen_periodic(1, {0}, 100000);
    auto corr = autocorrelation(full);
    double prev = 1.0;
    for (double Q : {1.0, 2.0, 4.0, 8.0}) {
        double r = minor_arc_ratio(corr, farey_major_arcs(100000, Q));
        CHECK(r <= 1.0 / Q);
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("period-3 set retains minor-arc mass from arc leakage", "[expsum]") {
    // The spectrum sits entirely on thirds, yet the sharp arc cutoff leaks a
    // Q-independent fraction of each spike into the complement.
    auto p3 = gen_periodic(3, {1, 2}, 100000);
    double r = minor_arc_ratio(p3, farey_major_arcs(100000, 4));
    CHECK_THAT(r, Catch::Matchers::WithinAbs(0.016834447561, 1e-9));
}

TEST_CASE("energy rejects denormalized arc input", "[expsum]") {
    auto s = gen_kfree(2, 100);
    auto corr = autocorrelation(s);
    Autocorrelation empty;
    ArcSystem circle({{0.0, 1.0}});
    CHECK_THROWS_AS(energy_on_arcs(empty, circle), std::invalid_argument);
}
