#include "doctest.h"

#include <cmath>

#include "cvqkd/analysis.hpp"
#include "cvqkd/error.hpp"

using namespace cvqkd;

TEST_CASE("upper root of simple functions") {
    const auto r = find_upper_root([](double t) { return t - 0.3; });
    REQUIRE(r.found());
    CHECK(r.transmission == doctest::Approx(0.3).epsilon(1e-6));
    CHECK(r.transmission - 0.3 > 0.0);

    // Two roots: the upper sign change wins.
    const auto two = find_upper_root([](double t) { return (t - 0.2) * (t - 0.7); });
    CHECK(two.transmission == doctest::Approx(0.7).epsilon(1e-6));

    CHECK(find_upper_root([](double) { return 1.0; }).status == ThresholdStatus::secure_everywhere);
    CHECK(find_upper_root([](double) { return -1.0; }).status == ThresholdStatus::insecure_everywhere);
}

TEST_CASE("DR-homodyne threshold sits at one half") {
    for (double vs : {1e3, 1e5}) {
        for (double v0 : {1.0, 10.0, 100.0, 1e4}) {
            const auto r = threshold_find(kDirectHomodyne, {vs, v0}, 1.0);
            REQUIRE(r.found());
            CHECK(r.transmission == doctest::Approx(0.5).epsilon(1e-3));
        }
    }
}

TEST_CASE("DR-heterodyne thresholds") {
    CHECK(threshold_find(kDirectHeterodyne, {1e3, 1.0}, 1.0).transmission ==
          doctest::Approx(0.73).epsilon(0.01 / 0.73));
    CHECK(threshold_find(kDirectHeterodyne, {1e3, 5.0}, 1.0).transmission ==
          doctest::Approx(0.68).epsilon(0.01 / 0.68));
    const double high = threshold_find(kDirectHeterodyne, {1e3, 1e4}, 1.0).transmission;
    CHECK(high >= 0.66);
    CHECK(high <= 0.68);
}

TEST_CASE("pure-loss RR-homodyne has no threshold") {
    CHECK(threshold_find(kReverseHomodyne, {1e3, 1.0}, 1.0).status ==
          ThresholdStatus::secure_everywhere);
}

TEST_CASE("DR-homodyne thresholds with channel noise converge in V0") {
    double prev = 0.0;
    for (double v0 : {1.0, 10.0, 100.0, 1e4}) {
        const auto r = threshold_find(kDirectHomodyne, {1e5, v0}, 3.0);
        REQUIRE(r.found());
        CHECK(r.transmission > 0.5);
        if (prev > 0.0) {
            CHECK(std::abs(r.transmission - prev) < 0.01);
        }
        prev = r.transmission;
    }
}

TEST_CASE("crossover") {
    const RateCurve het{kReverseHeterodyne, {1e3, 1.5}, 1.0};
    const RateCurve hom{kReverseHomodyne, {1e3, 1.0}, 1.0};
    const auto x = crossover_find(het, hom);
    REQUIRE(x.has_value());
    CHECK(x->first_leads_above);
    CHECK(het.rate(x->transmission + 0.01) > hom.rate(x->transmission + 0.01));
    CHECK(het.rate(x->transmission - 0.01) < hom.rate(x->transmission - 0.01));
    // Regression pin for the computed crossing (acceptance target is 0.79, see README).
    CHECK(x->transmission == doctest::Approx(0.773632).epsilon(1e-5));

    CHECK_FALSE(crossover_find(hom, hom).has_value());

    const RateCurve dr{kDirectHomodyne, {1e3, 3.0}, 1.0};
    const RateCurve rr{kReverseHomodyne, {1e3, 3.0}, 1.0};
    const auto dx = crossover_find(dr, rr);
    REQUIRE(dx.has_value());
    CHECK(dx->first_leads_above);
    for (double t : {0.6, 0.8, 0.95}) {
        CHECK(dr.rate(t) >= rr.rate(t));
    }
}

TEST_CASE("curve orderings at T = 0.9") {
    const double t = 0.9;
    auto r = [&](ProtocolId p, double v0) { return key_rate(p, {1e3, v0}, {t, 1.0}).rate; };
    for (const auto& p : {kReverseHomodyne, kReverseHeterodyne, kDirectHomodyne, kDirectHeterodyne}) {
        CHECK(r(p, 1.0) > r(p, 2.0));
        CHECK(r(p, 2.0) > r(p, 3.0));
        CHECK(r(p, 3.0) > r(p, 5.0));
    }
    CHECK(r(kReverseHeterodyne, 1.5) > r(kReverseHomodyne, 1.0));
    CHECK(r(kReverseHeterodyne, 1.0) > r(kReverseHomodyne, 1.0));
    CHECK(r(kReverseHeterodyne, 1.5) > r(kReverseHomodyne, 1.5));
    for (double v0 : {1.0, 3.0}) {
        CHECK(r(kDirectHeterodyne, v0) > r(kDirectHomodyne, v0));
    }
    for (double v0 : {3.0, 5.0}) {
        CHECK(r(kDirectHomodyne, v0) > r(kReverseHomodyne, v0));
    }
    CHECK(r(kDirectHeterodyne, 5.0) > r(kReverseHeterodyne, 5.0));
}

TEST_CASE("classical limit") {
    for (double t : {0.51, 0.7, 0.99}) {
        for (double w : {1.01, 3.0, 10.0}) {
            for (double phi : {0.01, 1.0, 100.0}) {
                const ClassicalLimitParams p{phi, t, w};
                CHECK(classical_limit_margin(p) > 1.0);
                CHECK(classical_limit_rate(p) > 0.0);
                CHECK(classical_limit_rate(p) ==
                      doctest::Approx(0.5 * std::log2(classical_limit_margin(p))).epsilon(1e-6));
            }
        }
    }
    const ClassicalLimitParams spot{10.0, 0.8, 1.5};
    CHECK(std::abs(classical_limit_finite_rate(spot) - classical_limit_rate(spot)) < 1e-3);

    const auto s = classical_limit_spectra(spot);
    const double v0 = spot.v_0_probe;
    const double v = v0 * (1.0 + spot.phi_ratio);
    CHECK(s.eve_plus == doctest::Approx((1 - spot.t) * v));
    CHECK(s.eve_minus == doctest::Approx(spot.w));

    // Eve's terms vanish at T = 1, leaving Shannon's capacity formula.
    const auto lossless = key_rate(kDirectHomodyne, {10.0 * 1e6, 1e6}, {1.0, 1.0});
    CHECK(lossless.holevo == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(lossless.rate == doctest::Approx(0.5 * std::log2(11.0)));

}

TEST_CASE("sweep") {
    SweepSpec spec;
    spec.protocol = kDirectHomodyne;
    spec.axis = SweepAxis::t;
    spec.range = {0.2, 0.9, 2, Spacing::linear};
    spec.src = {1e3, 2.0};
    spec.ch = {0.5, 1.0};
    const auto two = run_sweep(spec);
    REQUIRE(two.size() == 2);
    CHECK(two[0].value == 0.2);
    CHECK(two[1].value == 0.9);

    spec.range = {0.0, 1.0, 101, Spacing::linear};
    const auto full = run_sweep(spec);
    REQUIRE(full.size() == 101);
    for (std::size_t i = 1; i < full.size(); ++i) {
        CHECK(full[i].value > full[i - 1].value);
    }

    spec.axis = SweepAxis::w;
    spec.range = {0.5, 2.0, 5, Spacing::linear};
    CHECK_THROWS_AS(run_sweep(spec), InvalidArgument);

    spec.axis = SweepAxis::v_0;
    spec.range = {1.0, 1e4, 5, Spacing::log};
    const auto logs = run_sweep(spec);
    CHECK(logs[2].value == doctest::Approx(100.0));
    CHECK(logs[2].result.rate == doctest::Approx(key_rate(kDirectHomodyne, {1e3, 100.0}, {0.5, 1.0}).rate));

    for (auto axis : {SweepAxis::t, SweepAxis::w, SweepAxis::v_0, SweepAxis::v_s, SweepAxis::f}) {
        CHECK(parse_axis(to_string(axis)) == axis);
    }
    CHECK_THROWS_AS((AxisRange{1.0, 1.0, 3, Spacing::linear}.validate()), InvalidArgument);
    CHECK_THROWS_AS((AxisRange{0.0, 1.0, 3, Spacing::log}.validate()), InvalidArgument);
    CHECK_THROWS_AS((AxisRange{0.0, 1.0, 1, Spacing::linear}.validate()), InvalidArgument);
}

TEST_CASE("W sweep thresholds at V0 = 41.66") {
    double prev = 0.0;
    const double expected[] = {0.85928, 0.92453, 0.96081, 0.98395, 0.99191};
    int i = 0;
    for (double w : {5.0, 10.0, 20.0, 50.0, 100.0}) {
        const auto r = threshold_find(kDirectHomodyne, {1e3, 41.66}, w);
        REQUIRE(r.found());
        CHECK(r.transmission > prev);
        CHECK(r.transmission == doctest::Approx(expected[i++]).epsilon(1e-4));
        prev = r.transmission;
    }
}
