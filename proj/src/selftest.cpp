#include "cvqkd/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "cvqkd/analysis.hpp"
#include "cvqkd/gaussian_core.hpp"
#include "cvqkd/mc_oracle.hpp"
#include "cvqkd/output.hpp"
#include "cvqkd/rates.hpp"

namespace cvqkd {

namespace {

SelfTestCheck within(std::string name, double value, double expected, double tolerance) {
    const bool ok = std::isfinite(value) && std::abs(value - expected) <= tolerance;
    return {std::move(name), ok,
            "got " + format_number(value) + ", expected " + format_number(expected) + " +- " +
                format_number(tolerance)};
}

SelfTestCheck threshold_near(std::string name, const ThresholdResult& r, double expected,
                             double tolerance) {
    if (!r.found()) {
        return {std::move(name), false, "no threshold: " + to_string(r.status)};
    }
    return within(std::move(name), r.transmission, expected, tolerance);
}

SelfTestCheck spectrum_routes(const SelfTestOptions& options) {
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < options.spectrum_draws; ++i) {
        const double a = 1.0 + 99.0 * unit(rng);
        const double b = 1.0 + 99.0 * unit(rng);
        const double t = unit(rng);
        const double c = std::sqrt(a * b - 1.0) * unit(rng);
        const double sc = std::sqrt(t) * c;
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
        m(0, 0) = m(1, 1) = a;
        m(2, 2) = m(3, 3) = b;
        m(0, 2) = m(2, 0) = sc;
        m(1, 3) = m(3, 1) = -sc;
        const CovarianceMatrix cm(m);
        const auto generic = symplectic_spectrum_generic(cm);
        const auto closed = symplectic_spectrum_two_mode(a, b, c, t);
        const auto inv = symplectic_spectrum_invariants(two_mode_invariants(cm));
        for (std::size_t k = 0; k < 2; ++k) {
            worst = std::max({worst, std::abs(generic[k] - closed[k]),
                              std::abs(generic[k] - inv[k])});
        }
    }
    return {"spectrum: closed form and invariants vs generic eigensolver", worst <= 1e-9,
            "max deviation " + format_number(worst) + " over " +
                std::to_string(options.spectrum_draws) + " draws (tol 1e-9)"};
}

SelfTestCheck monte_carlo(const SelfTestOptions& options) {
    const SourceParams src{1e3, 1.0};
    const ChannelParams ch{0.6, 2.0};
    const SampleMoments m = stream_moments(src, ch, options.mc_samples, options.seed);
    const double hom = estimate_mi(m, Column::x_s, Column::x_b);
    const double het = estimate_mi_heterodyne(m);
    const double se = estimate_mi_standard_error(m, Column::x_s, Column::x_b);
    const double hom_ref = mi_ab_homodyne(src, ch);
    const double het_ref = mi_ab_heterodyne(src, ch);
    const bool ok = std::abs(hom - hom_ref) <= 5.0 * se && std::abs(het - het_ref) <= 10.0 * se;
    std::ostringstream detail;
    detail << "hom " << format_number(hom) << " vs " << format_number(hom_ref) << ", het "
           << format_number(het) << " vs " << format_number(het_ref) << ", se "
           << format_number(se) << " at n=" << options.mc_samples;
    return {"monte-carlo: I(A:B) homodyne and heterodyne", ok, detail.str()};
}

}  // namespace

std::vector<SelfTestCheck> run_selftest(const SelfTestOptions& options) {
    std::vector<SelfTestCheck> checks;
    checks.push_back(spectrum_routes(options));
    checks.push_back(monte_carlo(options));

    const Kelvin room{300.0};
    const double v300 = variance_from_frequency({room, Hertz{300e9}}, options.constants);
    const double v1 = variance_from_frequency({room, Hertz{1e9}}, options.constants);
    checks.push_back(within("anchor: V(300 GHz, 300 K) = 41.66 +- 0.2%", v300, 41.66, 0.002 * 41.66));
    checks.push_back(within("anchor: V(1 GHz, 300 K) = 1.25e4 +- 1%", v1, 1.25e4, 0.01 * 1.25e4));
    checks.push_back(within("anchor: EB bound at W = 41.66", eb_transmission_bound(41.66), 0.9766, 1e-4));

    for (double v0 : {1.0, 1e4}) {
        checks.push_back(threshold_near("anchor: DR-hom threshold, V0 = " + format_number(v0),
                                        threshold_find(kDirectHomodyne, {1e3, v0}, 1.0), 0.5,
                                        1e-3));
    }
    checks.push_back(threshold_near("anchor: DR-het threshold, V0 = 1",
                                    threshold_find(kDirectHeterodyne, {1e3, 1.0}, 1.0), 0.73, 0.01));
    checks.push_back(threshold_near("anchor: DR-het threshold, V0 = 5",
                                    threshold_find(kDirectHeterodyne, {1e3, 5.0}, 1.0), 0.68, 0.01));
    checks.push_back(threshold_near("anchor: microwave DR-hom threshold, V0 = W = 41.66",
                                    threshold_find(kDirectHomodyne, {1e8, 41.66}, 41.66), 0.981,
                                    0.002));
    checks.push_back(threshold_near("anchor: DR-hom threshold, V0 = 41.66, W = 5",
                                    threshold_find(kDirectHomodyne, {1e3, 41.66}, 5.0), 0.86, 0.01));

    // Regression pin: the computed crossing, not the value read off the plot.
    const auto cross = crossover_find({kReverseHeterodyne, {1e3, 1.5}, 1.0},
                                      {kReverseHomodyne, {1e3, 1.0}, 1.0});
    checks.push_back(cross ? within("regression: RR-het(1.5) / RR-hom(1) crossover",
                                    cross->transmission, 0.77363, 1e-3)
                           : SelfTestCheck{"regression: RR-het(1.5) / RR-hom(1) crossover", false,
                                           "no crossover found"});
    return checks;
}

}  // namespace cvqkd
