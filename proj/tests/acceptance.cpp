// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cvqkd/analysis.hpp"
#include "cvqkd/channel.hpp"
#include "cvqkd/gaussian_core.hpp"
#include "cvqkd/mc_oracle.hpp"
#include "cvqkd/rates.hpp"
#include "cvqkd/spectrum.hpp"

using namespace cvqkd;

namespace {

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            detail << " [violated: " << what << "]";
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& title, double time_limit_s,
               const std::function<void(Outcome&)>& body) {
    Outcome o;
    o.detail.precision(6);
    const auto start = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.passed = false;
        o.detail << " [exception: " << e.what() << "]";
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (time_limit_s > 0.0 && elapsed > time_limit_s) {
        o.passed = false;
        o.detail << " [runtime over " << time_limit_s << " s]";
    }
    std::printf("%s  C%-2d %s:%s (%.2f s", o.passed ? "PASS" : "FAIL", id, title.c_str(),
                o.detail.str().c_str(), elapsed);
    if (time_limit_s > 0.0) {
        std::printf(", limit %.0f s", time_limit_s);
    }
    std::printf(")\n");
    std::fflush(stdout);
    if (!o.passed) {
        ++failures;
    }
}

Eigen::MatrixXd two_mode(double a, double b, double c, double t) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
    const double k = std::sqrt(t) * c;
    m(0, 0) = m(1, 1) = a;
    m(2, 2) = m(3, 3) = b;
    m(0, 2) = m(2, 0) = k;
    m(1, 3) = m(3, 1) = -k;
    return m;
}

double threshold_or_nan(ProtocolId p, const SourceParams& src, double w,
                        const RootSearchOptions& opts = {}) {
    const auto r = threshold_find(p, src, w, opts);
    return r.found() ? r.transmission : std::nan("");
}

}  // namespace

int main() {
    criterion(1, "dual-path symplectic spectra vs generic eigensolver", 5.0, [](Outcome& o) {
        std::mt19937_64 rng(20240601);
        std::uniform_real_distribution<double> ab(1.0, 100.0);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const int draws = 1000;
        double worst_closed = 0.0;
        double worst_inv = 0.0;
        for (int i = 0; i < draws; ++i) {
            const double a = ab(rng);
            const double b = ab(rng);
            const double t = unit(rng);
            const double c = unit(rng) * std::sqrt((std::min(a, b) - 1.0) * (std::max(a, b) + 1.0));
            const CovarianceMatrix cm(two_mode(a, b, c, t));
            const auto generic = symplectic_spectrum_generic(cm);
            const auto closed = symplectic_spectrum_two_mode(a, b, c, t);
            const auto inv = symplectic_spectrum_invariants(two_mode_invariants(cm));
            for (std::size_t k = 0; k < 2; ++k) {
                worst_closed = std::max(worst_closed, std::abs(closed[k] - generic[k]));
                worst_inv = std::max(worst_inv, std::abs(inv[k] - generic[k]));
            }
        }
        o.detail << " " << draws << " draws, max |closed - generic| = " << worst_closed
                 << ", max |invariant - generic| = " << worst_inv << " (tol 1e-9)";
        o.require(worst_closed <= 1e-9, "closed form");
        o.require(worst_inv <= 1e-9, "invariant form");
    });

    criterion(2, "DR-hom threshold fixed at T = 0.5", 10.0, [](Outcome& o) {
        for (double vs : {1e3, 1e5}) {
            for (double v0 : {1.0, 10.0, 100.0, 1e4}) {
                const double t = threshold_or_nan(kDirectHomodyne, {vs, v0}, 1.0);
                o.detail << " T*(V_S=" << vs << ",V0=" << v0 << ")=" << t;
                o.require(std::abs(t - 0.5) <= 1e-3, "0.500 +- 1e-3");
            }
        }
    });

    criterion(3, "DR-het thresholds", 10.0, [](Outcome& o) {
        const double t1 = threshold_or_nan(kDirectHeterodyne, {1e3, 1.0}, 1.0);
        const double t5 = threshold_or_nan(kDirectHeterodyne, {1e3, 5.0}, 1.0);
        const double t4 = threshold_or_nan(kDirectHeterodyne, {1e3, 1e4}, 1.0);
        o.detail << " T*(V0=1)=" << t1 << " (0.73 +- 0.01), T*(V0=5)=" << t5
                 << " (0.68 +- 0.01), T*(V0=1e4)=" << t4 << " (in [0.66, 0.68])";
        o.require(std::abs(t1 - 0.73) <= 0.01, "V0=1");
        o.require(std::abs(t5 - 0.68) <= 0.01, "V0=5");
        o.require(t4 >= 0.66 && t4 <= 0.68, "V0=1e4");
    });

    criterion(4, "RR-het(V0=1.5) overtakes RR-hom(V0=1)", 0.0, [](Outcome& o) {
        const RateCurve het{kReverseHeterodyne, {1e3, 1.5}, 1.0};
        const RateCurve hom{kReverseHomodyne, {1e3, 1.0}, 1.0};
        const auto x = crossover_find(het, hom);
        o.require(x.has_value(), "a crossing exists");
        if (x) {
            o.detail << " crossover T = " << x->transmission << " (expected 0.79 +- 0.01)"
                     << (x->first_leads_above ? ", heterodyne leads above" : ", homodyne leads above");
            o.require(x->first_leads_above, "heterodyne ahead above the crossing");
            o.require(std::abs(x->transmission - 0.79) <= 0.01, "0.79 +- 0.01");
        }
    });

    criterion(5, "classical-limit positivity and finite-V0 agreement", 30.0, [](Outcome& o) {
        int points = 0;
        int violations = 0;
        double min_margin = 1e300;
        for (int i = 1; i <= 30; ++i) {
            const double t = 0.5 + 0.5 * i / 31.0;
            for (int j = 1; j <= 30; ++j) {
                const double w = 1.0 + 9.0 * j / 30.0;
                for (int k = 1; k <= 30; ++k) {
                    const double phi = 100.0 * k / 30.0;
                    const double m = classical_limit_margin({phi, t, w});
                    min_margin = std::min(min_margin, m);
                    ++points;
                    if (!(m > 1.0)) {
                        ++violations;
                    }
                }
            }
        }
        o.detail << " " << points << " grid points, " << violations
                 << " violations, min (margin - 1) = " << min_margin - 1.0;
        o.require(violations == 0, "inequality on the grid");
        const ClassicalLimitParams spots[] = {
            {10.0, 0.8, 1.5}, {1.0, 0.6, 1.0}, {100.0, 0.9, 3.0}, {0.5, 0.55, 1.2}, {5.0, 0.7, 10.0}};
        double worst = 0.0;
        for (const auto& p : spots) {
            worst = std::max(worst, std::abs(classical_limit_finite_rate(p) - classical_limit_rate(p)));
        }
        o.detail << "; max |R(V0=1e6) - R_limit| over 5 spots = " << worst << " bits (tol 1e-3)";
        o.require(worst <= 1e-3, "finite vs asymptotic");
    });

    criterion(6, "Planck anchors at 300 K", 0.0, [](Outcome& o) {
        const double v300 = variance_from_frequency({{300.0}, {300e9}});
        const double v1 = variance_from_frequency({{300.0}, {1e9}});
        o.detail << " V(300 GHz)=" << v300 << " (41.66 +- 0.2%), V(1 GHz)=" << v1
                 << " (1.25e4 +- 1%)";
        o.require(std::abs(v300 / 41.66 - 1.0) <= 0.002, "300 GHz");
        o.require(std::abs(v1 / 1.25e4 - 1.0) <= 0.01, "1 GHz");
    });

    criterion(7, "microwave and 1 GHz security", 0.0, [](Outcome& o) {
        const double v = 41.66;
        const double t_star = threshold_or_nan(kDirectHomodyne, {1e8, v}, v);
        const double t_eb = eb_transmission_bound(v);
        o.detail << " 300 GHz: T*=" << t_star << " (0.981 +- 0.002), EB=" << t_eb
                 << " (0.9766 +- 1e-4)";
        o.require(std::abs(t_star - 0.981) <= 0.002, "300 GHz threshold");
        o.require(std::abs(t_eb - 0.9766) <= 1e-4, "EB bound");

        // 1 GHz: scan 1-T downward on a 10-per-decade grid; the first point
        // with a positive rate is where security first appears.
        const double v1 = variance_from_frequency({{300.0}, {1e9}});
        const SourceParams src{1e8, v1};
        double first = std::nan("");
        double first_rate = std::nan("");
        for (int e = 30; e <= 70; ++e) {
            const double gap = std::pow(10.0, -e / 10.0);
            const double r = key_rate(kDirectHomodyne, src, {1.0 - gap, v1}).rate;
            if (r > 0.0) {
                first = gap;
                first_rate = r;
                break;
            }
        }
        RootSearchOptions fine;
        fine.grid_points = 4000;
        fine.tolerance = 1e-12;
        const double exact = 1.0 - threshold_or_nan(kDirectHomodyne, src, v1, fine);
        o.detail << "; 1 GHz: first positive 1-T on grid = " << first << " with R = " << first_rate
                 << ", exact 1-T* = " << exact << ", EB 1-T = " << 1.0 - eb_transmission_bound(v1)
                 << " (need 1-T within x3 of 1e-5, R within x10 of 1e-6)";
        o.require(std::abs(std::log10(first / 1e-5)) <= std::log10(3.0), "1-T within x3 of 1e-5");
        o.require(std::abs(std::log10(first_rate / 1e-6)) <= 1.0, "R within x10 of 1e-6");
    });

    criterion(8, "channel-noise sweep at V0 = 41.66", 0.0, [](Outcome& o) {
        double prev = 0.0;
        double w5 = std::nan("");
        o.detail << " T*:";
        for (double w : {5.0, 10.0, 20.0, 50.0, 100.0}) {
            const double t = threshold_or_nan(kDirectHomodyne, {1e3, 41.66}, w);
            o.detail << " W=" << w << "->" << t;
            o.require(t > prev, "strictly increasing in W");
            prev = t;
            if (w == 5.0) {
                w5 = t;
            }
        }
        o.detail << " (W=5 expected 0.86 +- 0.01)";
        o.require(std::abs(w5 - 0.86) <= 0.01, "W=5 threshold");
    });

    criterion(9, "Monte-Carlo Shannon-layer oracle at n = 1e7", 60.0, [](Outcome& o) {
        struct Point {
            SourceParams src;
            ChannelParams ch;
        };
        const Point points[] = {
            {{1e3, 1.0}, {0.6, 1.0}},  {{1e3, 1.0}, {0.6, 2.0}},   {{1e3, 3.0}, {0.3, 1.5}},
            {{1e3, 41.66}, {0.9, 41.66}}, {{10.0, 1.5}, {0.8, 3.0}},
        };
        const std::size_t n = 10'000'000;
        double worst_mi = 0.0;
        double worst_z = 0.0;
        std::uint64_t seed = 9000;
        for (const auto& p : points) {
            const auto m = stream_moments(p.src, p.ch, n, seed++);
            const double hom = mi_ab_homodyne(p.src, p.ch);
            const double het = mi_ab_heterodyne(p.src, p.ch);
            worst_mi = std::max(worst_mi, std::abs(estimate_mi(m, Column::x_s, Column::x_b) / hom - 1.0));
            worst_mi = std::max(worst_mi, std::abs(estimate_mi_heterodyne(m) / het - 1.0));

            const auto out = output_variances(p.src, p.ch);
            const double xi = correlation_block(p.src, p.ch).xi;
            const double z[] = {
                (m.variance(Column::x_b) - out.b_v) / m.variance_standard_error(Column::x_b),
                (m.variance(Column::x_e_prime) - out.e_v) / m.variance_standard_error(Column::x_e_prime),
                (m.conditional_variance(Column::x_b, Column::x_s) - out.b_1) /
                    m.conditional_variance_standard_error(Column::x_b, Column::x_s),
                (m.conditional_variance(Column::x_e_prime, Column::x_s) - out.e_1) /
                    m.conditional_variance_standard_error(Column::x_e_prime, Column::x_s),
                (m.covariance(Column::x_e_prime, Column::x_b) - xi) /
                    m.covariance_standard_error(Column::x_e_prime, Column::x_b),
            };
            for (double zi : z) {
                worst_z = std::max(worst_z, std::abs(zi));
            }
        }
        o.detail << " 5 points, max relative MI error = " << worst_mi
                 << " (tol 1%), max |z| over b_V, e_V, b_1, e_1, xi = " << worst_z << " (tol 5)";
        o.require(worst_mi <= 0.01, "MI within 1%");
        o.require(worst_z <= 5.0, "moments within 5 SE");
    });

    criterion(10, "property suite and curve orderings", 0.0, [](Outcome& o) {
        const ProtocolId all[] = {kDirectHomodyne, kDirectHeterodyne, kReverseHomodyne, kReverseHeterodyne};
        int checked = 0;
        int bad_holevo = 0;
        int bad_w = 0;
        int bad_v0 = 0;
        int bad_cm = 0;
        const double ts[] = {0.02, 0.1, 0.3, 0.5, 0.7, 0.9, 0.98};
        const double ws[] = {1.0, 1.2, 2.0, 5.0, 20.0, 100.0};
        const double v0s[] = {1.0, 1.5, 2.0, 5.0, 20.0, 1e3};
        for (const auto& p : all) {
            for (double t : ts) {
                for (double v0 : v0s) {
                    double prev = 1e300;
                    for (double w : ws) {
                        const auto r = key_rate(p, {1e3, v0}, {t, w});
                        ++checked;
                        bad_holevo += r.holevo < -1e-12;
                        bad_w += r.rate > prev + 1e-12;
                        prev = r.rate;
                    }
                }
                if (p.reconciliation == Reconciliation::reverse) {
                    for (double w : ws) {
                        double prev = 1e300;
                        for (double v0 : v0s) {
                            const double r = key_rate(p, {1e3, v0}, {t, w}).rate;
                            bad_v0 += r > prev + 1e-12;
                            prev = r;
                        }
                    }
                }
            }
        }
        for (double t : ts) {
            for (double w : ws) {
                for (double v0 : v0s) {
                    const SourceParams src{1e3, v0};
                    const ChannelParams ch{t, w};
                    const auto corr = correlation_block(src, ch);
                    const auto ve = eve_cm(src, ch);
                    bad_cm += !condition_on_homodyne(ve, corr, output_variances(src, ch).b_v).is_physical();
                    bad_cm += !condition_on_heterodyne(ve, corr, bob_cm(src, ch)).is_physical();
                    bad_cm += !eve_cm(src, ch, InputVariance::preparation, InputVariance::total).is_physical();
                    bad_cm += !eve_cm(src, ch, InputVariance::preparation, InputVariance::preparation).is_physical();
                }
            }
        }
        o.detail << " " << checked << " rate evaluations: Holevo<0 " << bad_holevo << ", W-monotonicity "
                 << bad_w << ", RR V0-monotonicity " << bad_v0 << ", unphysical conditional CMs " << bad_cm;
        o.require(bad_holevo == 0, "Holevo >= 0");
        o.require(bad_w == 0, "non-increasing in W");
        o.require(bad_v0 == 0, "RR non-increasing in V0");
        o.require(bad_cm == 0, "conditional CMs physical");

        auto r = [](ProtocolId p, double v0) { return key_rate(p, {1e3, v0}, {0.9, 1.0}).rate; };
        int orderings = 0;
        int broken = 0;
        auto order = [&](double hi, double lo) {
            ++orderings;
            broken += !(hi > lo);
        };
        for (const auto& p : all) {
            order(r(p, 1.0), r(p, 2.0));
            order(r(p, 2.0), r(p, 3.0));
            order(r(p, 3.0), r(p, 5.0));
        }
        order(r(kReverseHeterodyne, 1.5), r(kReverseHomodyne, 1.0));
        order(r(kReverseHeterodyne, 1.0), r(kReverseHomodyne, 1.0));
        order(r(kReverseHeterodyne, 1.5), r(kReverseHomodyne, 1.5));
        order(r(kDirectHeterodyne, 1.0), r(kDirectHomodyne, 1.0));
        order(r(kDirectHeterodyne, 3.0), r(kDirectHomodyne, 3.0));
        order(r(kDirectHomodyne, 3.0), r(kReverseHomodyne, 3.0));
        order(r(kDirectHomodyne, 5.0), r(kReverseHomodyne, 5.0));
        order(r(kDirectHeterodyne, 5.0), r(kReverseHeterodyne, 5.0));
        o.detail << "; orderings at T=0.9: " << orderings - broken << "/" << orderings << " strict";
        o.require(broken == 0, "figure orderings");
    });

    std::printf("acceptance: %d of 10 criteria failed\n", failures);
    return failures;
}
