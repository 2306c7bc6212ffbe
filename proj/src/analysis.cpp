#include "cvqkd/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "cvqkd/error.hpp"
#include "cvqkd/parallel.hpp"
#include "cvqkd/spectrum.hpp"

namespace cvqkd {

namespace {

std::vector<double> search_grid(const RootSearchOptions& options) {
    if (options.grid_points < 2) {
        throw InvalidArgument("root search needs at least 2 grid points");
    }
    if (!(options.tolerance > 0.0)) {
        throw InvalidArgument("root search tolerance must be positive");
    }
    if (!(options.edge >= 0.0 && options.edge < 0.5)) {
        throw InvalidArgument("root search edge must lie in [0, 0.5)");
    }
    return AxisRange{options.edge, 1.0 - options.edge, options.grid_points, Spacing::linear}
        .values();
}

ThresholdResult refine_upper_root(const std::function<double(double)>& f,
                                  const std::vector<double>& grid, const std::vector<double>& fx,
                                  double tolerance) {
    // Last grid point where f <= 0; everything above it is positive.
    std::size_t last_nonpositive = grid.size();
    for (std::size_t i = grid.size(); i-- > 0;) {
        if (!(fx[i] > 0.0)) {
            last_nonpositive = i;
            break;
        }
    }
    ThresholdResult result;
    if (last_nonpositive == grid.size()) {
        result.status = ThresholdStatus::secure_everywhere;
        return result;
    }
    if (last_nonpositive + 1 == grid.size()) {
        result.status = ThresholdStatus::insecure_everywhere;
        return result;
    }
    double lo = grid[last_nonpositive];
    double hi = grid[last_nonpositive + 1];
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    result.status = ThresholdStatus::found;
    result.transmission = hi;
    result.bracket_lo = lo;
    result.bracket_hi = hi;
    return result;
}

template <typename Loop>
ThresholdResult find_upper_root_with(const std::function<double(double)>& f,
                                     const RootSearchOptions& options, Loop&& loop) {
    const std::vector<double> grid = search_grid(options);
    std::vector<double> fx(grid.size());
    loop(grid.size(), [&](std::size_t i) { fx[i] = f(grid[i]); });
    return refine_upper_root(f, grid, fx, options.tolerance);
}

std::function<double(double)> rate_in_t(ProtocolId protocol, const SourceParams& src, double w) {
    validate(src);
    validate(ChannelParams{1.0, w});
    return [protocol, src, w](double t) { return key_rate(protocol, src, {t, w}).rate; };
}

void check_classical(const ClassicalLimitParams& p) {
    if (!(p.phi_ratio > 0.0) || !std::isfinite(p.phi_ratio)) {
        throw InvalidArgument("classical limit: phi_ratio must be positive");
    }
    if (!(p.t > 0.0 && p.t < 1.0)) {
        throw InvalidArgument("classical limit: t must lie in (0, 1)");
    }
    if (!(p.w >= 1.0)) {
        throw InvalidArgument("classical limit: w must be >= 1");
    }
    if (!(p.v_0_probe >= 1.0)) {
        throw InvalidArgument("classical limit: v_0_probe must be >= 1");
    }
}

constexpr std::array<std::pair<std::string_view, SweepAxis>, 5> kAxisNames{{
    {"t", SweepAxis::t},
    {"w", SweepAxis::w},
    {"v0", SweepAxis::v_0},
    {"vs", SweepAxis::v_s},
    {"f", SweepAxis::f},
}};

template <typename Loop>
std::vector<SweepRow> sweep_with(const SweepSpec& spec, Loop&& loop) {
    const std::vector<double> values = spec.range.values();
    std::vector<std::pair<SourceParams, ChannelParams>> points;
    points.reserve(values.size());
    for (double v : values) {
        points.push_back(sweep_point(spec, v));
    }
    std::vector<SweepRow> rows(values.size());
    loop(values.size(), [&](std::size_t i) {
        rows[i] = {values[i], key_rate(spec.protocol, points[i].first, points[i].second)};
    });
    return rows;
}

}  // namespace

std::string to_string(ThresholdStatus status) {
    switch (status) {
        case ThresholdStatus::found:
            return "found";
        case ThresholdStatus::secure_everywhere:
            return "secure-everywhere";
        case ThresholdStatus::insecure_everywhere:
            return "insecure-everywhere";
    }
    return "unknown";
}

ThresholdResult find_upper_root(const std::function<double(double)>& f,
                                const RootSearchOptions& options) {
    return find_upper_root_with(f, options, [](std::size_t n, auto&& body) { parallel_for(n, body); });
}

ThresholdResult find_upper_root_serial(const std::function<double(double)>& f,
                                       const RootSearchOptions& options) {
    return find_upper_root_with(f, options, [](std::size_t n, auto&& body) { serial_for(n, body); });
}

ThresholdResult threshold_find(ProtocolId protocol, const SourceParams& src, double w,
                               const RootSearchOptions& options) {
    return find_upper_root(rate_in_t(protocol, src, w), options);
}

ThresholdResult threshold_find_serial(ProtocolId protocol, const SourceParams& src, double w,
                                      const RootSearchOptions& options) {
    return find_upper_root_serial(rate_in_t(protocol, src, w), options);
}

double RateCurve::rate(double t) const {
    return key_rate(protocol, src, {t, w}).rate;
}

std::optional<CrossoverResult> crossover_find(const RateCurve& first, const RateCurve& second,
                                              const RootSearchOptions& options) {
    validate(first.src);
    validate(second.src);
    validate(ChannelParams{1.0, first.w});
    validate(ChannelParams{1.0, second.w});

    const auto difference = [&](double t) { return first.rate(t) - second.rate(t); };
    const std::vector<double> grid = search_grid(options);
    std::vector<double> diff(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { diff[i] = difference(grid[i]); });

    // Identical curves: nothing to report.
    const double largest = std::abs(*std::max_element(
        diff.begin(), diff.end(), [](double a, double b) { return std::abs(a) < std::abs(b); }));
    if (largest < 1e-12) {
        return std::nullopt;
    }

    for (std::size_t i = grid.size() - 1; i-- > 0;) {
        const bool up = diff[i] <= 0.0 && diff[i + 1] > 0.0;
        const bool down = diff[i] >= 0.0 && diff[i + 1] < 0.0;
        if (!up && !down) {
            continue;
        }
        double lo = grid[i];
        double hi = grid[i + 1];
        while (hi - lo > options.tolerance) {
            const double mid = 0.5 * (lo + hi);
            const double d = difference(mid);
            if ((d > 0.0) == up) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return CrossoverResult{0.5 * (lo + hi), up};
    }
    return std::nullopt;
}

ClassicalLimitSpectra classical_limit_spectra(const ClassicalLimitParams& p) {
    check_classical(p);
    const double t = p.t;
    const double w = p.w;
    const double v0 = p.v_0_probe;
    const double v = (1.0 + p.phi_ratio) * v0;
    const double a = t + v * w * (1.0 - t);
    const double b = t + v0 * w * (1.0 - t);
    return {
        (1.0 - t) * v,
        w,
        std::sqrt(1.0 + p.phi_ratio) * (1.0 - t) * v0,
        std::sqrt(a * b / (v * v0)) / (1.0 - t),
    };
}

double classical_limit_rate(const ClassicalLimitParams& p) {
    const ClassicalLimitSpectra s = classical_limit_spectra(p);
    // g'(nu) = log2(e nu / 2): the log2(e/2) offsets cancel pairwise.
    return std::log2(std::sqrt(1.0 + p.phi_ratio) * s.conditional_plus * s.conditional_minus /
                     (s.eve_plus * s.eve_minus));
}

double classical_limit_margin(const ClassicalLimitParams& p) {
    check_classical(p);
    const double t = p.t;
    const double w = p.w;
    const double v0 = p.v_0_probe;
    const double v = (1.0 + p.phi_ratio) * v0;
    const double num = (t + v * w * (1.0 - t)) * (t + v0 * w * (1.0 - t));
    const double den = v * v0 * w * w * (1.0 - t) * (1.0 - t);
    return num / den;
}

double classical_limit_finite_rate(const ClassicalLimitParams& p) {
    check_classical(p);
    const SourceParams src{p.phi_ratio * p.v_0_probe, p.v_0_probe};
    return key_rate(kDirectHomodyne, src, {p.t, p.w}).rate;
}

ConditionalInvariantForms dr_homodyne_conditional_invariants(const SourceParams& src,
                                                             const ChannelParams& ch) {
    validate(src);
    validate(ch);
    const double t = ch.t;
    const double w = ch.w;
    const double v0 = src.v_0;
    const double v = src.total_variance();
    const double delta =
        w * w + (v - t * v + t * w) * (v0 - t * v0 + t * w) - 2.0 * t * (w * w - 1.0);
    const double disc = (t - 1.0) * (t - 1.0) *
                        (t * t * (v - w) * (v - w) * (v0 - w) * (v0 - w) +
                         (w * w - v * v0) * (w * w - v * v0) +
                         2.0 * t * (v - w) * (w - v0) * (w * w + v * v0 - 2.0));
    return {delta, disc};
}

std::string to_string(SweepAxis axis) {
    for (const auto& [name, id] : kAxisNames) {
        if (id == axis) {
            return std::string(name);
        }
    }
    return "unknown";
}

std::optional<SweepAxis> parse_axis(std::string_view text) {
    for (const auto& [name, id] : kAxisNames) {
        if (name == text) {
            return id;
        }
    }
    return std::nullopt;
}

std::pair<SourceParams, ChannelParams> sweep_point(const SweepSpec& spec, double value) {
    SourceParams src = spec.src;
    ChannelParams ch = spec.ch;
    switch (spec.axis) {
        case SweepAxis::t:
            ch.t = value;
            break;
        case SweepAxis::w:
            ch.w = value;
            break;
        case SweepAxis::v_0:
            src.v_0 = value;
            break;
        case SweepAxis::v_s:
            src.v_s = value;
            break;
        case SweepAxis::f: {
            if (!(value > 0.0)) {
                throw InvalidArgument("frequency sweep values must be positive");
            }
            const double thermal =
                variance_from_frequency({Kelvin{spec.temperature}, Hertz{value}});
            src.v_0 = thermal;
            if (spec.bind_w_to_environment) {
                ch.w = thermal;
            }
            break;
        }
    }
    validate(src);
    validate(ch);
    return {src, ch};
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    return sweep_with(spec, [](std::size_t n, auto&& body) { parallel_for(n, body); });
}

std::vector<SweepRow> run_sweep_serial(const SweepSpec& spec) {
    return sweep_with(spec, [](std::size_t n, auto&& body) { serial_for(n, body); });
}

}  // namespace cvqkd
