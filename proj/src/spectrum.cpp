#include "cvqkd/spectrum.hpp"

#include <cmath>

#include "cvqkd/error.hpp"
#include "cvqkd/parallel.hpp"

namespace cvqkd {

namespace {

void check_environment(const ThermalEnvironment& env) {
    if (!(env.temperature.value > 0.0) || !std::isfinite(env.temperature.value)) {
        throw InvalidArgument("temperature must be positive");
    }
    if (!(env.frequency.value > 0.0) || !std::isfinite(env.frequency.value)) {
        throw InvalidArgument("frequency must be positive");
    }
}

void check_map_spec(const SecurityMapSpec& spec) {
    if (spec.protocol.detection != Detection::homodyne) {
        throw InvalidArgument("security map supports homodyne detection only");
    }
    if (!(spec.temperature.value > 0.0)) {
        throw InvalidArgument("temperature must be positive");
    }
    validate(SourceParams{spec.v_s, 1.0});
    spec.frequencies.validate();
    spec.transmissions.validate();
    if (spec.frequencies.lo <= 0.0) {
        throw InvalidArgument("frequency range must be positive");
    }
    if (spec.transmissions.lo < 0.0 || spec.transmissions.hi > 1.0) {
        throw InvalidArgument("transmission range must lie in [0, 1]");
    }
    if (spec.w_override) {
        validate(ChannelParams{1.0, *spec.w_override});
    }
}

struct Column {
    double frequency;
    double v_0;
    double w;
};

Column column_at(const SecurityMapSpec& spec, double frequency) {
    const double v0 = variance_from_frequency({spec.temperature, Hertz{frequency}});
    return {frequency, v0, spec.w_override.value_or(v0)};
}

template <typename Loop>
SecurityMap map_with(const SecurityMapSpec& spec, Loop&& loop) {
    check_map_spec(spec);
    SecurityMap map;
    map.frequencies = spec.frequencies.values();
    map.transmissions = spec.transmissions.values();
    const std::size_t nt = map.transmissions.size();
    map.cells.resize(map.frequencies.size() * nt);

    loop(map.cells.size(), [&](std::size_t index) {
        const Column col = column_at(spec, map.frequencies[index / nt]);
        const double t = map.transmissions[index % nt];
        SecurityMapCell cell{col.frequency, t, col.v_0, col.w, 0.0, CellClass::insecure_rate};
        cell.rate = key_rate(spec.protocol, {spec.v_s, col.v_0}, {t, col.w}).rate;
        if (t <= eb_transmission_bound(col.w)) {
            cell.classification = CellClass::insecure_eb;
        } else if (cell.rate > 0.0) {
            cell.classification = CellClass::secure;
        }
        map.cells[index] = cell;
    });
    return map;
}

}  // namespace

double mean_photon_number(const ThermalEnvironment& env, const PhysicalConstants& constants) {
    check_environment(env);
    const double x = constants.planck * env.frequency.value /
                     (constants.boltzmann * env.temperature.value);
    if (x > 700.0) {
        return 0.0;
    }
    return 1.0 / std::expm1(x);
}

double variance_from_frequency(const ThermalEnvironment& env, const PhysicalConstants& constants) {
    return 2.0 * mean_photon_number(env, constants) + 1.0;
}

double photon_number_from_variance(double variance) {
    if (!(variance >= 1.0)) {
        throw InvalidArgument("variance must be >= 1");
    }
    return 0.5 * (variance - 1.0);
}

double eb_transmission_bound(double w) {
    if (!(w >= 1.0)) {
        throw InvalidArgument("w must be >= 1");
    }
    if (std::isinf(w)) {
        return 1.0;
    }
    return w / (1.0 + w);
}

std::optional<double> eb_frequency_bound(double t, Kelvin temperature,
                                         const PhysicalConstants& constants) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw InvalidArgument("t must lie in [0, 1]");
    }
    if (!(temperature.value > 0.0)) {
        throw InvalidArgument("temperature must be positive");
    }
    if (t <= 0.5) {
        return std::nullopt;
    }
    const double alpha = constants.boltzmann * temperature.value / constants.planck;
    return -alpha * std::log(2.0 * t - 1.0);
}

std::string to_string(CellClass cls) {
    switch (cls) {
        case CellClass::secure:
            return "secure";
        case CellClass::insecure_eb:
            return "insecure-eb";
        case CellClass::insecure_rate:
            return "insecure-rate";
    }
    return "unknown";
}

SecurityMap security_map(const SecurityMapSpec& spec) {
    return map_with(spec, [](std::size_t n, auto&& body) { parallel_for(n, body); });
}

SecurityMap security_map_serial(const SecurityMapSpec& spec) {
    return map_with(spec, [](std::size_t n, auto&& body) { serial_for(n, body); });
}

std::vector<SecurityBoundaryPoint> security_boundary(const SecurityMapSpec& spec,
                                                     const RootSearchOptions& options) {
    check_map_spec(spec);
    const std::vector<double> freqs = spec.frequencies.values();
    std::vector<SecurityBoundaryPoint> out(freqs.size());
    // Columns run serially here; the threshold scan inside is the parallel kernel.
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        const Column col = column_at(spec, freqs[i]);
        out[i] = {col.frequency, col.v_0, col.w, eb_transmission_bound(col.w),
                  threshold_find(spec.protocol, {spec.v_s, col.v_0}, col.w, options)};
    }
    return out;
}

}  // namespace cvqkd
