#pragma once

// Security of thermal-state QKD across the electromagnetic spectrum: Planck
// occupancy sets both Alice's preparation noise and (by default) Eve's
// channel noise at each frequency.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cvqkd/analysis.hpp"
#include "cvqkd/grid.hpp"
#include "cvqkd/rates.hpp"

namespace cvqkd {

struct Kelvin {
    double value = 0.0;
};

struct Hertz {
    double value = 0.0;
};

struct PhysicalConstants {
    double planck = 0.0;     ///< J s
    double boltzmann = 0.0;  ///< J / K
};

/// Exact SI values.
inline constexpr PhysicalConstants kSiConstants{6.62607015e-34, 1.380649e-23};

struct ThermalEnvironment {
    Kelvin temperature;
    Hertz frequency;
};

/// Bose-Einstein occupancy 1 / (exp(hf / k tau) - 1); 0 once hf / k tau > 700.
double mean_photon_number(const ThermalEnvironment& env,
                          const PhysicalConstants& constants = kSiConstants);

/// Quadrature variance 2 n + 1 of the thermal mode.
double variance_from_frequency(const ThermalEnvironment& env,
                               const PhysicalConstants& constants = kSiConstants);

double photon_number_from_variance(double variance);

/// The channel is entanglement breaking for T <= w / (1 + w).
double eb_transmission_bound(double w);

/// Minimum frequency -(k tau / h) ln(2t - 1) for which thermal channel noise
/// stays below the entanglement-breaking limit. nullopt for t <= 1/2, where
/// no frequency helps.
std::optional<double> eb_frequency_bound(double t, Kelvin temperature,
                                         const PhysicalConstants& constants = kSiConstants);

enum class CellClass { secure, insecure_eb, insecure_rate };

std::string to_string(CellClass cls);

struct SecurityMapCell {
    double frequency = 0.0;
    double transmission = 0.0;
    double v_0 = 1.0;
    double w = 1.0;
    double rate = 0.0;
    CellClass classification = CellClass::insecure_rate;
};

struct SecurityMapSpec {
    ProtocolId protocol = kDirectHomodyne;
    Kelvin temperature{300.0};
    double v_s = 1e8;
    AxisRange frequencies{1e9, 4.3e14, 40, Spacing::log};
    AxisRange transmissions{0.5, 1.0, 101, Spacing::linear};
    /// Channel noise; defaults to the environment's thermal variance.
    std::optional<double> w_override;
};

/// Cells in row-major (frequency, transmission) order.
struct SecurityMap {
    std::vector<double> frequencies;
    std::vector<double> transmissions;
    std::vector<SecurityMapCell> cells;

    const SecurityMapCell& at(std::size_t f_index, std::size_t t_index) const {
        return cells[f_index * transmissions.size() + t_index];
    }
};

SecurityMap security_map(const SecurityMapSpec& spec);
SecurityMap security_map_serial(const SecurityMapSpec& spec);

/// Per-frequency boundaries: the key-rate threshold and the EB bound.
struct SecurityBoundaryPoint {
    double frequency = 0.0;
    double v_0 = 1.0;
    double w = 1.0;
    double eb_bound = 0.5;
    ThresholdResult threshold;
};

std::vector<SecurityBoundaryPoint> security_boundary(const SecurityMapSpec& spec,
                                                     const RootSearchOptions& options = {});

}  // namespace cvqkd
