#pragma once

// Security thresholds, protocol crossovers, parameter sweeps and the
// infinite-preparation-noise (classical) limit of direct reconciliation.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cvqkd/channel.hpp"
#include "cvqkd/grid.hpp"
#include "cvqkd/rates.hpp"

namespace cvqkd {

/// Transmission grid used by root searches. The search interval is open:
/// [edge, 1 - edge] stands in for (0, 1).
struct RootSearchOptions {
    std::size_t grid_points = 200;
    double tolerance = 1e-6;
    double edge = 1e-9;
};

enum class ThresholdStatus {
    found,
    secure_everywhere,    ///< rate > 0 on the whole grid
    insecure_everywhere,  ///< rate <= 0 on the whole grid
};

struct ThresholdResult {
    ThresholdStatus status = ThresholdStatus::insecure_everywhere;
    double transmission = 0.0;  ///< T*, meaningful only when found
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;

    bool found() const { return status == ThresholdStatus::found; }
    std::optional<double> value() const {
        return found() ? std::optional<double>(transmission) : std::nullopt;
    }
};

std::string to_string(ThresholdStatus status);

/// Highest sign change of f from <= 0 to > 0 on the grid, refined by
/// bisection; the returned transmission is the upper bracket end, so f > 0
/// there. The coarse scan runs across OpenMP workers.
ThresholdResult find_upper_root(const std::function<double(double)>& f,
                                const RootSearchOptions& options = {});
ThresholdResult find_upper_root_serial(const std::function<double(double)>& f,
                                       const RootSearchOptions& options = {});

/// Smallest T such that key_rate(protocol, src, {T, w}) > 0 on (T, 1).
ThresholdResult threshold_find(ProtocolId protocol, const SourceParams& src, double w,
                               const RootSearchOptions& options = {});
ThresholdResult threshold_find_serial(ProtocolId protocol, const SourceParams& src, double w,
                                      const RootSearchOptions& options = {});

/// One rate curve over T: a protocol with fixed source and channel noise.
struct RateCurve {
    ProtocolId protocol;
    SourceParams src;
    double w = 1.0;

    double rate(double t) const;
};

struct CrossoverResult {
    double transmission = 0.0;
    bool first_leads_above = false;  ///< whether `first` has the higher rate just above the crossing
};

/// Highest T where the two rate curves cross. nullopt when the difference
/// never changes sign, including the degenerate identical-curve case.
std::optional<CrossoverResult> crossover_find(const RateCurve& first, const RateCurve& second,
                                              const RootSearchOptions& options = {});

// --- classical limit -------------------------------------------------------

/// V_0 -> infinity at fixed phi = V_S / V_0. The asymptotic expressions keep
/// their O(1/V_0) terms, so they are evaluated at the finite probe v_0_probe.
struct ClassicalLimitParams {
    double phi_ratio = 1.0;
    double t = 0.75;
    double w = 1.0;
    double v_0_probe = 1e6;
};

struct ClassicalLimitSpectra {
    double eve_plus = 0.0;          ///< (1-T) V
    double eve_minus = 0.0;         ///< W
    double conditional_plus = 0.0;  ///< sqrt(1+phi) (1-T) V_0
    double conditional_minus = 0.0;
};

ClassicalLimitSpectra classical_limit_spectra(const ClassicalLimitParams& p);

/// I(A:B) = 1/2 log2(1 + phi) minus Eve's information with g replaced by
/// log2(e nu / 2): log2[sqrt(1+phi) nu+_{E|A} nu-_{E|A} / (nu+_E nu-_E)].
double classical_limit_rate(const ClassicalLimitParams& p);

/// [T + V W (1-T)][T + V_0 W (1-T)] / (V V_0 W^2 (1-T)^2); the limit rate is
/// positive iff this exceeds 1 (it equals 2^(2R)).
double classical_limit_margin(const ClassicalLimitParams& p);

/// key_rate(DR, hom) at V_0 = v_0_probe, V_S = phi V_0: the finite-V_0
/// counterpart the asymptotic algebra is checked against.
double classical_limit_finite_rate(const ClassicalLimitParams& p);

/// Closed forms for Delta and Delta^2 - 4 det V of Eve's DR-homodyne
/// conditional state V_E(V_0, V), at finite parameters.
struct ConditionalInvariantForms {
    double delta = 0.0;
    double discriminant = 0.0;
};
ConditionalInvariantForms dr_homodyne_conditional_invariants(const SourceParams& src,
                                                             const ChannelParams& ch);

// --- sweeps ----------------------------------------------------------------

enum class SweepAxis { t, w, v_0, v_s, f };

std::string to_string(SweepAxis axis);
std::optional<SweepAxis> parse_axis(std::string_view text);

struct SweepSpec {
    ProtocolId protocol;
    SweepAxis axis = SweepAxis::t;
    AxisRange range;
    SourceParams src;  ///< fixed values for the axes not varied
    ChannelParams ch;
    /// Only for the f axis: V_0 is the thermal variance at (f, temperature)
    /// and W follows it unless bind_w_to_environment is false.
    double temperature = 300.0;
    bool bind_w_to_environment = true;
};

struct SweepRow {
    double value = 0.0;
    KeyRateResult result;
};

/// Parameters for one sweep point. InvalidArgument for out-of-domain values.
std::pair<SourceParams, ChannelParams> sweep_point(const SweepSpec& spec, double value);

std::vector<SweepRow> run_sweep(const SweepSpec& spec);
std::vector<SweepRow> run_sweep_serial(const SweepSpec& spec);

}  // namespace cvqkd
