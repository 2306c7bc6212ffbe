#pragma once

// Thermal-state source and entangling-cloner channel.
//
// Alice prepares X_A = X_S + X_0 with signal variance v_s and preparation
// (shot-noise plus unknown thermal) variance v_0 = 1 + beta. Eve replaces the
// channel by a beam splitter of transmission t fed by one arm of an EPR pair
// of variance w, keeping the other arm.

#include "cvqkd/gaussian_core.hpp"

namespace cvqkd {

struct SourceParams {
    double v_s = 0.0;  ///< signal modulation variance, >= 0
    double v_0 = 1.0;  ///< preparation variance, >= 1

    double total_variance() const { return v_s + v_0; }
};

struct ChannelParams {
    double t = 1.0;  ///< beam-splitter transmission in [0, 1]
    double w = 1.0;  ///< EPR variance, >= 1
};

/// Throws InvalidArgument naming the offending field.
void validate(const SourceParams& src);
void validate(const ChannelParams& ch);

struct EquivalentNoise {
    double chi = 0.0;     ///< total, w(1-t)/t
    double loss = 0.0;    ///< (1-t)/t
    double excess = 0.0;  ///< epsilon = (w-1)(1-t)/t
};

/// Channel noise referred to the input. DomainError for t = 0.
EquivalentNoise equivalent_noise(const ChannelParams& ch);

/// Inverse of equivalent_noise: the EPR variance producing chi at transmission t.
double epr_variance_from_noise(double t, double chi);

struct OutputVariances {
    double b_v = 0.0;  ///< Var(Q_B)
    double e_v = 0.0;  ///< Var(Q_E')
    double b_1 = 0.0;  ///< Var(Q_B | Q_S)
    double e_1 = 0.0;  ///< Var(Q_E' | Q_S)
};

OutputVariances output_variances(const SourceParams& src, const ChannelParams& ch);

/// Which variance Alice's mode carries, from Eve's point of view, on a quadrature.
enum class InputVariance {
    total,        ///< V = v_s + v_0, nothing conditioned
    preparation,  ///< v_0, conditioned on Alice's signal value
};

/// Eve's two-mode CM (E', E'') with the Q quadrature of E' built from
/// q_input and the P quadrature from p_input. (total, total) is the
/// unconditioned state; (preparation, total) and (preparation, preparation)
/// are Eve's states conditioned on Alice's homodyne and heterodyne data.
CovarianceMatrix eve_cm(const SourceParams& src, const ChannelParams& ch, InputVariance q_input,
                        InputVariance p_input);

/// Same, with the input variances given directly. InvalidArgument unless each
/// equals V or v_0.
CovarianceMatrix eve_cm(const SourceParams& src, const ChannelParams& ch, double q_input,
                        double p_input);

inline CovarianceMatrix eve_cm(const SourceParams& src, const ChannelParams& ch) {
    return eve_cm(src, ch, InputVariance::total, InputVariance::total);
}

/// Invariants of eve_cm(src, ch, q_input, p_input) from factored polynomials.
/// Matrix entries grow like W while the invariants of a nearly pure state stay
/// O(1), so forming them from the entries loses digits at large W.
TwoModeInvariants eve_invariants(const SourceParams& src, const ChannelParams& ch,
                                 InputVariance q_input, InputVariance p_input);

/// Correlations of E', E'' with Bob's mode, from X_B = sqrt(t) X_A + sqrt(1-t) E.
CorrelationBlock correlation_block(const SourceParams& src, const ChannelParams& ch);

/// Bob's single-mode CM, b_v I.
CovarianceMatrix bob_cm(const SourceParams& src, const ChannelParams& ch);

}  // namespace cvqkd
