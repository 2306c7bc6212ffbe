#pragma once

// Secret key rates for the four one-way protocols, assuming ideal
// reconciliation. All information quantities are in bits per channel use.

#include <optional>
#include <string>
#include <string_view>

#include "cvqkd/channel.hpp"
#include "cvqkd/gaussian_core.hpp"

namespace cvqkd {

enum class Reconciliation { direct, reverse };
enum class Detection { homodyne, heterodyne };

struct ProtocolId {
    Reconciliation reconciliation = Reconciliation::direct;
    Detection detection = Detection::homodyne;

    friend bool operator==(const ProtocolId&, const ProtocolId&) = default;
};

inline constexpr ProtocolId kDirectHomodyne{Reconciliation::direct, Detection::homodyne};
inline constexpr ProtocolId kDirectHeterodyne{Reconciliation::direct, Detection::heterodyne};
inline constexpr ProtocolId kReverseHomodyne{Reconciliation::reverse, Detection::homodyne};
inline constexpr ProtocolId kReverseHeterodyne{Reconciliation::reverse, Detection::heterodyne};

/// "dr-hom", "dr-het", "rr-hom", "rr-het".
std::string to_string(ProtocolId protocol);
std::optional<ProtocolId> parse_protocol(std::string_view text);

struct KeyRateDiagnostics {
    double b_v = 0.0;
    double e_v = 0.0;
    SymplecticSpectrum eve;          ///< spectrum of Eve's unconditioned state
    SymplecticSpectrum conditional;  ///< spectrum after conditioning on the reference
};

struct KeyRateResult {
    ProtocolId protocol;
    double mi_ab = 0.0;
    double holevo = 0.0;
    double rate = 0.0;  ///< mi_ab - holevo, may be negative
    KeyRateDiagnostics diagnostics;
};

double mi_ab_homodyne(const SourceParams& src, const ChannelParams& ch);
double mi_ab_heterodyne(const SourceParams& src, const ChannelParams& ch);

/// Holevo information between Eve and the reconciliation reference. The
/// *_detailed forms also return the spectra they used.
struct HolevoTerms {
    double value = 0.0;
    SymplecticSpectrum eve;
    SymplecticSpectrum conditional;
};

HolevoTerms holevo_rr_homodyne_detailed(const SourceParams& src, const ChannelParams& ch);
HolevoTerms holevo_rr_heterodyne_detailed(const SourceParams& src, const ChannelParams& ch);
HolevoTerms holevo_dr_homodyne_detailed(const SourceParams& src, const ChannelParams& ch);
HolevoTerms holevo_dr_heterodyne_detailed(const SourceParams& src, const ChannelParams& ch);

inline double holevo_rr_homodyne(const SourceParams& src, const ChannelParams& ch) {
    return holevo_rr_homodyne_detailed(src, ch).value;
}
inline double holevo_rr_heterodyne(const SourceParams& src, const ChannelParams& ch) {
    return holevo_rr_heterodyne_detailed(src, ch).value;
}
inline double holevo_dr_homodyne(const SourceParams& src, const ChannelParams& ch) {
    return holevo_dr_homodyne_detailed(src, ch).value;
}
inline double holevo_dr_heterodyne(const SourceParams& src, const ChannelParams& ch) {
    return holevo_dr_heterodyne_detailed(src, ch).value;
}

/// Closed-form spectrum of Eve's unconditioned two-mode state.
SymplecticSpectrum eve_spectrum(const SourceParams& src, const ChannelParams& ch);

/// Invariants of Eve's state conditioned on Bob's homodyne outcome, in
/// closed form; equal to two_mode_invariants of the condition_on_homodyne
/// result but without its cancellation at large W.
TwoModeInvariants rr_homodyne_conditional_invariants(const SourceParams& src,
                                                     const ChannelParams& ch);

/// Closed-form spectrum of Eve's state conditioned on Bob's heterodyne outcome.
SymplecticSpectrum rr_heterodyne_conditional_spectrum(const SourceParams& src,
                                                      const ChannelParams& ch);

KeyRateResult key_rate(ProtocolId protocol, const SourceParams& src, const ChannelParams& ch);

}  // namespace cvqkd
