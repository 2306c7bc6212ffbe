#include "cvqkd/rates.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "cvqkd/error.hpp"

namespace cvqkd {

namespace {

constexpr std::array<std::pair<std::string_view, ProtocolId>, 4> kProtocolNames{{
    {"dr-hom", kDirectHomodyne},
    {"dr-het", kDirectHeterodyne},
    {"rr-hom", kReverseHomodyne},
    {"rr-het", kReverseHeterodyne},
}};

HolevoTerms make_terms(SymplecticSpectrum eve, SymplecticSpectrum conditional) {
    const double value = von_neumann_entropy(eve) - von_neumann_entropy(conditional);
    return {value, std::move(eve), std::move(conditional)};
}

}  // namespace

std::string to_string(ProtocolId protocol) {
    for (const auto& [name, id] : kProtocolNames) {
        if (id == protocol) {
            return std::string(name);
        }
    }
    return "unknown";
}

std::optional<ProtocolId> parse_protocol(std::string_view text) {
    for (const auto& [name, id] : kProtocolNames) {
        if (name == text) {
            return id;
        }
    }
    return std::nullopt;
}

double mi_ab_homodyne(const SourceParams& src, const ChannelParams& ch) {
    const auto out = output_variances(src, ch);
    return 0.5 * std::log2(out.b_v / out.b_1);
}

double mi_ab_heterodyne(const SourceParams& src, const ChannelParams& ch) {
    // Each quadrature carries the extra vacuum unit of the heterodyne split.
    const auto out = output_variances(src, ch);
    return std::log2((out.b_v + 1.0) / (out.b_1 + 1.0));
}

namespace {

// Spectrum of eve_cm with both quadratures of E' built from input variance x:
// a = (1-T) x + T W, b = W, c^2 t = T (W^2 - 1), expanded so every term is
// non-negative.
SymplecticSpectrum eve_family_spectrum(double x, const ChannelParams& ch) {
    const double t = ch.t;
    const double s = 1.0 - t;
    const double w = ch.w;
    const double y = s * s * (x * x + w * w) + 2.0 * s * (1.0 + t) * x * w + 4.0 * t;
    return symplectic_spectrum_two_mode_factored(y, s * (x - w), s * x * w + t);
}

}  // namespace

SymplecticSpectrum eve_spectrum(const SourceParams& src, const ChannelParams& ch) {
    validate(src);
    validate(ch);
    return eve_family_spectrum(src.total_variance(), ch);
}

TwoModeInvariants rr_homodyne_conditional_invariants(const SourceParams& src,
                                                     const ChannelParams& ch) {
    validate(src);
    validate(ch);
    const double t = ch.t;
    const double s = 1.0 - t;
    const double w = ch.w;
    const double v = src.total_variance();
    const double d = t * v + s * w;
    const double det = v * (s * v * w + t) / d;
    const double delta = (s * w * (v * v + 1.0) + 2.0 * t * v) / d;
    const double root = w * s * (v * v - 1.0) / d;
    return {det, delta, root * root};
}

SymplecticSpectrum rr_heterodyne_conditional_spectrum(const SourceParams& src,
                                                      const ChannelParams& ch) {
    validate(src);
    validate(ch);
    const double t = ch.t;
    const double s = 1.0 - t;
    const double w = ch.w;
    const double v = src.total_variance();
    const double d = 1.0 + t * v + s * w;
    const double root = (v + 1.0) * (s * w + 1.0 + t) / d;
    return symplectic_spectrum_two_mode_factored(root * root, s * (v - 1.0) * (w + 1.0) / d,
                                                 (s * v * w + t + v) / d);
}

HolevoTerms holevo_rr_homodyne_detailed(const SourceParams& src, const ChannelParams& ch) {
    return make_terms(eve_spectrum(src, ch),
                      symplectic_spectrum_invariants(rr_homodyne_conditional_invariants(src, ch)));
}

HolevoTerms holevo_rr_heterodyne_detailed(const SourceParams& src, const ChannelParams& ch) {
    return make_terms(eve_spectrum(src, ch), rr_heterodyne_conditional_spectrum(src, ch));
}

HolevoTerms holevo_dr_homodyne_detailed(const SourceParams& src, const ChannelParams& ch) {
    return make_terms(eve_spectrum(src, ch),
                      symplectic_spectrum_invariants(eve_invariants(
                          src, ch, InputVariance::preparation, InputVariance::total)));
}

HolevoTerms holevo_dr_heterodyne_detailed(const SourceParams& src, const ChannelParams& ch) {
    validate(src);
    validate(ch);
    return make_terms(eve_spectrum(src, ch), eve_family_spectrum(src.v_0, ch));
}

KeyRateResult key_rate(ProtocolId protocol, const SourceParams& src, const ChannelParams& ch) {
    const bool homodyne = protocol.detection == Detection::homodyne;
    const double mi = homodyne ? mi_ab_homodyne(src, ch) : mi_ab_heterodyne(src, ch);

    HolevoTerms terms;
    if (protocol.reconciliation == Reconciliation::reverse) {
        terms = homodyne ? holevo_rr_homodyne_detailed(src, ch)
                         : holevo_rr_heterodyne_detailed(src, ch);
    } else {
        terms = homodyne ? holevo_dr_homodyne_detailed(src, ch)
                         : holevo_dr_heterodyne_detailed(src, ch);
    }

    const auto out = output_variances(src, ch);
    KeyRateResult result;
    result.protocol = protocol;
    result.mi_ab = mi;
    result.holevo = terms.value;
    result.rate = mi - terms.value;
    result.diagnostics = {out.b_v, out.e_v, std::move(terms.eve), std::move(terms.conditional)};
    return result;
}

}  // namespace cvqkd
