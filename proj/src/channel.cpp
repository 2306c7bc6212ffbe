#include "cvqkd/channel.hpp"

#include <cmath>
#include <string>

#include "cvqkd/error.hpp"

namespace cvqkd {

namespace {

double input_value(const SourceParams& src, InputVariance which) {
    return which == InputVariance::total ? src.total_variance() : src.v_0;
}

}  // namespace

void validate(const SourceParams& src) {
    if (!std::isfinite(src.v_s) || src.v_s < 0.0) {
        throw InvalidArgument("v_s must be a finite value >= 0, got " + std::to_string(src.v_s));
    }
    if (!std::isfinite(src.v_0) || src.v_0 < 1.0) {
        throw InvalidArgument("v_0 must be a finite value >= 1, got " + std::to_string(src.v_0));
    }
}

void validate(const ChannelParams& ch) {
    if (!(ch.t >= 0.0 && ch.t <= 1.0)) {
        throw InvalidArgument("t must lie in [0, 1], got " + std::to_string(ch.t));
    }
    if (!std::isfinite(ch.w) || ch.w < 1.0) {
        throw InvalidArgument("w must be a finite value >= 1, got " + std::to_string(ch.w));
    }
}

EquivalentNoise equivalent_noise(const ChannelParams& ch) {
    validate(ch);
    if (ch.t == 0.0) {
        throw DomainError("equivalent_noise: undefined at t = 0");
    }
    const double loss = (1.0 - ch.t) / ch.t;
    return {ch.w * loss, loss, (ch.w - 1.0) * loss};
}

double epr_variance_from_noise(double t, double chi) {
    if (!(t > 0.0 && t < 1.0)) {
        throw DomainError("epr_variance_from_noise: t must lie in (0, 1)");
    }
    return chi * t / (1.0 - t);
}

OutputVariances output_variances(const SourceParams& src, const ChannelParams& ch) {
    validate(src);
    validate(ch);
    const double t = ch.t;
    const double v = src.total_variance();
    return {
        (1.0 - t) * ch.w + t * v,
        (1.0 - t) * v + t * ch.w,
        (1.0 - t) * ch.w + t * src.v_0,
        (1.0 - t) * src.v_0 + t * ch.w,
    };
}

CovarianceMatrix eve_cm(const SourceParams& src, const ChannelParams& ch, InputVariance q_input,
                        InputVariance p_input) {
    validate(src);
    validate(ch);
    const double t = ch.t;
    const double w = ch.w;
    const double phi = std::sqrt(t * (w * w - 1.0));

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
    m(0, 0) = (1.0 - t) * input_value(src, q_input) + t * w;
    m(1, 1) = (1.0 - t) * input_value(src, p_input) + t * w;
    m(2, 2) = w;
    m(3, 3) = w;
    m(0, 2) = m(2, 0) = phi;
    m(1, 3) = m(3, 1) = -phi;
    return CovarianceMatrix(std::move(m));
}

CovarianceMatrix eve_cm(const SourceParams& src, const ChannelParams& ch, double q_input,
                        double p_input) {
    validate(src);
    auto classify = [&](double value, const char* which) {
        if (value == src.total_variance()) {
            return InputVariance::total;
        }
        if (value == src.v_0) {
            return InputVariance::preparation;
        }
        throw InvalidArgument(std::string("eve_cm: ") + which +
                              " input variance must equal V or v_0");
    };
    return eve_cm(src, ch, classify(q_input, "Q"), classify(p_input, "P"));
}

TwoModeInvariants eve_invariants(const SourceParams& src, const ChannelParams& ch,
                                 InputVariance q_input, InputVariance p_input) {
    validate(src);
    validate(ch);
    auto pick = [&](InputVariance which) {
        return which == InputVariance::total ? src.total_variance() : src.v_0;
    };
    const double x = pick(q_input);
    const double y = pick(p_input);
    const double t = ch.t;
    const double s = 1.0 - t;
    const double w = ch.w;
    const double det = (t + s * x * w) * (t + s * y * w);
    const double delta = s * s * (w * w + x * y) + t * s * w * (x + y) + 2.0 * t;
    const double p = t * w * (x + y) + s * x * y - (1.0 + t) * w * w;
    const double disc = s * s * (p * p - 4.0 * t * (w * w - 1.0) * (w - x) * (w - y));
    return {det, delta, disc};
}

CorrelationBlock correlation_block(const SourceParams& src, const ChannelParams& ch) {
    validate(src);
    validate(ch);
    const double t = ch.t;
    const double w = ch.w;
    return {
        -std::sqrt(t * (1.0 - t)) * (src.v_s + src.v_0 - w),
        std::sqrt(1.0 - t) * std::sqrt(w * w - 1.0),
    };
}

CovarianceMatrix bob_cm(const SourceParams& src, const ChannelParams& ch) {
    const double b_v = output_variances(src, ch).b_v;
    return CovarianceMatrix(b_v * Eigen::MatrixXd::Identity(2, 2));
}

}  // namespace cvqkd
