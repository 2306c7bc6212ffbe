#include "cvqkd/mc_oracle.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

#include "cvqkd/error.hpp"

namespace cvqkd {

namespace {

constexpr std::array<std::string_view, kColumnCount> kColumnNames{
    "x_s", "x_a", "e", "x_b", "x_e_prime", "x_e_dprime", "x_b_het",
};

constexpr std::size_t idx(Column c) {
    return static_cast<std::size_t>(c);
}

void require_samples(const SampleMoments& m, std::size_t minimum) {
    if (m.count() < minimum) {
        throw InvalidArgument("too few samples: " + std::to_string(m.count()) + " < " +
                              std::to_string(minimum));
    }
}

}  // namespace

std::string_view column_name(Column column) {
    return kColumnNames[idx(column)];
}

double NormalStream::uniform_open() {
    // 53 random bits mapped to the open interval (0, 1).
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double NormalStream::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
    const double angle = 2.0 * std::numbers::pi * uniform_open();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

ProtocolSampler::ProtocolSampler(const SourceParams& src, const ChannelParams& ch,
                                 std::uint64_t seed)
    : normal_(seed) {
    validate(src);
    validate(ch);
    sd_signal_ = std::sqrt(src.v_s);
    sd_prep_ = std::sqrt(src.v_0);
    sd_epr_ = std::sqrt(ch.w);
    // E'' = (sqrt(W^2-1)/W) E + N(0, 1/W): Var(E'') = W, cov(E, E'') = sqrt(W^2-1).
    epr_gain_ = std::sqrt(ch.w * ch.w - 1.0) / ch.w;
    epr_residual_sd_ = std::sqrt(1.0 / ch.w);
    sqrt_t_ = std::sqrt(ch.t);
    sqrt_1mt_ = std::sqrt(1.0 - ch.t);
}

QuadratureRecord ProtocolSampler::next() {
    QuadratureRecord r{};
    const double x_s = sd_signal_ * normal_.next();
    const double x_a = x_s + sd_prep_ * normal_.next();
    const double e = sd_epr_ * normal_.next();
    const double e_dprime = epr_gain_ * e + epr_residual_sd_ * normal_.next();
    const double x_b = sqrt_t_ * x_a + sqrt_1mt_ * e;
    const double vacuum = normal_.next();
    r[idx(Column::x_s)] = x_s;
    r[idx(Column::x_a)] = x_a;
    r[idx(Column::e)] = e;
    r[idx(Column::x_b)] = x_b;
    r[idx(Column::x_e_prime)] = -sqrt_1mt_ * x_a + sqrt_t_ * e;
    r[idx(Column::x_e_dprime)] = e_dprime;
    r[idx(Column::x_b_het)] = (x_b + vacuum) / std::numbers::sqrt2;
    return r;
}

SampleBatch sample_protocol(const SourceParams& src, const ChannelParams& ch, std::size_t n,
                            std::uint64_t seed) {
    if (n == 0) {
        throw InvalidArgument("sample_protocol: n must be positive");
    }
    SampleBatch batch;
    batch.n_samples = n;
    batch.seed = seed;
    batch.src = src;
    batch.ch = ch;
    for (auto& col : batch.columns) {
        col.resize(n);
    }
    ProtocolSampler sampler(src, ch, seed);
    for (std::size_t i = 0; i < n; ++i) {
        const QuadratureRecord r = sampler.next();
        for (std::size_t c = 0; c < kColumnCount; ++c) {
            batch.columns[c][i] = r[c];
        }
    }
    return batch;
}

void SampleMoments::add(const QuadratureRecord& record) {
    ++count_;
    for (std::size_t i = 0; i < kColumnCount; ++i) {
        sum_[i] += record[i];
        for (std::size_t j = i; j < kColumnCount; ++j) {
            cross_[i][j] += record[i] * record[j];
        }
    }
}

double SampleMoments::mean(Column c) const {
    return count_ == 0 ? 0.0 : sum_[idx(c)] / static_cast<double>(count_);
}

double SampleMoments::covariance(Column x, Column y) const {
    if (count_ < 2) {
        throw InvalidArgument("covariance needs at least two samples");
    }
    std::size_t i = idx(x);
    std::size_t j = idx(y);
    if (i > j) {
        std::swap(i, j);
    }
    const auto n = static_cast<double>(count_);
    return (cross_[i][j] - sum_[i] * sum_[j] / n) / (n - 1.0);
}

double SampleMoments::conditional_variance(Column y, Column given) const {
    const double vx = variance(given);
    if (vx < 1e-12) {
        throw NumericFailure("conditional_variance: conditioning column has zero variance");
    }
    const double cxy = covariance(given, y);
    return variance(y) - cxy * cxy / vx;
}

double SampleMoments::variance_standard_error(Column c) const {
    return variance(c) * std::sqrt(2.0 / static_cast<double>(count_));
}

double SampleMoments::covariance_standard_error(Column x, Column y) const {
    const double cxy = covariance(x, y);
    return std::sqrt((variance(x) * variance(y) + cxy * cxy) / static_cast<double>(count_));
}

double SampleMoments::conditional_variance_standard_error(Column y, Column given) const {
    return conditional_variance(y, given) * std::sqrt(2.0 / static_cast<double>(count_));
}

SampleMoments moments(const SampleBatch& batch) {
    SampleMoments m;
    QuadratureRecord r{};
    for (std::size_t i = 0; i < batch.n_samples; ++i) {
        for (std::size_t c = 0; c < kColumnCount; ++c) {
            r[c] = batch.columns[c][i];
        }
        m.add(r);
    }
    return m;
}

SampleMoments stream_moments(const SourceParams& src, const ChannelParams& ch, std::size_t n,
                             std::uint64_t seed) {
    if (n == 0) {
        throw InvalidArgument("stream_moments: n must be positive");
    }
    ProtocolSampler sampler(src, ch, seed);
    SampleMoments m;
    for (std::size_t i = 0; i < n; ++i) {
        m.add(sampler.next());
    }
    return m;
}

double estimate_mi(const SampleMoments& m, Column x, Column y) {
    require_samples(m, kMinMutualInformationSamples);
    const double vy = m.variance(y);
    const double vx = m.variance(x);
    if (vy < 1e-12 || vx < 1e-12) {
        throw NumericFailure("estimate_mi: degenerate column variance");
    }
    const double conditional = m.conditional_variance(y, x);
    if (conditional < 1e-12 * vy) {
        throw NumericFailure("estimate_mi: conditional variance vanishes (perfect correlation)");
    }
    return 0.5 * std::log2(vy / conditional);
}

double estimate_mi(const SampleBatch& batch, Column x, Column y) {
    return estimate_mi(moments(batch), x, y);
}

double estimate_mi_standard_error(const SampleMoments& m, Column x, Column y) {
    const double rho = m.covariance(x, y) / std::sqrt(m.variance(x) * m.variance(y));
    return std::abs(rho) / (std::numbers::ln2 * std::sqrt(static_cast<double>(m.count())));
}

double estimate_mi_heterodyne(const SampleMoments& m) {
    return 2.0 * estimate_mi(m, Column::x_s, Column::x_b_het);
}

void write_csv(const SampleBatch& batch, std::ostream& out) {
    for (std::size_t c = 0; c < kColumnCount; ++c) {
        out << (c ? "," : "") << kColumnNames[c];
    }
    out << '\n';
    char buf[32];
    for (std::size_t i = 0; i < batch.n_samples; ++i) {
        for (std::size_t c = 0; c < kColumnCount; ++c) {
            std::snprintf(buf, sizeof buf, "%.15g", batch.columns[c][i]);
            out << (c ? "," : "") << buf;
        }
        out << '\n';
    }
}

}  // namespace cvqkd
