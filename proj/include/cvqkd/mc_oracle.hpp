#pragma once

// Monte-Carlo oracle for the Shannon layer. Samples the prepare-and-measure
// model one quadrature at a time and estimates variances, conditional
// variances and mutual informations from sample moments.
//
// Randomness: std::mt19937_64 seeded with the caller's seed, uniform doubles
// from the top 53 bits, normals by the Box-Muller transform. Both the engine
// and the transform are fully specified, so a seed names one batch.

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "cvqkd/channel.hpp"

namespace cvqkd {

enum class Column : std::size_t {
    x_s,         ///< Alice's signal value
    x_a,         ///< Alice's mode, x_s plus preparation noise
    e,           ///< Eve's injected EPR arm
    x_b,         ///< Bob's mode
    x_e_prime,   ///< Eve's beam-splitter output
    x_e_dprime,  ///< Eve's retained EPR arm
    x_b_het,     ///< Bob's heterodyne Q outcome, (x_b + vacuum) / sqrt(2)
};

inline constexpr std::size_t kColumnCount = 7;

std::string_view column_name(Column column);

/// Seedable standard-normal stream.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

    double next();

private:
    double uniform_open();

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

using QuadratureRecord = std::array<double, kColumnCount>;

/// Draws one record per call from the linear model
///   x_b = sqrt(T) x_a + sqrt(1-T) e,  x_e' = -sqrt(1-T) x_a + sqrt(T) e.
class ProtocolSampler {
public:
    ProtocolSampler(const SourceParams& src, const ChannelParams& ch, std::uint64_t seed);

    QuadratureRecord next();

private:
    NormalStream normal_;
    double sd_signal_;
    double sd_prep_;
    double sd_epr_;
    double epr_gain_;
    double epr_residual_sd_;
    double sqrt_t_;
    double sqrt_1mt_;
};

struct SampleBatch {
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    SourceParams src;
    ChannelParams ch;
    std::array<std::vector<double>, kColumnCount> columns;

    std::span<const double> column(Column c) const {
        return columns[static_cast<std::size_t>(c)];
    }
};

SampleBatch sample_protocol(const SourceParams& src, const ChannelParams& ch, std::size_t n,
                            std::uint64_t seed);

/// Running first and second moments of all columns.
class SampleMoments {
public:
    void add(const QuadratureRecord& record);

    std::size_t count() const { return count_; }
    double mean(Column c) const;
    double covariance(Column x, Column y) const;
    double variance(Column c) const { return covariance(c, c); }
    /// V(y | x) = V(y) - cov(x, y)^2 / V(x)
    double conditional_variance(Column y, Column given) const;

    double variance_standard_error(Column c) const;
    double covariance_standard_error(Column x, Column y) const;
    double conditional_variance_standard_error(Column y, Column given) const;

private:
    std::size_t count_ = 0;
    std::array<double, kColumnCount> sum_{};
    std::array<std::array<double, kColumnCount>, kColumnCount> cross_{};
};

SampleMoments moments(const SampleBatch& batch);

/// Same draws as sample_protocol(src, ch, n, seed), accumulated without
/// storing the batch.
SampleMoments stream_moments(const SourceParams& src, const ChannelParams& ch, std::size_t n,
                             std::uint64_t seed);

inline constexpr std::size_t kMinMutualInformationSamples = 10'000;

/// 1/2 log2(V(y) / V(y | x)) from sample moments. InvalidArgument below
/// kMinMutualInformationSamples; NumericFailure for a degenerate variance.
double estimate_mi(const SampleMoments& m, Column x, Column y);
double estimate_mi(const SampleBatch& batch, Column x, Column y);

/// Large-sample standard error of estimate_mi, |rho| / (ln 2 sqrt(n)).
double estimate_mi_standard_error(const SampleMoments& m, Column x, Column y);

/// Heterodyne I(A:B): both quadratures behave identically and independently,
/// so it is twice the single-quadrature estimate on x_b_het.
double estimate_mi_heterodyne(const SampleMoments& m);

void write_csv(const SampleBatch& batch, std::ostream& out);

}  // namespace cvqkd
