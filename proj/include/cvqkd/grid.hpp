#pragma once

#include <cstddef>
#include <vector>

namespace cvqkd {

enum class Spacing { linear, log };

/// Closed range [lo, hi] sampled at `steps` points, endpoints included.
struct AxisRange {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t steps = 2;
    Spacing spacing = Spacing::linear;

    /// InvalidArgument unless lo < hi, steps >= 2 and (for log) lo > 0.
    void validate() const;
    std::vector<double> values() const;
};

}  // namespace cvqkd
