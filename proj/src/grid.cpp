#include "cvqkd/grid.hpp"

#include <cmath>

#include "cvqkd/error.hpp"

namespace cvqkd {

void AxisRange::validate() const {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw InvalidArgument("axis range requires finite lo < hi");
    }
    if (steps < 2) {
        throw InvalidArgument("axis range requires at least 2 steps");
    }
    if (spacing == Spacing::log && !(lo > 0.0)) {
        throw InvalidArgument("log-spaced axis range requires lo > 0");
    }
}

std::vector<double> AxisRange::values() const {
    validate();
    std::vector<double> out(steps);
    const double last = static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i) {
        const double frac = static_cast<double>(i) / last;
        if (spacing == Spacing::linear) {
            out[i] = lo + (hi - lo) * frac;
        } else {
            out[i] = lo * std::pow(hi / lo, frac);
        }
    }
    // Pin endpoints exactly; pow/affine roundoff would otherwise leak past them.
    out.front() = lo;
    out.back() = hi;
    return out;
}

}  // namespace cvqkd
