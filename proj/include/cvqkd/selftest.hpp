#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cvqkd/spectrum.hpp"

namespace cvqkd {

struct SelfTestOptions {
    PhysicalConstants constants = kSiConstants;
    std::size_t spectrum_draws = 200;
    std::size_t mc_samples = 200'000;
    std::uint64_t seed = 20120101;
};

struct SelfTestCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Dual-path spectrum checks, a reduced Monte-Carlo Shannon check and the
/// anchor-value regression table.
std::vector<SelfTestCheck> run_selftest(const SelfTestOptions& options = {});

}  // namespace cvqkd
