#pragma once

// Named reference datasets (rate curves, thresholds, boundaries) with their
// parameters baked in.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cvqkd/output.hpp"

namespace cvqkd {

std::vector<std::string> figure_names();

/// nullopt for an unknown name.
std::optional<OutputRecord> figure_dataset(std::string_view name);

}  // namespace cvqkd
