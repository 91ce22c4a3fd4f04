#pragma once

#include <string>
#include <vector>

#include "vcbench/dataset.hpp"
#include "vcbench/scoring.hpp"

namespace vcbench {

// Static SVG bar chart of one histogram.
std::string histogram_svg(const Histogram& hist, const std::string& title, const std::string& x_label);

// Static SVG radar chart with one polygon per leaderboard row, drawn over the
// nine normalized metric means.
std::string radar_svg(const Leaderboard& board);

}  // namespace vcbench
