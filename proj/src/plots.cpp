#include "vcbench/plots.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace vcbench {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                              "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

}  // namespace

std::string histogram_svg(const Histogram& hist, const std::string& title, const std::string& x_label) {
  constexpr double kWidth = 640, kHeight = 400, kLeft = 60, kRight = 20, kTop = 40, kBottom = 60;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const std::size_t peak = hist.counts.empty() ? 0 : *std::max_element(hist.counts.begin(), hist.counts.end());
  const double scale = peak == 0 ? 0.0 : plot_h / static_cast<double>(peak);
  const double bar_w = hist.counts.empty() ? 0.0 : plot_w / static_cast<double>(hist.counts.size());

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << escape(title)
      << "</text>\n";
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    const double h = static_cast<double>(hist.counts[i]) * scale;
    svg << "<rect x=\"" << num(kLeft + bar_w * static_cast<double>(i)) << "\" y=\"" << num(kTop + plot_h - h)
        << "\" width=\"" << num(bar_w * 0.9) << "\" height=\"" << num(h) << "\" fill=\"" << kPalette[0]
        << "\"/>\n";
  }
  const double bottom = kTop + plot_h;
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << bottom << "\" x2=\"" << kLeft + plot_w << "\" y2=\"" << bottom
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << bottom
      << "\" stroke=\"black\"/>\n";
  const std::size_t step = std::max<std::size_t>(1, hist.counts.size() / 6);
  for (std::size_t i = 0; i <= hist.counts.size(); i += step) {
    const double x = kLeft + bar_w * static_cast<double>(i);
    svg << "<text x=\"" << num(x) << "\" y=\"" << bottom + 16 << "\" text-anchor=\"middle\">"
        << num(hist.lo + hist.bin_width * static_cast<double>(i)) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << kTop + 4 << "\" text-anchor=\"end\">" << peak << "</text>\n";
  svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << bottom << "\" text-anchor=\"end\">0</text>\n";
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 16 << "\" text-anchor=\"middle\">"
      << escape(x_label) << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

std::string radar_svg(const Leaderboard& board) {
  constexpr double kSize = 640, kRadius = 220;
  const double cx = kSize / 2, cy = kSize / 2 + 10;
  auto point = [&](std::size_t axis, double r) {
    const double angle = -std::numbers::pi / 2 + 2 * std::numbers::pi * static_cast<double>(axis) / kMetricCount;
    return std::pair{cx + r * kRadius * std::cos(angle), cy + r * kRadius * std::sin(angle)};
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize + 40
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (double ring : {0.25, 0.5, 0.75, 1.0}) {
    svg << "<polygon fill=\"none\" stroke=\"#cccccc\" points=\"";
    for (std::size_t a = 0; a < kMetricCount; ++a) {
      const auto [x, y] = point(a, ring);
      svg << num(x) << ',' << num(y) << ' ';
    }
    svg << "\"/>\n";
  }
  for (std::size_t a = 0; a < kMetricCount; ++a) {
    const auto [x, y] = point(a, 1.0);
    const auto [lx, ly] = point(a, 1.12);
    svg << "<line x1=\"" << cx << "\" y1=\"" << cy << "\" x2=\"" << num(x) << "\" y2=\"" << num(y)
        << "\" stroke=\"#cccccc\"/>\n";
    svg << "<text x=\"" << num(lx) << "\" y=\"" << num(ly) << "\" text-anchor=\"middle\">"
        << escape(std::string(metric_title(kAllMetrics[a]))) << "</text>\n";
  }
  for (std::size_t r = 0; r < board.rows.size(); ++r) {
    const auto& row = board.rows[r];
    const char* color = kPalette[r % kPalette.size()];
    svg << "<polygon fill=\"" << color << "\" fill-opacity=\"0.15\" stroke=\"" << color << "\" points=\"";
    for (std::size_t a = 0; a < kMetricCount; ++a) {
      const auto [x, y] = point(a, std::clamp(row.mean_normalized[kAllMetrics[a]], 0.0, 1.0));
      svg << num(x) << ',' << num(y) << ' ';
    }
    svg << "\"/>\n";
    svg << "<rect x=\"10\" y=\"" << 10 + 16 * r << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n";
    svg << "<text x=\"26\" y=\"" << 19 + 16 * r << "\">" << escape(row.model) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace vcbench
