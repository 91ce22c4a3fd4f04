#include "vcbench/pixel_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "vcbench/error.hpp"

namespace vcbench {

// ---------------------------------------------------------------------------
// Flow

FlowField block_optical_flow(const Plane& a, const Plane& b, int block_size, int window) {
  if (a.height != b.height || a.width != b.width) {
    fail(ErrorKind::Dimension, "flow inputs differ in shape");
  }
  if (block_size <= 0 || window < 0) {
    fail(ErrorKind::InvalidArgument, "flow block size must be positive and window non-negative");
  }
  if (a.height < block_size || a.width < block_size) {
    fail(ErrorKind::Dimension, "frame " + std::to_string(a.height) + "x" +
                                   std::to_string(a.width) + " is smaller than one " +
                                   std::to_string(block_size) + "px block");
  }
  FlowField field;
  field.block_size = block_size;
  field.window = window;
  field.blocks_y = a.height / block_size;
  field.blocks_x = a.width / block_size;
  field.vectors.reserve(static_cast<std::size_t>(field.blocks_y) * field.blocks_x);

  for (int by = 0; by < field.blocks_y; ++by) {
    for (int bx = 0; bx < field.blocks_x; ++bx) {
      const int y0 = by * block_size;
      const int x0 = bx * block_size;
      double best_cost = std::numeric_limits<double>::infinity();
      FlowVector best{};
      for (int v = -window; v <= window; ++v) {
        if (y0 + v < 0 || y0 + v + block_size > b.height) continue;
        for (int u = -window; u <= window; ++u) {
          if (x0 + u < 0 || x0 + u + block_size > b.width) continue;
          double cost = 0.0;
          for (int y = 0; y < block_size && cost <= best_cost; ++y) {
            const double* ra = &a.values[static_cast<std::size_t>(y0 + y) * a.width + x0];
            const double* rb = &b.values[static_cast<std::size_t>(y0 + y + v) * b.width + x0 + u];
            for (int x = 0; x < block_size; ++x) cost += std::fabs(ra[x] - rb[x]);
          }
          bool better = cost < best_cost;
          if (!better && cost == best_cost) {
            const int l1 = std::abs(u) + std::abs(v);
            const int best_l1 = std::abs(best.u) + std::abs(best.v);
            better = l1 < best_l1 ||
                     (l1 == best_l1 && (u < best.u || (u == best.u && v < best.v)));
          }
          if (better) {
            best_cost = cost;
            best = {u, v};
          }
        }
      }
      field.vectors.push_back(best);
    }
  }
  return field;
}

FlowField block_optical_flow(const Frame& a, const Frame& b, int block_size, int window) {
  return block_optical_flow(luma(a), luma(b), block_size, window);
}

double flow_manhattan_distance(const FlowField& a, const FlowField& b) {
  if (a.vectors.size() != b.vectors.size() || a.vectors.empty()) {
    fail(ErrorKind::Dimension, "flow fields differ in block layout");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < a.vectors.size(); ++i) {
    total += std::abs(a.vectors[i].u - b.vectors[i].u) + std::abs(a.vectors[i].v - b.vectors[i].v);
  }
  return total / static_cast<double>(a.vectors.size());
}

// ---------------------------------------------------------------------------
// Start-end consistency

double pixel_consistency(const EvaluationItem& item) {
  const auto& gen = item.generated;
  const std::size_t ns = item.start_length();
  const std::size_t ne = item.end_length();
  const std::size_t offset = gen.size() - ne;
  double total = 0.0;
  for (std::size_t t = 0; t < ns; ++t) total += ssim(item.clips.start[t], gen[t]);
  for (std::size_t t = 0; t < ne; ++t) total += ssim(item.clips.end[t], gen[offset + t]);
  return total / static_cast<double>(ns + ne);
}

namespace {

// Sum of per-pair flow distances between consecutive frames of `orig` and of
// `gen` starting at `gen_offset`.
double window_flow_error(const FrameSequence& orig, const FrameSequence& gen,
                         std::size_t gen_offset, const FlowConfig& cfg) {
  double total = 0.0;
  Plane prev_o = luma(orig[0]);
  Plane prev_g = luma(gen[gen_offset]);
  for (std::size_t t = 1; t < orig.size(); ++t) {
    Plane cur_o = luma(orig[t]);
    Plane cur_g = luma(gen[gen_offset + t]);
    const FlowField fo = block_optical_flow(prev_o, cur_o, cfg.block_size, cfg.window);
    const FlowField fg = block_optical_flow(prev_g, cur_g, cfg.block_size, cfg.window);
    total += flow_manhattan_distance(fo, fg);
    prev_o = std::move(cur_o);
    prev_g = std::move(cur_g);
  }
  return total;
}

}  // namespace

double optical_flow_error(const EvaluationItem& item, const FlowConfig& cfg) {
  const std::size_t ns = item.start_length();
  const std::size_t ne = item.end_length();
  if (ns < 2 || ne < 2) {
    fail(ErrorKind::DegenerateWindow,
         "optical flow error needs at least 2 frames in each conditioning window (got " +
             std::to_string(ns) + " and " + std::to_string(ne) + ")");
  }
  if (cfg.window <= 0) fail(ErrorKind::InvalidArgument, "flow window must be positive");
  const auto& gen = item.generated;
  const double total = window_flow_error(item.clips.start, gen, 0, cfg) +
                       window_flow_error(item.clips.end, gen, gen.size() - ne, cfg);
  const double pairs = static_cast<double>((ns - 1) + (ne - 1));
  return total / pairs / (2.0 * cfg.window);
}

// ---------------------------------------------------------------------------
// Flicker

void FlickerConfig::validate() const {
  if (patch_size < 2) fail(ErrorKind::InvalidArgument, "flicker patch size must be >= 2");
  if (!(eta > 0.0 && eta < 1.0)) fail(ErrorKind::InvalidArgument, "flicker eta must lie in (0, 1)");
}

namespace {

struct FlickerPlanes {
  Plane y;
  Plane hue;
  Plane sat;
};

FlickerPlanes flicker_planes(const Frame& f) {
  PlaneSet hsv = rgb_to_hsv(f);
  return {luma(f), std::move(hsv.first), std::move(hsv.second)};
}

double pair_ratio(const FlickerPlanes& a, const FlickerPlanes& b, const FlickerConfig& cfg) {
  const int p = cfg.patch_size;
  const int h = a.y.height;
  const int w = a.y.width;
  const int rows = h / p;
  const int cols = w / p;
  const int oy = (h - rows * p) / 2;
  const int ox = (w - cols * p) / 2;
  const double area = static_cast<double>(p) * p;
  int flickering = 0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double lum = 0.0;
      double col = 0.0;
      for (int y = oy + r * p; y < oy + (r + 1) * p; ++y) {
        for (int x = ox + c * p; x < ox + (c + 1) * p; ++x) {
          lum += std::fabs(a.y.at(y, x) - b.y.at(y, x));
          col += 0.5 * (hue_distance(a.hue.at(y, x), b.hue.at(y, x)) +
                        std::fabs(a.sat.at(y, x) - b.sat.at(y, x)));
        }
      }
      const PatchChange change{lum / area, col / area};
      if ((change.luminance + change.color) / 2.0 > cfg.eta) ++flickering;
    }
  }
  return static_cast<double>(flickering) / (static_cast<double>(rows) * cols);
}

void check_patch(const Frame& f, const FlickerConfig& cfg) {
  cfg.validate();
  if (cfg.patch_size > f.height() || cfg.patch_size > f.width()) {
    fail(ErrorKind::Dimension, "flicker patch of " + std::to_string(cfg.patch_size) +
                                   "px does not fit a " + std::to_string(f.height()) + "x" +
                                   std::to_string(f.width()) + " frame");
  }
}

}  // namespace

double flicker_ratio(const Frame& a, const Frame& b, const FlickerConfig& cfg) {
  if (!a.same_shape(b)) fail(ErrorKind::Dimension, "flicker inputs differ in shape");
  check_patch(a, cfg);
  return pair_ratio(flicker_planes(a), flicker_planes(b), cfg);
}

double flicker_severity(const FrameSequence& video, const FlickerConfig& cfg) {
  if (video.size() < 2) fail(ErrorKind::TooFewFrames, "flicker severity needs at least 2 frames");
  check_patch(video[0], cfg);
  double total = 0.0;
  FlickerPlanes prev = flicker_planes(video[0]);
  for (std::size_t t = 1; t < video.size(); ++t) {
    FlickerPlanes cur = flicker_planes(video[t]);
    total += pair_ratio(prev, cur, cfg);
    prev = std::move(cur);
  }
  return total / static_cast<double>(video.size() - 1);
}

// ---------------------------------------------------------------------------
// Periodicity

double peak_prominence(const std::vector<double>& s, int peak) {
  const double top = s[peak];
  double left_min = top;
  for (int i = peak; i >= 0 && s[i] <= top; --i) left_min = std::min(left_min, s[i]);
  double right_min = top;
  for (int i = peak; i < static_cast<int>(s.size()) && s[i] <= top; ++i) {
    right_min = std::min(right_min, s[i]);
  }
  return top - std::max(left_min, right_min);
}

std::vector<int> find_peaks(const std::vector<double>& s, double min_prominence,
                            int min_distance) {
  const int n = static_cast<int>(s.size());
  std::vector<int> maxima;
  // Plateaus report their middle sample; series edges are never peaks.
  for (int i = 1; i < n - 1;) {
    if (s[i - 1] < s[i]) {
      int ahead = i + 1;
      while (ahead < n - 1 && s[ahead] == s[i]) ++ahead;
      if (s[ahead] < s[i]) {
        maxima.push_back((i + ahead - 1) / 2);
        i = ahead;
        continue;
      }
    }
    ++i;
  }

  std::vector<int> prominent;
  for (int p : maxima) {
    if (peak_prominence(s, p) >= min_prominence) prominent.push_back(p);
  }
  if (min_distance <= 1 || prominent.size() < 2) return prominent;

  std::vector<std::size_t> order(prominent.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return s[prominent[x]] > s[prominent[y]];
  });
  std::vector<bool> keep(prominent.size(), true);
  for (std::size_t idx : order) {
    if (!keep[idx]) continue;
    for (std::size_t j = 0; j < prominent.size(); ++j) {
      if (j != idx && keep[j] && std::abs(prominent[j] - prominent[idx]) < min_distance) {
        keep[j] = false;
      }
    }
  }
  std::vector<int> out;
  for (std::size_t j = 0; j < prominent.size(); ++j) {
    if (keep[j]) out.push_back(prominent[j]);
  }
  return out;
}

PeriodReport periodicity_detect(const FrameSequence& video, const PeriodicityConfig& cfg) {
  if (video.size() < 3) fail(ErrorKind::TooFewFrames, "periodicity detection needs at least 3 frames");
  PeriodReport report;
  const SsimPrepared first = prepare_ssim(video[0]);
  report.ssim_series.reserve(video.size() - 1);
  for (std::size_t t = 1; t < video.size(); ++t) {
    report.ssim_series.push_back(ssim(first, prepare_ssim(video[t])));
  }
  report.degenerate = std::all_of(report.ssim_series.begin(), report.ssim_series.end(),
                                  [](double v) { return std::fabs(v - 1.0) <= 1e-9; });
  if (report.degenerate) return report;

  report.peak_indices = find_peaks(report.ssim_series, cfg.min_prominence, cfg.min_distance);
  const auto& peaks = report.peak_indices;
  if (peaks.size() < 2) return report;

  std::vector<double> gaps;
  for (std::size_t i = 1; i < peaks.size(); ++i) gaps.push_back(peaks[i] - peaks[i - 1]);
  const double mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / gaps.size();
  double var = 0.0;
  for (double g : gaps) var += (g - mean) * (g - mean);
  var /= static_cast<double>(gaps.size());
  report.period_frames = mean;
  report.is_periodic = static_cast<int>(peaks.size()) >= cfg.min_peaks &&
                       std::sqrt(var) / mean <= cfg.max_gap_cv;
  return report;
}

}  // namespace vcbench
