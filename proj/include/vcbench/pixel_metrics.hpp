#pragma once

#include <optional>
#include <vector>

#include "vcbench/media.hpp"
#include "vcbench/ssim.hpp"

namespace vcbench {

// ---------------------------------------------------------------------------
// Block-matching optical flow

struct FlowVector {
  int u = 0;  // horizontal displacement, pixels
  int v = 0;  // vertical displacement, pixels
  bool operator==(const FlowVector&) const = default;
};

struct FlowField {
  int blocks_y = 0;
  int blocks_x = 0;
  int block_size = 16;
  int window = 16;
  std::vector<FlowVector> vectors;  // row-major over blocks

  const FlowVector& at(int by, int bx) const {
    return vectors[static_cast<std::size_t>(by) * blocks_x + bx];
  }
};

inline constexpr int kDefaultFlowBlock = 16;
inline constexpr int kDefaultFlowWindow = 16;

// Exhaustive SAD block matching of `a` against `b` over +/- window pixels.
//
// Blocks tile the top-left crop of the frame that is a multiple of
// block_size. Candidates whose displaced block leaves the frame are skipped.
// Ties go to the smaller |u| + |v|, then to the lexicographically smaller
// (u, v).
FlowField block_optical_flow(const Plane& a, const Plane& b, int block_size = kDefaultFlowBlock,
                             int window = kDefaultFlowWindow);
FlowField block_optical_flow(const Frame& a, const Frame& b, int block_size = kDefaultFlowBlock,
                             int window = kDefaultFlowWindow);

// Mean over blocks of |du| + |dv|.
double flow_manhattan_distance(const FlowField& a, const FlowField& b);

struct FlowConfig {
  int block_size = kDefaultFlowBlock;
  int window = kDefaultFlowWindow;
};

// ---------------------------------------------------------------------------
// Start-end consistency

/// Mean SSIM between each conditioning frame and the generated frame at the
/// same position: the first N_s generated frames against the start clip and
/// the last N_e against the end clip.
double pixel_consistency(const EvaluationItem& item);

/// Flow disagreement inside the conditioning windows, normalized by
/// 2 * window (32 for the default window of 16).
///
/// Flow is estimated between consecutive frames of each window separately, so
/// a window of N frames contributes N - 1 pairs and no pair straddles the
/// start/end boundary. Raw values can exceed 1 when the two flows point in
/// opposite directions; the scoring stage clamps.
double optical_flow_error(const EvaluationItem& item, const FlowConfig& cfg = {});

// ---------------------------------------------------------------------------
// Flicker

struct FlickerConfig {
  int patch_size = 32;
  double eta = 0.1;

  void validate() const;
};

// Per-patch change between two frames: L is the mean absolute Y difference,
// C the mean of (cyclic hue distance + saturation difference) / 2.
struct PatchChange {
  double luminance = 0.0;
  double color = 0.0;
};

/// Fraction of flickering patches per adjacent pair, averaged over pairs.
/// A patch flickers when (L + C) / 2 > eta. Any remainder of H or W that is
/// not a multiple of patch_size is cropped evenly from both sides.
double flicker_severity(const FrameSequence& video, const FlickerConfig& cfg = {});

// Flickering fraction for a single pair of frames.
double flicker_ratio(const Frame& a, const Frame& b, const FlickerConfig& cfg = {});

// ---------------------------------------------------------------------------
// Periodicity

struct PeriodicityConfig {
  double min_prominence = 0.05;
  int min_distance = 5;
  int min_peaks = 3;
  double max_gap_cv = 0.2;
};

struct PeriodReport {
  std::vector<double> ssim_series;   // SSIM(f_1, f_t), t = 2..N
  std::vector<int> peak_indices;     // indices into ssim_series
  std::optional<double> period_frames;
  bool is_periodic = false;
  bool degenerate = false;           // series constant at 1
};

// Local maxima of `series` with prominence >= min_prominence, then thinned so
// that kept peaks are at least min_distance apart (taller peaks win).
std::vector<int> find_peaks(const std::vector<double>& series, double min_prominence,
                            int min_distance);

// Topographic prominence of the local maximum at `peak`.
double peak_prominence(const std::vector<double>& series, int peak);

PeriodReport periodicity_detect(const FrameSequence& video, const PeriodicityConfig& cfg = {});

}  // namespace vcbench
