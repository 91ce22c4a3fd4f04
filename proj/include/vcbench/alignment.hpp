#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "vcbench/media.hpp"
#include "vcbench/ssim.hpp"

namespace vcbench {

struct AlignmentPath {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (ref index, gen index)
  double total_cost = 0.0;
};

/// Dynamic time warping over a dense cost matrix (rows = reference frames,
/// columns = generated frames, row-major, all entries >= 0).
///
/// Steps are (1,0), (0,1), (1,1). When several predecessors give the same
/// accumulated cost the diagonal wins, then the step advancing the reference.
AlignmentPath dtw_align(std::span<const double> cost, std::size_t rows, std::size_t cols);

using FrameCost = std::function<double(const Frame&, const Frame&)>;
AlignmentPath dtw_align(const FrameSequence& ref, const FrameSequence& gen, const FrameCost& cost);

// Structural checks: anchored at both corners, monotone, unit steps.
bool is_valid_path(const AlignmentPath& path, std::size_t rows, std::size_t cols);

struct ConnectingDistanceConfig {
  int k = 8;             // correspondence pairs sampled across both sides
  int z = 8;             // middle frames sampled
  int min_distance = 1;  // floor on frame distances

  void validate() const;
};

// `count` indices evenly spread over [0, n): the first half rounds to nearest
// and the second half mirrors it, so reversing a sequence maps the sampled set
// onto itself whenever count is even.
std::vector<std::size_t> evenly_spaced(std::size_t n, std::size_t count);

// Sum with recursive halving; result depends only on the values, not on how
// many workers produced them.
double pairwise_sum(std::span<const double> values);

/// Video connecting distance.
///
/// The first N_s generated frames are aligned to the start clip and the last
/// N_e to the end clip by DTW with cost 1 - SSIM. K of the aligned
/// (original I, generated I_G) pairs are sampled across both sides and Z
/// frames I_M from the middle region [N_s, G - N_e). Each of the K*Z
/// combinations contributes
///   | SSIM(I, I_M) / d  -  SSIM(I_G, I_M) / d |,
/// with d the distance in the generated timeline between I_M and the aligned
/// generated index of the pair, floored at min_distance. The result is their
/// mean.
double connecting_distance(const EvaluationItem& item, const ConnectingDistanceConfig& cfg = {});

}  // namespace vcbench
