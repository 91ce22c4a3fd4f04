#include "vcbench/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vcbench/error.hpp"

namespace vcbench {

AlignmentPath dtw_align(std::span<const double> cost, std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) fail(ErrorKind::InvalidArgument, "DTW needs non-empty sequences");
  if (cost.size() != rows * cols) fail(ErrorKind::Dimension, "DTW cost matrix has the wrong size");
  for (double c : cost) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      fail(ErrorKind::InvalidArgument, "DTW costs must be finite and non-negative");
    }
  }

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> acc(rows * cols, inf);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return acc[i * cols + j]; };

  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      double best;
      if (i == 0 && j == 0) {
        best = 0.0;
      } else {
        const double diag = (i > 0 && j > 0) ? at(i - 1, j - 1) : inf;
        const double up = (i > 0) ? at(i - 1, j) : inf;
        const double left = (j > 0) ? at(i, j - 1) : inf;
        best = std::min({diag, up, left});
      }
      at(i, j) = best + cost[i * cols + j];
    }
  }

  AlignmentPath path;
  path.total_cost = at(rows - 1, cols - 1);
  std::size_t i = rows - 1;
  std::size_t j = cols - 1;
  path.pairs.emplace_back(i, j);
  while (i > 0 || j > 0) {
    if (i == 0) {
      --j;
    } else if (j == 0) {
      --i;
    } else {
      const double diag = at(i - 1, j - 1);
      const double up = at(i - 1, j);
      const double left = at(i, j - 1);
      if (diag <= up && diag <= left) {
        --i;
        --j;
      } else if (up <= left) {
        --i;
      } else {
        --j;
      }
    }
    path.pairs.emplace_back(i, j);
  }
  std::reverse(path.pairs.begin(), path.pairs.end());
  return path;
}

AlignmentPath dtw_align(const FrameSequence& ref, const FrameSequence& gen, const FrameCost& cost) {
  std::vector<double> matrix(ref.size() * gen.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    for (std::size_t j = 0; j < gen.size(); ++j) matrix[i * gen.size() + j] = cost(ref[i], gen[j]);
  }
  return dtw_align(matrix, ref.size(), gen.size());
}

bool is_valid_path(const AlignmentPath& path, std::size_t rows, std::size_t cols) {
  const auto& p = path.pairs;
  if (p.empty() || p.front() != std::pair<std::size_t, std::size_t>{0, 0}) return false;
  if (p.back() != std::pair<std::size_t, std::size_t>{rows - 1, cols - 1}) return false;
  for (std::size_t k = 1; k < p.size(); ++k) {
    const std::size_t di = p[k].first - p[k - 1].first;
    const std::size_t dj = p[k].second - p[k - 1].second;
    if (p[k].first < p[k - 1].first || p[k].second < p[k - 1].second) return false;
    if (di > 1 || dj > 1 || di + dj == 0) return false;
  }
  return true;
}

void ConnectingDistanceConfig::validate() const {
  if (k < 1 || z < 1) fail(ErrorKind::InvalidArgument, "connecting distance needs K >= 1 and Z >= 1");
  if (min_distance < 1) fail(ErrorKind::InvalidArgument, "connecting distance min_distance must be >= 1");
}

std::vector<std::size_t> evenly_spaced(std::size_t n, std::size_t count) {
  if (n == 0 || count == 0) return {};
  std::vector<std::size_t> out(count);
  if (count == 1) {
    out[0] = (n - 1) / 2;
    return out;
  }
  const std::size_t span = n - 1;
  const std::size_t steps = count - 1;
  for (std::size_t k = 0; k < count / 2; ++k) {
    const std::size_t idx = (2 * k * span + steps) / (2 * steps);
    out[k] = idx;
    out[count - 1 - k] = span - idx;
  }
  if (count % 2 == 1) out[count / 2] = span / 2;
  return out;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

struct Correspondence {
  std::size_t original;   // index into the clip
  bool from_start;
  std::size_t generated;  // index in the generated timeline
};

std::vector<double> ssim_cost_matrix(const std::vector<SsimPrepared>& ref,
                                     const std::vector<SsimPrepared>& gen, std::size_t gen_offset,
                                     std::size_t gen_count) {
  std::vector<double> cost(ref.size() * gen_count);
  for (std::size_t i = 0; i < ref.size(); ++i) {
    for (std::size_t j = 0; j < gen_count; ++j) {
      cost[i * gen_count + j] = std::max(0.0, 1.0 - ssim(ref[i], gen[gen_offset + j]));
    }
  }
  return cost;
}

}  // namespace

double connecting_distance(const EvaluationItem& item, const ConnectingDistanceConfig& cfg) {
  cfg.validate();
  const std::size_t ns = item.start_length();
  const std::size_t ne = item.end_length();
  const std::size_t total = item.generated.size();
  if (total <= ns + ne) {
    fail(ErrorKind::DegenerateItem, "generated video has no middle region between the " +
                                        std::to_string(ns) + " leading and " +
                                        std::to_string(ne) + " trailing frames");
  }
  const auto start = prepare_ssim(item.clips.start);
  const auto end = prepare_ssim(item.clips.end);
  const auto gen = prepare_ssim(item.generated);
  const std::size_t tail = total - ne;

  const AlignmentPath start_path = dtw_align(ssim_cost_matrix(start, gen, 0, ns), ns, ns);
  const AlignmentPath end_path = dtw_align(ssim_cost_matrix(end, gen, tail, ne), ne, ne);

  std::vector<Correspondence> pairs;
  pairs.reserve(start_path.pairs.size() + end_path.pairs.size());
  for (const auto& [r, g] : start_path.pairs) pairs.push_back({r, true, g});
  for (const auto& [r, g] : end_path.pairs) pairs.push_back({r, false, tail + g});

  const auto pair_idx = evenly_spaced(pairs.size(), static_cast<std::size_t>(cfg.k));
  const auto mid_idx = evenly_spaced(tail - ns, static_cast<std::size_t>(cfg.z));

  std::vector<double> terms;
  terms.reserve(pair_idx.size() * mid_idx.size());
  for (std::size_t p : pair_idx) {
    const Correspondence& c = pairs[p];
    const SsimPrepared& original = c.from_start ? start[c.original] : end[c.original];
    for (std::size_t m : mid_idx) {
      const std::size_t middle = ns + m;
      const double gap = std::fabs(static_cast<double>(middle) - static_cast<double>(c.generated));
      const double d = std::max(gap, static_cast<double>(cfg.min_distance));
      const double s_orig = ssim(original, gen[middle]);
      const double s_gen = ssim(gen[c.generated], gen[middle]);
      terms.push_back(std::fabs(s_orig / d - s_gen / d));
    }
  }
  return pairwise_sum(terms) / static_cast<double>(terms.size());
}

}  // namespace vcbench
