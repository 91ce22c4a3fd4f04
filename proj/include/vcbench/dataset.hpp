#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vcbench/feature_metrics.hpp"
#include "vcbench/manifest.hpp"
#include "vcbench/media.hpp"
#include "vcbench/pixel_metrics.hpp"

namespace vcbench {

struct SceneCutList {
  std::vector<long> cuts;  // first frame of each new scene
  std::size_t scene_count() const noexcept { return cuts.size() + 1; }
};

struct SceneDetectConfig {
  double threshold = 0.3;  // fraction of the maximal histogram distance
  int min_scene_len = 12;  // frames
};

// Joint HSV histogram (8 hue x 4 saturation x 4 value bins), compared by half
// the L1 distance so the result lies in [0, 1].
double hsv_histogram_distance(const Frame& a, const Frame& b);

SceneCutList detect_scenes(const FrameSequence& video, const SceneDetectConfig& cfg = {});

struct PeriodicFilterResult {
  bool accept = true;
  PeriodReport report;
};

// Rejects videos whose SSIM-to-first-frame series is periodic. Constant
// videos are accepted with report.degenerate set.
PeriodicFilterResult filter_periodic(const FrameSequence& video, const PeriodicityConfig& cfg = {});

struct ClipExtractionPolicy {
  double total_seconds = 5.0;
  double min_clip_seconds = 2.0;
  double max_clip_seconds = 4.0;
  int transition_margin_frames = 3;

  void validate() const;
};

struct ClipWindows {
  FrameWindow start;
  FrameWindow end;
};

/// Start window at the head, end window at the tail, each lasting a duration
/// drawn uniformly from [min, max] seconds by a seeded generator. Draws are
/// repeated until the two windows together stay under total_seconds and
/// leave at least one frame between them. For two-scene videos the start
/// window ends before cut - margin and the end window begins after
/// cut + margin.
ClipWindows extract_clip_windows(std::size_t frame_count, double fps, const SceneCutList& cuts,
                                 const ClipExtractionPolicy& policy, std::uint64_t seed);

struct AestheticFilterResult {
  std::vector<ManifestEntry> kept;
  std::vector<std::string> log;
};

using EntryLoader = std::function<FrameSequence(const ManifestEntry&)>;

// Keeps entries whose mean normalized aesthetic score is >= min_normalized
// and writes the score into each kept entry. Entries whose video cannot be
// loaded or scored are dropped and logged.
AestheticFilterResult aesthetic_filter(std::vector<ManifestEntry> entries, const FrameScorer& scorer,
                                       double min_normalized, const EntryLoader& load);

struct FilterConfig {
  SceneDetectConfig scenes;
  PeriodicityConfig periodicity;
  double min_aesthetic = 0.5;
  std::optional<double> target_fps;
};

struct Histogram {
  double lo = 0.0;
  double bin_width = 1.0;
  std::vector<std::size_t> counts;

  Histogram() = default;
  Histogram(double low, double width, std::size_t bins) : lo(low), bin_width(width), counts(bins, 0) {}
  // Values past either end land in the first or last bin.
  void add(double value);
};

struct DatasetSummary {
  std::size_t scanned = 0;
  std::size_t accepted = 0;
  std::map<std::string, std::size_t> category_counts;
  std::map<std::string, std::size_t> rejections;  // reason -> count
  Histogram duration_seconds{0.0, 2.5, 18};
  Histogram aesthetic_score{0.0, 0.05, 20};
  Histogram caption_length{0.0, 5.0, 20};
};

std::string summary_to_json(const DatasetSummary& summary);

struct BuildResult {
  std::vector<ManifestEntry> entries;
  DatasetSummary summary;
  std::vector<std::string> warnings;
};

/// Scans input_dir recursively for decodable videos (in file-name order) and
/// runs decode, scene detection, the <= 2 scene rule, the periodic-motion
/// filter, the aesthetic filter, and window extraction on each. A file's
/// category and subcategory come from its first two parent directories
/// below input_dir, if any. Failures are recorded as warnings and skipped.
BuildResult build_manifest(const std::filesystem::path& input_dir, const ClipExtractionPolicy& policy,
                           const FilterConfig& filters, const FrameScorer& aesthetic_scorer,
                           std::uint64_t seed, int workers = 1);

}  // namespace vcbench
