#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vcbench/alignment.hpp"
#include "vcbench/feature_metrics.hpp"
#include "vcbench/manifest.hpp"
#include "vcbench/media.hpp"
#include "vcbench/pixel_metrics.hpp"

namespace vcbench {

inline constexpr std::string_view kToolkitVersion = "1.0.0";

enum class Metric : std::size_t {
  SubjectConsistency,
  BackgroundConsistency,
  FlickeringSeverity,
  AestheticScore,
  ImagingQuality,
  PixelConsistency,
  OpticalFlowError,
  ConnectingDistance,
  LocalPerceptualConsistency,
};

inline constexpr std::size_t kMetricCount = 9;
inline constexpr std::array<Metric, kMetricCount> kAllMetrics{
    Metric::SubjectConsistency, Metric::BackgroundConsistency, Metric::FlickeringSeverity,
    Metric::AestheticScore,     Metric::ImagingQuality,        Metric::PixelConsistency,
    Metric::OpticalFlowError,   Metric::ConnectingDistance,    Metric::LocalPerceptualConsistency,
};

// Short key used in report files, e.g. "Q_S".
std::string_view metric_key(Metric m) noexcept;
// Column title used in leaderboards, e.g. "Subject Consistency".
std::string_view metric_title(Metric m) noexcept;
// True for metrics where lower is better (Q_F, C_OF, T_CD).
bool is_negative_oriented(Metric m) noexcept;

struct MetricVector {
  std::array<double, kMetricCount> values{};

  double& operator[](Metric m) { return values[static_cast<std::size_t>(m)]; }
  double operator[](Metric m) const { return values[static_cast<std::size_t>(m)]; }
  bool operator==(const MetricVector&) const = default;
};

// Builds a vector in column order Q_S, Q_B, Q_F, Q_A, Q_I, C_P, C_OF, T_CD, T_LP.
MetricVector make_metric_vector(double q_s, double q_b, double q_f, double q_a, double q_i,
                                double c_p, double c_of, double t_cd, double t_lp);

// 1 - value for negative-oriented metrics, then clamp to [0, 1].
double normalize_metric(Metric m, double raw);
MetricVector normalize_metrics(const MetricVector& raw);

// Inputs below are normalized vectors (negative metrics already inverted).
double video_quality_score(const MetricVector& normalized);
double start_end_consistency_score(const MetricVector& normalized);
double transition_smoothness_score(const MetricVector& normalized);
double total_score(double vqs, double secs, double tss);

struct DimensionScores {
  double vqs = 0.0;
  double secs = 0.0;
  double tss = 0.0;
  double score = 0.0;
};

// normalize -> dimension means -> total.
DimensionScores score_raw_metrics(const MetricVector& raw);

// ---------------------------------------------------------------------------

struct EvalConfig {
  FlickerConfig flicker;
  FlowConfig flow;
  ConnectingDistanceConfig connecting;
};

// Non-owning view of the five backends one evaluation uses.
struct BackendSet {
  const FrameEmbedder& subject;
  const FrameEmbedder& background;
  const FrameScorer& aesthetic;
  const FrameScorer& quality;
  const PerceptualExtractor& perceptual;

  std::map<std::string, std::string> names() const;
};

// Hex FNV-1a digest over the metric parameters, backend names, and toolkit
// version. Reports with different digests are not comparable.
std::string config_digest(const EvalConfig& config, const std::map<std::string, std::string>& backend_names);

using OptionalMetrics = std::array<std::optional<double>, kMetricCount>;

struct ScoreReport {
  std::string item_id;
  OptionalMetrics metrics;             // raw values
  OptionalMetrics metrics_normalized;  // after inversion and clamping
  std::optional<double> vqs;
  std::optional<double> secs;
  std::optional<double> tss;
  std::optional<double> score;
  std::map<std::string, std::string> backend_names;
  std::string config_digest;
  std::map<std::string, std::string> errors;  // metric key -> "kind: message"

  bool partial() const noexcept { return !errors.empty() || !score.has_value(); }
  std::optional<MetricVector> raw_vector() const;
  std::optional<MetricVector> normalized_vector() const;
};

// Fills normalized values and whichever dimension scores have all inputs.
void finalize_report(ScoreReport& report);

std::string report_to_json(const ScoreReport& report);
ScoreReport report_from_json(const std::string& text);

/// Computes all nine metrics for one item. A failing metric is recorded in
/// `errors` and leaves its value, its dimension, and the total empty.
ScoreReport evaluate_item(const EvaluationItem& item, const BackendSet& backends,
                          const EvalConfig& config);

struct MultiClipResult {
  std::vector<ScoreReport> junctions;
  ScoreReport mean;
};

/// Evaluates a generated video stitched from several clips. `placements[k]`
/// is where clip k sits in the generated timeline; junction k pairs clip k
/// with clip k + 1 over generated frames placements[k].first ..
/// placements[k + 1].last.
MultiClipResult evaluate_multiclip(const std::string& id, const std::vector<FrameSequence>& clips,
                                   const FrameSequence& generated,
                                   const std::vector<FrameWindow>& placements,
                                   const BackendSet& backends, const EvalConfig& config);

// Mean of complete reports; used for multi-clip mean rows.
ScoreReport mean_report(const std::string& id, const std::vector<ScoreReport>& reports);

// ---------------------------------------------------------------------------

struct LeaderboardRow {
  std::string model;
  std::size_t reports = 0;
  MetricVector mean_raw;
  MetricVector mean_normalized;
  double vqs = 0.0;
  double secs = 0.0;
  double tss = 0.0;
  double score = 0.0;
};

struct Leaderboard {
  std::vector<LeaderboardRow> rows;  // total score descending, ties by model name
  std::string config_digest;
};

// Every report must be complete and share one config digest.
Leaderboard build_leaderboard(const std::map<std::string, std::vector<ScoreReport>>& by_model);

// Comma-separated table: Model, the nine metric titles (raw values), Total Score.
std::string leaderboard_csv(const Leaderboard& board);

}  // namespace vcbench
