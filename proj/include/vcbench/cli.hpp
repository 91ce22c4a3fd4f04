#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vcbench/dataset.hpp"
#include "vcbench/feature_metrics.hpp"
#include "vcbench/scoring.hpp"

namespace vcbench::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitPartial = 2;

struct EvalOptions {
  std::filesystem::path manifest;
  std::filesystem::path generated_dir;  // files named <item id>.<ext>
  std::filesystem::path output_dir;
  std::string subject_backend = "stub-embed";
  std::string background_backend = "stub-embed";
  std::string aesthetic_backend = "stub-aesthetic";
  std::string quality_backend = "stub-quality";
  std::string perceptual_backend = "stub-perceptual";
  EvalConfig metrics;
  int workers = 1;
  std::uint64_t seed = 0;
  std::string model = "model";
};

// Writes <output>/reports/<id>.json per evaluated item, <output>/leaderboard.csv
// over the complete reports, and <output>/summary.json listing partial and
// missing items.
int run_eval(const EvalOptions& options, const BackendRegistry& registry, std::ostream& out,
             std::ostream& err);

struct BuildOptions {
  std::filesystem::path input_dir;
  std::filesystem::path output_dir;
  ClipExtractionPolicy policy;
  FilterConfig filters;
  std::string aesthetic_backend = "stub-aesthetic";
  std::uint64_t seed = 0;
  int workers = 1;
  bool plots = false;
};

// Writes <output>/manifest.json and <output>/summary.json, plus histogram
// SVGs under <output>/plots when requested.
int run_build(const BuildOptions& options, const BackendRegistry& registry, std::ostream& out,
              std::ostream& err);

struct LeaderboardOptions {
  std::vector<std::string> inputs;  // "model=reports_dir"
  std::optional<std::filesystem::path> output;
  std::optional<std::filesystem::path> radar;
};

int run_leaderboard(const LeaderboardOptions& options, std::ostream& out, std::ostream& err);

// Rater CSV: header "item_id,dimension,<rater>...", one row per item and
// dimension (VQS, SECS or TSS).
struct RaterTable {
  std::vector<std::string> raters;
  std::map<std::string, std::map<std::string, std::vector<double>>> scores;  // dimension -> item -> ratings
};

RaterTable parse_rater_csv(const std::string& text);

struct AlignmentRow {
  std::string dimension;
  double objective_mean = 0.0;
  double subjective_mean = 0.0;
  double correlation = 0.0;
  double icc = 0.0;
};

/// Per dimension: mean objective score, mean rating divided by rating_scale,
/// Pearson r between objective scores and per-item mean ratings, and
/// ICC(2,k) over the rating matrix. Item ids must match the reports exactly.
std::vector<AlignmentRow> human_alignment(const std::map<std::string, ScoreReport>& reports,
                                          const RaterTable& ratings, double rating_scale = 1.0);

std::string alignment_csv(const std::vector<AlignmentRow>& rows);

struct HumanAlignOptions {
  std::filesystem::path reports_dir;
  std::filesystem::path raters;
  double rating_scale = 1.0;
  std::optional<std::filesystem::path> output;
};

int run_human_align(const HumanAlignOptions& options, std::ostream& out, std::ostream& err);

// Reads every *.json report in a directory, keyed by item id.
std::map<std::string, ScoreReport> load_reports(const std::filesystem::path& dir);

// Parses argv-style arguments (without the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vcbench::cli
