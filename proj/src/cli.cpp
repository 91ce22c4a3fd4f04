#include "vcbench/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vcbench/error.hpp"
#include "vcbench/parallel.hpp"
#include "vcbench/plots.hpp"
#include "vcbench/stats.hpp"
#include "vcbench/video_io.hpp"

namespace vcbench::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) fail(ErrorKind::Configuration, path.string() + ": cannot write");
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::Configuration, path.string() + ": cannot read");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Backends one worker evaluates with.
struct BackendBundle {
  std::unique_ptr<FrameEmbedder> subject;
  std::unique_ptr<FrameEmbedder> background;
  std::unique_ptr<FrameScorer> aesthetic;
  std::unique_ptr<FrameScorer> quality;
  std::unique_ptr<PerceptualExtractor> perceptual;

  BackendSet view() const { return {*subject, *background, *aesthetic, *quality, *perceptual}; }
};

BackendBundle make_bundle(const EvalOptions& o, const BackendRegistry& registry) {
  BackendBundle b;
  b.subject = registry.make_embedder(o.subject_backend);
  b.background = registry.make_embedder(o.background_backend);
  b.aesthetic = registry.make_scorer(o.aesthetic_backend);
  b.quality = registry.make_scorer(o.quality_backend);
  b.perceptual = registry.make_extractor(o.perceptual_backend);
  return b;
}

bool all_reentrant(const BackendBundle& b) {
  return b.subject->reentrant() && b.background->reentrant() && b.aesthetic->reentrant() &&
         b.quality->reentrant() && b.perceptual->reentrant();
}

void validate_metrics(const EvalConfig& c) {
  c.flicker.validate();
  c.connecting.validate();
  if (c.flow.block_size < 1 || c.flow.window < 1) {
    fail(ErrorKind::Configuration, "flow block size and search window must be >= 1");
  }
}

fs::path resolve_source(const ManifestEntry& entry, const fs::path& manifest) {
  fs::path p(entry.path);
  if (p.is_absolute() || fs::exists(p)) return p;
  return manifest.parent_path() / p;
}

std::map<std::string, std::vector<fs::path>> index_generated(const fs::path& dir) {
  const auto exts = supported_video_extensions();
  std::map<std::string, std::vector<fs::path>> by_stem;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const std::string ext = lower(e.path().extension().string());
    if (std::find(exts.begin(), exts.end(), ext) == exts.end()) continue;
    by_stem[e.path().stem().string()].push_back(e.path());
  }
  for (auto& [_, paths] : by_stem) std::sort(paths.begin(), paths.end());
  return by_stem;
}

ScoreReport evaluate_entry(const ManifestEntry& entry, const fs::path& source, const fs::path& generated_path,
                           const BackendSet& backends, const EvalConfig& config) {
  const FrameSequence original = decode_video(source, entry.fps);
  const auto n = static_cast<long>(original.size());
  if (entry.start_window.last >= n || entry.end_window.last >= n) {
    fail(ErrorKind::Manifest, "clip windows exceed the " + std::to_string(n) + " decoded frames");
  }
  auto window = [&](const FrameWindow& w) {
    return original.slice(static_cast<std::size_t>(w.first), static_cast<std::size_t>(w.length()));
  };
  FrameSequence generated = decode_video(generated_path, entry.fps);
  std::optional<std::string> prompt;
  if (!entry.caption.empty()) prompt = entry.caption;
  EvaluationItem item(entry.id, ClipPair(window(entry.start_window), window(entry.end_window)),
                      std::move(generated), prompt, entry.category, entry.subcategory);
  return evaluate_item(item, backends, config);
}

ScoreReport failed_report(const std::string& id, const std::string& why, const BackendSet& backends,
                          const EvalConfig& config) {
  ScoreReport r;
  r.item_id = id;
  r.backend_names = backends.names();
  r.config_digest = config_digest(config, r.backend_names);
  r.errors["item"] = why;
  finalize_report(r);
  return r;
}

std::string describe_error(const std::exception& ex) {
  if (const auto* e = dynamic_cast<const Error*>(&ex)) {
    return std::string(error_kind_name(e->kind())) + ": " + e->what();
  }
  return std::string("error: ") + ex.what();
}

}  // namespace

int run_eval(const EvalOptions& o, const BackendRegistry& registry, std::ostream& out, std::ostream& err) {
  std::vector<ManifestEntry> entries;
  std::vector<BackendBundle> bundles;
  std::map<std::string, std::vector<fs::path>> generated;
  try {
    if (o.workers < 1) fail(ErrorKind::Configuration, "workers must be >= 1");
    validate_metrics(o.metrics);
    if (!fs::is_directory(o.generated_dir)) {
      fail(ErrorKind::Configuration, o.generated_dir.string() + ": generated-videos directory not found");
    }
    entries = load_manifest(o.manifest);
    bundles.push_back(make_bundle(o, registry));
    // Backends that are not reentrant get one instance per worker.
    if (!all_reentrant(bundles.front())) {
      for (int w = 1; w < o.workers; ++w) bundles.push_back(make_bundle(o, registry));
    }
    generated = index_generated(o.generated_dir);
    fs::create_directories(o.output_dir / "reports");
  } catch (const std::exception& ex) {
    err << "vcbench eval: " << ex.what() << '\n';
    return kExitConfig;
  }

  enum class Status { Complete, Partial, Missing };
  std::vector<std::optional<ScoreReport>> reports(entries.size());
  std::vector<Status> status(entries.size(), Status::Missing);

  parallel_for(entries.size(), o.workers, [&](std::size_t worker, std::size_t i) {
    const BackendBundle& bundle = bundles[std::min(worker, bundles.size() - 1)];
    const BackendSet backends = bundle.view();
    const ManifestEntry& entry = entries[i];
    auto it = generated.find(entry.id);
    if (it == generated.end()) return;
    ScoreReport report;
    if (it->second.size() > 1) {
      std::string names;
      for (const auto& p : it->second) names += (names.empty() ? "" : ", ") + p.filename().string();
      report = failed_report(entry.id, "configuration: ambiguous generated files: " + names, backends, o.metrics);
    } else {
      try {
        report = evaluate_entry(entry, resolve_source(entry, o.manifest), it->second.front(), backends, o.metrics);
      } catch (const std::exception& ex) {
        report = failed_report(entry.id, describe_error(ex), backends, o.metrics);
      }
    }
    status[i] = report.partial() ? Status::Partial : Status::Complete;
    reports[i] = std::move(report);
  });

  std::vector<ScoreReport> complete;
  json partial = json::array();
  json missing = json::array();
  try {
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (status[i] == Status::Missing) {
        missing.push_back(entries[i].id);
        err << "vcbench eval: " << entries[i].id << ": no generated video found\n";
        continue;
      }
      write_file(o.output_dir / "reports" / (entries[i].id + ".json"), report_to_json(*reports[i]));
      if (status[i] == Status::Partial) {
        json item{{"id", entries[i].id}, {"errors", reports[i]->errors}};
        partial.push_back(item);
        err << "vcbench eval: " << entries[i].id << ": partial report\n";
      } else {
        complete.push_back(*reports[i]);
      }
    }

    Leaderboard board;
    if (!complete.empty()) board = build_leaderboard({{o.model, complete}});
    write_file(o.output_dir / "leaderboard.csv", leaderboard_csv(board));

    const auto names = bundles.front().view().names();
    const json summary{
        {"model", o.model},
        {"items", entries.size()},
        {"complete", complete.size()},
        {"partial", partial},
        {"missing", missing},
        {"backend_names", names},
        {"config_digest", config_digest(o.metrics, names)},
        {"seed", o.seed},
    };
    write_file(o.output_dir / "summary.json", summary.dump(2) + "\n");
  } catch (const std::exception& ex) {
    err << "vcbench eval: " << ex.what() << '\n';
    return kExitConfig;
  }

  out << "evaluated " << entries.size() << " items: " << complete.size() << " complete, " << partial.size()
      << " partial, " << missing.size() << " missing\n";
  return complete.size() == entries.size() ? kExitOk : kExitPartial;
}

int run_build(const BuildOptions& o, const BackendRegistry& registry, std::ostream& out, std::ostream& err) {
  BuildResult result;
  try {
    if (o.workers < 1) fail(ErrorKind::Configuration, "workers must be >= 1");
    const auto scorer = registry.make_scorer(o.aesthetic_backend);
    result = build_manifest(o.input_dir, o.policy, o.filters, *scorer, o.seed, o.workers);
    fs::create_directories(o.output_dir);
    save_manifest(result.entries, o.output_dir / "manifest.json");
    write_file(o.output_dir / "summary.json", summary_to_json(result.summary));
    if (o.plots) {
      const fs::path dir = o.output_dir / "plots";
      write_file(dir / "duration.svg",
                 histogram_svg(result.summary.duration_seconds, "Video duration", "seconds"));
      write_file(dir / "aesthetic.svg",
                 histogram_svg(result.summary.aesthetic_score, "Aesthetic score", "normalized score"));
      write_file(dir / "caption_length.svg",
                 histogram_svg(result.summary.caption_length, "Caption length", "characters"));
    }
  } catch (const std::exception& ex) {
    err << "vcbench build: " << ex.what() << '\n';
    return kExitConfig;
  }
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  out << "scanned " << result.summary.scanned << " videos, accepted " << result.summary.accepted
      << ", warnings: " << result.warnings.size() << '\n';
  return kExitOk;
}

std::map<std::string, ScoreReport> load_reports(const fs::path& dir) {
  if (!fs::is_directory(dir)) fail(ErrorKind::Configuration, dir.string() + ": reports directory not found");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::map<std::string, ScoreReport> reports;
  for (const auto& f : files) {
    ScoreReport r;
    try {
      r = report_from_json(read_file(f));
    } catch (const std::exception& ex) {
      fail(ErrorKind::Configuration, f.string() + ": " + ex.what());
    }
    const std::string id = r.item_id;
    if (!reports.emplace(id, std::move(r)).second) {
      fail(ErrorKind::Configuration, dir.string() + ": duplicate report for item " + id);
    }
  }
  return reports;
}

int run_leaderboard(const LeaderboardOptions& o, std::ostream& out, std::ostream& err) {
  try {
    if (o.inputs.empty()) fail(ErrorKind::Configuration, "at least one model=reports_dir input is required");
    std::map<std::string, std::vector<ScoreReport>> by_model;
    for (const auto& spec : o.inputs) {
      const auto eq = spec.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
        fail(ErrorKind::Configuration, "expected model=reports_dir, got '" + spec + "'");
      }
      const std::string model = spec.substr(0, eq);
      if (by_model.count(model)) fail(ErrorKind::Configuration, "model " + model + " given twice");
      auto& list = by_model[model];
      for (auto& [id, r] : load_reports(spec.substr(eq + 1))) {
        if (r.partial()) {
          err << "warning: skipping partial report " << id << " of model " << model << '\n';
          continue;
        }
        list.push_back(std::move(r));
      }
      if (list.empty()) fail(ErrorKind::Configuration, "no complete reports for model " + model);
    }
    const Leaderboard board = build_leaderboard(by_model);
    const std::string csv = leaderboard_csv(board);
    if (o.output) {
      write_file(*o.output, csv);
    } else {
      out << csv;
    }
    if (o.radar) write_file(*o.radar, radar_svg(board));
  } catch (const std::exception& ex) {
    err << "vcbench leaderboard: " << ex.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

const std::map<std::string, std::optional<double> ScoreReport::*>& dimension_fields() {
  static const std::map<std::string, std::optional<double> ScoreReport::*> fields{
      {"VQS", &ScoreReport::vqs}, {"SECS", &ScoreReport::secs}, {"TSS", &ScoreReport::tss}};
  return fields;
}

}  // namespace

RaterTable parse_rater_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.empty()) fail(ErrorKind::Configuration, "rater file is empty");
  const auto& header = rows.front();
  if (header.size() < 3 || header[0] != "item_id" || header[1] != "dimension") {
    fail(ErrorKind::Configuration, "rater header must be item_id,dimension,<rater ids>");
  }
  if (rows.size() == 1) fail(ErrorKind::Configuration, "rater file has no ratings");

  RaterTable table;
  table.raters.assign(header.begin() + 2, header.end());
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string where = "rater file line " + std::to_string(r + 1);
    if (row.size() != header.size()) fail(ErrorKind::Configuration, where + ": wrong number of columns");
    if (!dimension_fields().count(row[1])) {
      fail(ErrorKind::Configuration, where + ": unknown dimension '" + row[1] + "'");
    }
    std::vector<double> values;
    for (std::size_t c = 2; c < row.size(); ++c) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(row[c], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != row[c].size() || row[c].empty() || !std::isfinite(v)) {
        fail(ErrorKind::Configuration, where + ": rating '" + row[c] + "' is not a number");
      }
      values.push_back(v);
    }
    if (!table.scores[row[1]].emplace(row[0], std::move(values)).second) {
      fail(ErrorKind::Configuration, where + ": duplicate row for " + row[0] + " / " + row[1]);
    }
  }
  return table;
}

std::vector<AlignmentRow> human_alignment(const std::map<std::string, ScoreReport>& reports,
                                          const RaterTable& ratings, double rating_scale) {
  if (!(rating_scale > 0.0)) fail(ErrorKind::Configuration, "rating scale must be positive");
  std::set<std::string> rated;
  for (const auto& [_, items] : ratings.scores) {
    for (const auto& [id, __] : items) rated.insert(id);
  }
  std::vector<std::string> unmatched;
  for (const auto& id : rated) {
    if (!reports.count(id)) unmatched.push_back(id + " (no report)");
  }
  for (const auto& [id, _] : reports) {
    if (!rated.count(id)) unmatched.push_back(id + " (no ratings)");
  }
  for (const auto& [dim, items] : ratings.scores) {
    for (const auto& [id, _] : reports) {
      if (rated.count(id) && !items.count(id)) unmatched.push_back(id + " (no " + dim + " ratings)");
    }
  }
  if (!unmatched.empty()) {
    std::string list;
    for (const auto& u : unmatched) list += "\n  " + u;
    fail(ErrorKind::Configuration, "reports and ratings do not cover the same items:" + list);
  }

  std::vector<AlignmentRow> rows;
  for (const auto& dim : {"VQS", "SECS", "TSS"}) {
    auto it = ratings.scores.find(dim);
    if (it == ratings.scores.end()) continue;
    const auto field = dimension_fields().at(dim);
    std::vector<double> objective, subjective, matrix;
    for (const auto& [id, values] : it->second) {
      const auto& score = reports.at(id).*field;
      if (!score) fail(ErrorKind::Configuration, "report " + id + " has no " + dim + " score");
      objective.push_back(*score);
      double sum = 0.0;
      for (double v : values) {
        matrix.push_back(v / rating_scale);
        sum += v / rating_scale;
      }
      subjective.push_back(sum / static_cast<double>(values.size()));
    }
    AlignmentRow row;
    row.dimension = dim;
    for (double v : objective) row.objective_mean += v;
    row.objective_mean /= static_cast<double>(objective.size());
    for (double v : subjective) row.subjective_mean += v;
    row.subjective_mean /= static_cast<double>(subjective.size());
    row.correlation = stats::pearson(objective, subjective);
    row.icc = stats::icc2k(stats::RaterMatrix(objective.size(), ratings.raters.size(), std::move(matrix)));
    rows.push_back(row);
  }
  return rows;
}

std::string alignment_csv(const std::vector<AlignmentRow>& rows) {
  std::string out = "Score,Objective Avg.,Subjective Avg.,Correlation Coefficient,Subjective Consistency\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f,%.6f,%.6f\n", r.dimension.c_str(), r.objective_mean,
                  r.subjective_mean, r.correlation, r.icc);
    out += buf;
  }
  return out;
}

int run_human_align(const HumanAlignOptions& o, std::ostream& out, std::ostream& err) {
  try {
    const auto reports = load_reports(o.reports_dir);
    const auto table = parse_rater_csv(read_file(o.raters));
    const std::string csv = alignment_csv(human_alignment(reports, table, o.rating_scale));
    if (o.output) {
      write_file(*o.output, csv);
    } else {
      out << csv;
    }
  } catch (const std::exception& ex) {
    err << "vcbench human-align: " << ex.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Video connecting benchmark toolkit", "vcbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolkitVersion));

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score generated videos against a manifest");
  eval_cmd->add_option("--manifest", eval.manifest, "Manifest file")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--generated", eval.generated_dir, "Directory of generated videos named <item id>.<ext>")
      ->required();
  eval_cmd->add_option("--output", eval.output_dir, "Output directory")->required();
  eval_cmd->add_option("--subject-backend", eval.subject_backend, "Subject embedder")->capture_default_str();
  eval_cmd->add_option("--background-backend", eval.background_backend, "Background embedder")
      ->capture_default_str();
  eval_cmd->add_option("--aesthetic-backend", eval.aesthetic_backend, "Aesthetic scorer")->capture_default_str();
  eval_cmd->add_option("--quality-backend", eval.quality_backend, "Imaging quality scorer")->capture_default_str();
  eval_cmd->add_option("--perceptual-backend", eval.perceptual_backend, "Perceptual feature extractor")
      ->capture_default_str();
  eval_cmd->add_option("--flicker-patch", eval.metrics.flicker.patch_size, "Flicker patch size in pixels")
      ->capture_default_str();
  eval_cmd->add_option("--flicker-eta", eval.metrics.flicker.eta, "Flicker threshold")->capture_default_str();
  eval_cmd->add_option("--flow-block", eval.metrics.flow.block_size, "Block matching block size")
      ->capture_default_str();
  eval_cmd->add_option("--flow-window", eval.metrics.flow.window, "Block matching search radius")
      ->capture_default_str();
  eval_cmd->add_option("--pairs", eval.metrics.connecting.k, "Correspondence pairs sampled (K)")
      ->capture_default_str();
  eval_cmd->add_option("--middle", eval.metrics.connecting.z, "Middle frames sampled (Z)")->capture_default_str();
  eval_cmd->add_option("--min-distance", eval.metrics.connecting.min_distance, "Floor on frame distances")
      ->capture_default_str();
  eval_cmd->add_option("--workers", eval.workers, "Worker threads")->capture_default_str();
  eval_cmd->add_option("--seed", eval.seed, "Seed recorded with the run")->capture_default_str();
  eval_cmd->add_option("--model", eval.model, "Model name for the leaderboard")->capture_default_str();

  BuildOptions build;
  auto* build_cmd = app.add_subcommand("build", "Curate a manifest from a directory of videos");
  build_cmd->add_option("--input", build.input_dir, "Directory scanned recursively")->required();
  build_cmd->add_option("--output", build.output_dir, "Output directory")->required();
  build_cmd->add_option("--total-seconds", build.policy.total_seconds, "Budget for both clips")
      ->capture_default_str();
  build_cmd->add_option("--min-clip-seconds", build.policy.min_clip_seconds, "Shortest clip")
      ->capture_default_str();
  build_cmd->add_option("--max-clip-seconds", build.policy.max_clip_seconds, "Longest clip")
      ->capture_default_str();
  build_cmd->add_option("--margin", build.policy.transition_margin_frames, "Frames kept clear of a scene cut")
      ->capture_default_str();
  build_cmd->add_option("--scene-threshold", build.filters.scenes.threshold, "Histogram distance for a cut")
      ->capture_default_str();
  build_cmd->add_option("--min-scene-frames", build.filters.scenes.min_scene_len, "Shortest scene")
      ->capture_default_str();
  build_cmd->add_option("--min-prominence", build.filters.periodicity.min_prominence, "Peak prominence")
      ->capture_default_str();
  build_cmd->add_option("--min-peak-distance", build.filters.periodicity.min_distance, "Peak spacing")
      ->capture_default_str();
  build_cmd->add_option("--min-aesthetic", build.filters.min_aesthetic, "Normalized aesthetic cutoff")
      ->capture_default_str();
  build_cmd->add_option("--fps", build.filters.target_fps, "Resample videos to this frame rate");
  build_cmd->add_option("--aesthetic-backend", build.aesthetic_backend, "Aesthetic scorer")
      ->capture_default_str();
  build_cmd->add_option("--seed", build.seed, "Window sampling seed")->capture_default_str();
  build_cmd->add_option("--workers", build.workers, "Worker threads")->capture_default_str();
  build_cmd->add_flag("--plots", build.plots, "Write histogram SVGs");

  LeaderboardOptions board;
  auto* board_cmd = app.add_subcommand("leaderboard", "Tabulate report directories per model");
  board_cmd->add_option("inputs", board.inputs, "model=reports_dir pairs")->required();
  board_cmd->add_option("--output", board.output, "CSV path (stdout when omitted)");
  board_cmd->add_option("--radar", board.radar, "Radar chart SVG path");

  HumanAlignOptions align;
  auto* align_cmd = app.add_subcommand("human-align", "Compare objective scores with human ratings");
  align_cmd->add_option("--reports", align.reports_dir, "Directory of item reports")->required();
  align_cmd->add_option("--raters", align.raters, "Rater CSV")->required()->check(CLI::ExistingFile);
  align_cmd->add_option("--rating-scale", align.rating_scale, "Ratings are divided by this")
      ->capture_default_str();
  align_cmd->add_option("--output", align.output, "CSV path (stdout when omitted)");

  auto* version_cmd = app.add_subcommand("version", "Print toolkit version");

  std::vector<std::string> argv_storage{"vcbench"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (eval_cmd->parsed()) return run_eval(eval, BackendRegistry::with_builtins(), out, err);
  if (build_cmd->parsed()) return run_build(build, BackendRegistry::with_builtins(), out, err);
  if (board_cmd->parsed()) return run_leaderboard(board, out, err);
  if (align_cmd->parsed()) return run_human_align(align, out, err);
  if (version_cmd->parsed()) {
    out << "vcbench " << kToolkitVersion << '\n';
    out << "video decoding: y4m" << (opencv_decoding_available() ? ", opencv" : "") << '\n';
    const fs::path cache = model_cache_dir();
    out << "model cache (" << kModelCacheEnv << "): " << (cache.empty() ? "unset" : cache.string()) << '\n';
    out << BackendRegistry::with_builtins().describe();
  }
  return kExitOk;
}

}  // namespace vcbench::cli
