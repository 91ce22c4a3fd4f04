#include "vcbench/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "vcbench/error.hpp"

namespace vcbench {

using nlohmann::json;

std::string_view metric_key(Metric m) noexcept {
  switch (m) {
    case Metric::SubjectConsistency: return "Q_S";
    case Metric::BackgroundConsistency: return "Q_B";
    case Metric::FlickeringSeverity: return "Q_F";
    case Metric::AestheticScore: return "Q_A";
    case Metric::ImagingQuality: return "Q_I";
    case Metric::PixelConsistency: return "C_P";
    case Metric::OpticalFlowError: return "C_OF";
    case Metric::ConnectingDistance: return "T_CD";
    case Metric::LocalPerceptualConsistency: return "T_LP";
  }
  return "?";
}

std::string_view metric_title(Metric m) noexcept {
  switch (m) {
    case Metric::SubjectConsistency: return "Subject Consistency";
    case Metric::BackgroundConsistency: return "Background Consistency";
    case Metric::FlickeringSeverity: return "Flickering Severity";
    case Metric::AestheticScore: return "Aesthetic Score";
    case Metric::ImagingQuality: return "Imaging Quality";
    case Metric::PixelConsistency: return "Pixel Consistency";
    case Metric::OpticalFlowError: return "Optical Flow Error";
    case Metric::ConnectingDistance: return "Connecting Distance";
    case Metric::LocalPerceptualConsistency: return "Local Perceptual Consistency";
  }
  return "?";
}

bool is_negative_oriented(Metric m) noexcept {
  return m == Metric::FlickeringSeverity || m == Metric::OpticalFlowError ||
         m == Metric::ConnectingDistance;
}

MetricVector make_metric_vector(double q_s, double q_b, double q_f, double q_a, double q_i,
                                double c_p, double c_of, double t_cd, double t_lp) {
  return MetricVector{{q_s, q_b, q_f, q_a, q_i, c_p, c_of, t_cd, t_lp}};
}

double normalize_metric(Metric m, double raw) {
  if (!std::isfinite(raw)) {
    fail(ErrorKind::Numeric, std::string(metric_key(m)) + " is not finite");
  }
  const double oriented = is_negative_oriented(m) ? 1.0 - raw : raw;
  return std::clamp(oriented, 0.0, 1.0);
}

MetricVector normalize_metrics(const MetricVector& raw) {
  MetricVector out;
  for (Metric m : kAllMetrics) out[m] = normalize_metric(m, raw[m]);
  return out;
}

double video_quality_score(const MetricVector& n) {
  return (n[Metric::SubjectConsistency] + n[Metric::BackgroundConsistency] +
          n[Metric::FlickeringSeverity] + n[Metric::AestheticScore] + n[Metric::ImagingQuality]) /
         5.0;
}

double start_end_consistency_score(const MetricVector& n) {
  return (n[Metric::PixelConsistency] + n[Metric::OpticalFlowError]) / 2.0;
}

double transition_smoothness_score(const MetricVector& n) {
  return (n[Metric::ConnectingDistance] + n[Metric::LocalPerceptualConsistency]) / 2.0;
}

double total_score(double vqs, double secs, double tss) { return (vqs + secs + tss) / 3.0; }

DimensionScores score_raw_metrics(const MetricVector& raw) {
  const MetricVector n = normalize_metrics(raw);
  DimensionScores d;
  d.vqs = video_quality_score(n);
  d.secs = start_end_consistency_score(n);
  d.tss = transition_smoothness_score(n);
  d.score = total_score(d.vqs, d.secs, d.tss);
  return d;
}

// ---------------------------------------------------------------------------

std::map<std::string, std::string> BackendSet::names() const {
  return {{"subject", subject.name()},
          {"background", background.name()},
          {"aesthetic", aesthetic.name()},
          {"quality", quality.name()},
          {"perceptual", perceptual.name()}};
}

std::string config_digest(const EvalConfig& c, const std::map<std::string, std::string>& backends) {
  const json canonical{
      {"toolkit", std::string(kToolkitVersion)},
      {"backends", backends},
      {"flicker", {{"patch_size", c.flicker.patch_size}, {"eta", c.flicker.eta}}},
      {"flow", {{"block_size", c.flow.block_size}, {"window", c.flow.window}}},
      {"connecting",
       {{"k", c.connecting.k}, {"z", c.connecting.z}, {"min_distance", c.connecting.min_distance}}},
  };
  const std::string text = canonical.dump();
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::optional<MetricVector> ScoreReport::raw_vector() const {
  MetricVector v;
  for (Metric m : kAllMetrics) {
    const auto& x = metrics[static_cast<std::size_t>(m)];
    if (!x) return std::nullopt;
    v[m] = *x;
  }
  return v;
}

std::optional<MetricVector> ScoreReport::normalized_vector() const {
  MetricVector v;
  for (Metric m : kAllMetrics) {
    const auto& x = metrics_normalized[static_cast<std::size_t>(m)];
    if (!x) return std::nullopt;
    v[m] = *x;
  }
  return v;
}

namespace {

std::optional<double> mean_of(const OptionalMetrics& n, std::initializer_list<Metric> parts) {
  double sum = 0.0;
  for (Metric m : parts) {
    const auto& x = n[static_cast<std::size_t>(m)];
    if (!x) return std::nullopt;
    sum += *x;
  }
  return sum / static_cast<double>(parts.size());
}

}  // namespace

void finalize_report(ScoreReport& r) {
  for (Metric m : kAllMetrics) {
    const auto i = static_cast<std::size_t>(m);
    r.metrics_normalized[i] =
        r.metrics[i] ? std::optional<double>(normalize_metric(m, *r.metrics[i])) : std::nullopt;
  }
  // Same arithmetic as video_quality_score and friends, so complete reports
  // agree bit for bit with score_raw_metrics.
  r.vqs = mean_of(r.metrics_normalized,
                  {Metric::SubjectConsistency, Metric::BackgroundConsistency,
                   Metric::FlickeringSeverity, Metric::AestheticScore, Metric::ImagingQuality});
  r.secs = mean_of(r.metrics_normalized, {Metric::PixelConsistency, Metric::OpticalFlowError});
  r.tss = mean_of(r.metrics_normalized,
                  {Metric::ConnectingDistance, Metric::LocalPerceptualConsistency});
  r.score = (r.vqs && r.secs && r.tss) ? std::optional<double>(total_score(*r.vqs, *r.secs, *r.tss))
                                       : std::nullopt;
}

namespace {

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json metrics_json(const OptionalMetrics& m) {
  json obj = json::object();
  for (Metric k : kAllMetrics) {
    obj[std::string(metric_key(k))] = optional_json(m[static_cast<std::size_t>(k)]);
  }
  return obj;
}

std::optional<double> optional_from(const json& obj, const char* key) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return obj.at(key).get<double>();
}

OptionalMetrics metrics_from(const json& obj) {
  OptionalMetrics out;
  for (Metric k : kAllMetrics) {
    out[static_cast<std::size_t>(k)] = optional_from(obj, std::string(metric_key(k)).c_str());
  }
  return out;
}

}  // namespace

std::string report_to_json(const ScoreReport& r) {
  // nlohmann::json objects keep keys sorted, so output is canonical.
  const json doc{
      {"item_id", r.item_id},
      {"partial", r.partial()},
      {"metrics", metrics_json(r.metrics)},
      {"metrics_normalized", metrics_json(r.metrics_normalized)},
      {"VQS", optional_json(r.vqs)},
      {"SECS", optional_json(r.secs)},
      {"TSS", optional_json(r.tss)},
      {"Score", optional_json(r.score)},
      {"backend_names", r.backend_names},
      {"config_digest", r.config_digest},
      {"errors", r.errors},
  };
  return doc.dump(2) + "\n";
}

ScoreReport report_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    ScoreReport r;
    r.item_id = doc.at("item_id").get<std::string>();
    r.metrics = metrics_from(doc.at("metrics"));
    r.metrics_normalized = metrics_from(doc.at("metrics_normalized"));
    r.vqs = optional_from(doc, "VQS");
    r.secs = optional_from(doc, "SECS");
    r.tss = optional_from(doc, "TSS");
    r.score = optional_from(doc, "Score");
    r.backend_names = doc.at("backend_names").get<std::map<std::string, std::string>>();
    r.config_digest = doc.at("config_digest").get<std::string>();
    r.errors = doc.at("errors").get<std::map<std::string, std::string>>();
    return r;
  } catch (const json::exception& ex) {
    fail(ErrorKind::Configuration, std::string("malformed report: ") + ex.what());
  }
}

// ---------------------------------------------------------------------------

ScoreReport evaluate_item(const EvaluationItem& item, const BackendSet& backends,
                          const EvalConfig& config) {
  ScoreReport r;
  r.item_id = item.id;
  r.backend_names = backends.names();
  r.config_digest = config_digest(config, r.backend_names);

  auto run = [&](Metric m, auto&& compute) {
    try {
      r.metrics[static_cast<std::size_t>(m)] = compute();
    } catch (const Error& ex) {
      r.errors[std::string(metric_key(m))] =
          std::string(error_kind_name(ex.kind())) + ": " + ex.what();
    } catch (const std::exception& ex) {
      r.errors[std::string(metric_key(m))] = std::string("backend: ") + ex.what();
    }
  };

  const FrameSequence& video = item.generated;
  run(Metric::SubjectConsistency, [&] { return subject_consistency(video, backends.subject); });
  run(Metric::BackgroundConsistency,
      [&] { return background_consistency(video, backends.background); });
  run(Metric::FlickeringSeverity, [&] { return flicker_severity(video, config.flicker); });
  run(Metric::AestheticScore, [&] { return aesthetic_score(video, backends.aesthetic); });
  run(Metric::ImagingQuality, [&] { return imaging_quality(video, backends.quality); });
  run(Metric::PixelConsistency, [&] { return pixel_consistency(item); });
  run(Metric::OpticalFlowError, [&] { return optical_flow_error(item, config.flow); });
  run(Metric::ConnectingDistance, [&] { return connecting_distance(item, config.connecting); });
  run(Metric::LocalPerceptualConsistency,
      [&] { return local_perceptual_consistency(video, backends.perceptual); });

  for (Metric m : kAllMetrics) {
    auto& v = r.metrics[static_cast<std::size_t>(m)];
    if (v && !std::isfinite(*v)) {
      r.errors[std::string(metric_key(m))] = "numeric: non-finite value";
      v.reset();
    }
  }
  finalize_report(r);
  return r;
}

ScoreReport mean_report(const std::string& id, const std::vector<ScoreReport>& reports) {
  if (reports.empty()) fail(ErrorKind::Configuration, "cannot average zero reports");
  ScoreReport out;
  out.item_id = id;
  out.backend_names = reports.front().backend_names;
  out.config_digest = reports.front().config_digest;
  for (Metric m : kAllMetrics) {
    const auto i = static_cast<std::size_t>(m);
    double sum = 0.0;
    bool complete = true;
    for (const auto& r : reports) {
      if (!r.metrics[i]) {
        complete = false;
        out.errors[std::string(metric_key(m))] = "missing: not computed for " + r.item_id;
        break;
      }
      sum += *r.metrics[i];
    }
    if (complete) out.metrics[i] = sum / static_cast<double>(reports.size());
  }
  finalize_report(out);
  // Normalization is clamped per report, so average the normalized values
  // directly rather than re-normalizing the averaged raw values.
  for (Metric m : kAllMetrics) {
    const auto i = static_cast<std::size_t>(m);
    if (!out.metrics[i]) continue;
    double sum = 0.0;
    for (const auto& r : reports) sum += r.metrics_normalized[i].value_or(0.0);
    out.metrics_normalized[i] = sum / static_cast<double>(reports.size());
  }
  auto avg = [&](auto member) -> std::optional<double> {
    double sum = 0.0;
    for (const auto& r : reports) {
      if (!(r.*member)) return std::nullopt;
      sum += *(r.*member);
    }
    return sum / static_cast<double>(reports.size());
  };
  out.vqs = avg(&ScoreReport::vqs);
  out.secs = avg(&ScoreReport::secs);
  out.tss = avg(&ScoreReport::tss);
  out.score = avg(&ScoreReport::score);
  return out;
}

MultiClipResult evaluate_multiclip(const std::string& id, const std::vector<FrameSequence>& clips,
                                   const FrameSequence& generated,
                                   const std::vector<FrameWindow>& placements,
                                   const BackendSet& backends, const EvalConfig& config) {
  if (clips.size() < 2) fail(ErrorKind::Configuration, "multi-clip evaluation needs at least 2 clips");
  if (placements.size() != clips.size()) {
    fail(ErrorKind::Configuration, "need exactly one placement window per clip");
  }
  const long frames = static_cast<long>(generated.size());
  for (std::size_t k = 0; k < placements.size(); ++k) {
    const FrameWindow& w = placements[k];
    if (w.first < 0 || w.last >= frames || w.last < w.first) {
      fail(ErrorKind::Configuration, "placement " + std::to_string(k) + " lies outside the generated video");
    }
    if (static_cast<std::size_t>(w.length()) != clips[k].size()) {
      fail(ErrorKind::Configuration, "placement " + std::to_string(k) + " spans " +
                                         std::to_string(w.length()) + " frames but clip has " +
                                         std::to_string(clips[k].size()));
    }
    if (k > 0 && placements[k - 1].last >= w.first) {
      fail(ErrorKind::Configuration, "placements " + std::to_string(k - 1) + " and " +
                                         std::to_string(k) + " overlap or are out of order");
    }
  }

  MultiClipResult result;
  for (std::size_t k = 0; k + 1 < clips.size(); ++k) {
    const auto first = static_cast<std::size_t>(placements[k].first);
    const auto count = static_cast<std::size_t>(placements[k + 1].last) - first + 1;
    EvaluationItem junction(id + "#" + std::to_string(k), ClipPair(clips[k], clips[k + 1]),
                            generated.slice(first, count));
    result.junctions.push_back(evaluate_item(junction, backends, config));
  }
  result.mean = mean_report(id + "#mean", result.junctions);
  return result;
}

// ---------------------------------------------------------------------------

Leaderboard build_leaderboard(const std::map<std::string, std::vector<ScoreReport>>& by_model) {
  if (by_model.empty()) fail(ErrorKind::Configuration, "leaderboard needs at least one model");
  Leaderboard board;
  for (const auto& [model, reports] : by_model) {
    if (reports.empty()) fail(ErrorKind::Configuration, "model '" + model + "' has no reports");
    LeaderboardRow row;
    row.model = model;
    row.reports = reports.size();
    for (const auto& r : reports) {
      if (board.config_digest.empty()) board.config_digest = r.config_digest;
      if (r.config_digest != board.config_digest) {
        fail(ErrorKind::Configuration, "report '" + r.item_id + "' of model '" + model +
                                           "' was produced with a different configuration (" +
                                           r.config_digest + " vs " + board.config_digest + ")");
      }
      const auto raw = r.raw_vector();
      const auto norm = r.normalized_vector();
      if (r.partial() || !raw || !norm) {
        fail(ErrorKind::Configuration, "report '" + r.item_id + "' of model '" + model + "' is partial");
      }
      for (Metric m : kAllMetrics) {
        row.mean_raw[m] += (*raw)[m];
        row.mean_normalized[m] += (*norm)[m];
      }
      row.vqs += *r.vqs;
      row.secs += *r.secs;
      row.tss += *r.tss;
      row.score += *r.score;
    }
    const double n = static_cast<double>(reports.size());
    for (Metric m : kAllMetrics) {
      row.mean_raw[m] /= n;
      row.mean_normalized[m] /= n;
    }
    row.vqs /= n;
    row.secs /= n;
    row.tss /= n;
    row.score /= n;
    board.rows.push_back(std::move(row));
  }
  std::stable_sort(board.rows.begin(), board.rows.end(),
                   [](const LeaderboardRow& a, const LeaderboardRow& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.model < b.model;
                   });
  return board;
}

std::string leaderboard_csv(const Leaderboard& board) {
  std::ostringstream out;
  out << "Model";
  for (Metric m : kAllMetrics) out << ',' << metric_title(m);
  out << ",Total Score\n";
  char buf[32];
  for (const auto& row : board.rows) {
    out << row.model;
    for (Metric m : kAllMetrics) {
      std::snprintf(buf, sizeof buf, "%.6f", row.mean_raw[m]);
      out << ',' << buf;
    }
    std::snprintf(buf, sizeof buf, "%.6f", row.score);
    out << ',' << buf << '\n';
  }
  return out.str();
}

}  // namespace vcbench
