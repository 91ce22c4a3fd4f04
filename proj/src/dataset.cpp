#include "vcbench/dataset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <random>

#include <json.hpp>

#include "vcbench/error.hpp"
#include "vcbench/parallel.hpp"
#include "vcbench/video_io.hpp"

namespace vcbench {
namespace {

constexpr int kHueBins = 8;
constexpr int kSatBins = 4;
constexpr int kValBins = 4;
using HsvHistogram = std::array<double, kHueBins * kSatBins * kValBins>;

int bin_of(double v, int bins) { return std::min(bins - 1, static_cast<int>(v * bins)); }

HsvHistogram hsv_histogram(const Frame& f) {
  const PlaneSet hsv = rgb_to_hsv(f);
  HsvHistogram hist{};
  for (std::size_t i = 0; i < hsv.first.values.size(); ++i) {
    const int h = bin_of(hsv.first.values[i], kHueBins);
    const int s = bin_of(hsv.second.values[i], kSatBins);
    const int v = bin_of(hsv.third.values[i], kValBins);
    hist[(h * kSatBins + s) * kValBins + v] += 1.0;
  }
  const double n = static_cast<double>(hsv.first.values.size());
  for (double& x : hist) x /= n;
  return hist;
}

double histogram_distance(const HsvHistogram& a, const HsvHistogram& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::fabs(a[i] - b[i]);
  return 0.5 * d;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

long frames_for(double seconds, double fps) {
  return std::max(1L, std::lround(seconds * fps));
}

}  // namespace

double hsv_histogram_distance(const Frame& a, const Frame& b) {
  return histogram_distance(hsv_histogram(a), hsv_histogram(b));
}

SceneCutList detect_scenes(const FrameSequence& video, const SceneDetectConfig& cfg) {
  if (video.size() < 2) fail(ErrorKind::TooFewFrames, "scene detection needs at least 2 frames");
  SceneCutList out;
  long last_cut = 0;
  HsvHistogram prev = hsv_histogram(video[0]);
  for (std::size_t i = 1; i < video.size(); ++i) {
    HsvHistogram cur = hsv_histogram(video[i]);
    const long idx = static_cast<long>(i);
    if (histogram_distance(prev, cur) > cfg.threshold && idx - last_cut >= cfg.min_scene_len) {
      out.cuts.push_back(idx);
      last_cut = idx;
    }
    prev = cur;
  }
  return out;
}

PeriodicFilterResult filter_periodic(const FrameSequence& video, const PeriodicityConfig& cfg) {
  PeriodicFilterResult r;
  r.report = periodicity_detect(video, cfg);
  r.accept = !r.report.is_periodic;
  return r;
}

void ClipExtractionPolicy::validate() const {
  if (!(min_clip_seconds > 0.0) || !(max_clip_seconds >= min_clip_seconds)) {
    fail(ErrorKind::Policy, "clip durations need 0 < min <= max");
  }
  if (!(2.0 * min_clip_seconds < total_seconds)) {
    fail(ErrorKind::Policy, "two minimum-length clips do not fit the total duration budget");
  }
  if (transition_margin_frames < 0) fail(ErrorKind::Policy, "transition margin must be >= 0");
}

ClipWindows extract_clip_windows(std::size_t frame_count, double fps, const SceneCutList& cuts,
                                 const ClipExtractionPolicy& policy, std::uint64_t seed) {
  policy.validate();
  if (!(fps > 0.0)) fail(ErrorKind::Policy, "frame rate must be positive");
  if (cuts.scene_count() > 2) {
    fail(ErrorKind::Extraction, "clip extraction supports one or two scenes, got " +
                                    std::to_string(cuts.scene_count()));
  }
  const long n = static_cast<long>(frame_count);
  const long min_len = frames_for(policy.min_clip_seconds, fps);
  const long max_len = frames_for(policy.max_clip_seconds, fps);
  // Combined clip frames must stay strictly under the budget.
  const long budget = std::lround(policy.total_seconds * fps) - 1;
  if (2 * min_len > budget || 2 * min_len + 1 > n) {
    fail(ErrorKind::Policy, "a " + std::to_string(n) + "-frame video cannot hold two clips of at least " +
                                std::to_string(min_len) + " frames and a middle");
  }

  long start_cap = max_len;
  long end_cap = max_len;
  if (!cuts.cuts.empty()) {
    const long cut = cuts.cuts.front();
    start_cap = std::min(start_cap, cut - policy.transition_margin_frames);
    end_cap = std::min(end_cap, n - cut - policy.transition_margin_frames - 1);
    if (start_cap < min_len || end_cap < min_len) {
      fail(ErrorKind::Extraction, "scene cut at frame " + std::to_string(cut) +
                                      " is too close to a video boundary for the clip policy");
    }
  }

  auto feasible = [&](long s, long e) {
    return s >= min_len && e >= min_len && s <= start_cap && e <= end_cap && s + e <= budget &&
           s + e < n;
  };

  std::mt19937_64 rng(seed);
  const double span = policy.max_clip_seconds - policy.min_clip_seconds;
  long s = min_len;
  long e = min_len;
  bool found = false;
  for (int attempt = 0; attempt < 10000 && !found; ++attempt) {
    const long ds = frames_for(policy.min_clip_seconds + span * unit_draw(rng), fps);
    const long de = frames_for(policy.min_clip_seconds + span * unit_draw(rng), fps);
    if (feasible(ds, de)) {
      s = ds;
      e = de;
      found = true;
    }
  }
  // Minimum lengths were shown feasible above, so they are the fallback.
  return ClipWindows{{0, s - 1}, {n - e, n - 1}};
}

AestheticFilterResult aesthetic_filter(std::vector<ManifestEntry> entries, const FrameScorer& scorer,
                                       double min_normalized, const EntryLoader& load) {
  AestheticFilterResult out;
  for (auto& entry : entries) {
    try {
      const double score = aesthetic_score(load(entry), scorer);
      if (score >= min_normalized) {
        entry.aesthetic_score = score;
        out.kept.push_back(std::move(entry));
      } else {
        out.log.push_back(entry.id + ": aesthetic score " + std::to_string(score) + " below " +
                          std::to_string(min_normalized));
      }
    } catch (const std::exception& ex) {
      out.log.push_back(entry.id + ": unscored (" + ex.what() + ")");
    }
  }
  return out;
}

void Histogram::add(double value) {
  if (counts.empty()) return;
  const double pos = std::floor((value - lo) / bin_width);
  const auto last = static_cast<double>(counts.size() - 1);
  ++counts[static_cast<std::size_t>(std::clamp(pos, 0.0, last))];
}

std::string summary_to_json(const DatasetSummary& s) {
  using nlohmann::json;
  auto hist = [](const Histogram& h) {
    return json{{"lo", h.lo}, {"bin_width", h.bin_width}, {"counts", h.counts}};
  };
  const json doc{
      {"scanned", s.scanned},
      {"accepted", s.accepted},
      {"category_counts", s.category_counts},
      {"rejections", s.rejections},
      {"duration_seconds", hist(s.duration_seconds)},
      {"aesthetic_score", hist(s.aesthetic_score)},
      {"caption_length", hist(s.caption_length)},
  };
  return doc.dump(2) + "\n";
}

namespace {

struct FileOutcome {
  std::optional<ManifestEntry> entry;
  std::string rejection;  // reason key when rejected
  std::string warning;
};

FileOutcome process_file(const std::filesystem::path& root, const std::filesystem::path& file,
                         const ClipExtractionPolicy& policy, const FilterConfig& filters,
                         const FrameScorer& scorer, std::uint64_t seed) {
  const auto rel = file.lexically_relative(root);
  std::string id = rel.parent_path().generic_string();
  std::replace(id.begin(), id.end(), '/', '-');
  id = id.empty() ? rel.stem().string() : id + "-" + rel.stem().string();

  FileOutcome out;
  auto reject = [&](const std::string& reason, const std::string& detail) {
    out.rejection = reason;
    out.warning = rel.generic_string() + ": " + detail;
    return out;
  };

  try {
    const FrameSequence video = decode_video(file, filters.target_fps);
    const SceneCutList cuts = detect_scenes(video, filters.scenes);
    if (cuts.scene_count() > 2) {
      return reject("too_many_scenes", std::to_string(cuts.scene_count()) + " scenes");
    }
    const PeriodicFilterResult periodic = filter_periodic(video, filters.periodicity);
    if (!periodic.accept) {
      return reject("periodic_motion", "periodic motion with period " +
                                           std::to_string(periodic.report.period_frames.value_or(0.0)) +
                                           " frames");
    }
    const double aesthetic = aesthetic_score(video, scorer);
    if (aesthetic < filters.min_aesthetic) {
      return reject("low_aesthetic", "aesthetic score " + std::to_string(aesthetic));
    }
    const ClipWindows windows =
        extract_clip_windows(video.size(), video.fps(), cuts, policy, seed ^ fnv1a(rel.generic_string()));

    ManifestEntry e;
    e.id = id;
    e.path = file.lexically_normal().generic_string();
    const auto parent = rel.parent_path();
    auto parts = parent.begin();
    if (parts != parent.end()) e.category = (parts++)->string();
    if (parts != parent.end()) e.subcategory = parts->string();
    e.fps = video.fps();
    e.duration_seconds = static_cast<double>(video.size()) / video.fps();
    e.aesthetic_score = aesthetic;
    e.scene_cuts = cuts.cuts;
    e.start_window = windows.start;
    e.end_window = windows.end;
    validate_entry(e);
    out.entry = std::move(e);
  } catch (const Error& ex) {
    return reject(std::string(error_kind_name(ex.kind())), ex.what());
  } catch (const std::exception& ex) {
    return reject("error", ex.what());
  }
  return out;
}

}  // namespace

BuildResult build_manifest(const std::filesystem::path& input_dir, const ClipExtractionPolicy& policy,
                           const FilterConfig& filters, const FrameScorer& aesthetic_scorer,
                           std::uint64_t seed, int workers) {
  policy.validate();
  std::error_code ec;
  if (!std::filesystem::is_directory(input_dir, ec)) {
    fail(ErrorKind::Configuration, input_dir.string() + ": not a readable directory");
  }
  const auto exts = supported_video_extensions();
  std::vector<std::filesystem::path> files;
  for (auto it = std::filesystem::recursive_directory_iterator(input_dir, ec);
       !ec && it != std::filesystem::recursive_directory_iterator(); it.increment(ec)) {
    if (!it->is_regular_file()) continue;
    std::string ext = it->path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (std::find(exts.begin(), exts.end(), ext) != exts.end()) files.push_back(it->path());
  }
  if (ec) fail(ErrorKind::Configuration, input_dir.string() + ": " + ec.message());
  std::sort(files.begin(), files.end());

  // Scorers that are not reentrant are shared behind a lock.
  std::mutex scorer_mutex;
  class LockedScorer final : public FrameScorer {
   public:
    LockedScorer(const FrameScorer& inner, std::mutex& m) : inner_(inner), mutex_(m) {}
    double score(const Frame& f) const override {
      std::lock_guard lock(mutex_);
      return inner_.score(f);
    }
    ScoreRange declared_range() const override { return inner_.declared_range(); }
    std::string name() const override { return inner_.name(); }

   private:
    const FrameScorer& inner_;
    std::mutex& mutex_;
  } locked(aesthetic_scorer, scorer_mutex);
  const FrameScorer& scorer = aesthetic_scorer.reentrant() ? aesthetic_scorer : locked;

  std::vector<FileOutcome> outcomes(files.size());
  parallel_for(files.size(), workers, [&](std::size_t, std::size_t i) {
    outcomes[i] = process_file(input_dir, files[i], policy, filters, scorer, seed);
  });

  BuildResult result;
  result.summary.scanned = files.size();
  for (auto& o : outcomes) {
    if (!o.entry) {
      ++result.summary.rejections[o.rejection];
      result.warnings.push_back(o.warning);
      continue;
    }
    ManifestEntry& e = *o.entry;
    ++result.summary.accepted;
    ++result.summary.category_counts[e.category.empty() ? "uncategorized" : e.category];
    result.summary.duration_seconds.add(e.duration_seconds);
    result.summary.aesthetic_score.add(e.aesthetic_score);
    result.summary.caption_length.add(static_cast<double>(e.caption.size()));
    result.entries.push_back(std::move(e));
  }
  return result;
}

}  // namespace vcbench
