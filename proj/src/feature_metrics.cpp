#include "vcbench/feature_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "vcbench/error.hpp"

namespace vcbench {
namespace {

template <typename Fn>
auto call_backend(const std::string& backend, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& ex) {
    fail(ErrorKind::Backend, "backend '" + backend + "' failed: " + ex.what());
  }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

// Cosine via dot / sqrt(|a|^2 |b|^2): for a == b this is exactly 1.
double clamped_cosine(const std::vector<double>& a, double aa, const std::vector<double>& b,
                      double bb) {
  return std::clamp(dot(a, b) / std::sqrt(aa * bb), 0.0, 1.0);
}

void check_vectors(const std::vector<std::vector<double>>& vs, const char* what) {
  for (const auto& v : vs) {
    if (v.empty() || v.size() != vs.front().size()) {
      fail(ErrorKind::BackendContract, std::string(what) + " dimension is not constant");
    }
    for (double x : v) {
      if (!std::isfinite(x)) fail(ErrorKind::BackendContract, std::string(what) + " is not finite");
    }
  }
}

double mean_normalized_score(const FrameSequence& video, const FrameScorer& scorer,
                             double expected_hi) {
  const ScoreRange range = scorer.declared_range();
  if (range.lo != 0.0 || range.hi != expected_hi) {
    fail(ErrorKind::BackendContract, "scorer '" + scorer.name() + "' declares [" +
                                         std::to_string(range.lo) + ", " +
                                         std::to_string(range.hi) + "], expected [0, " +
                                         std::to_string(expected_hi) + "]");
  }
  double total = 0.0;
  for (const Frame& f : video.frames()) {
    const double s = call_backend(scorer.name(), [&] { return scorer.score(f); });
    if (!std::isfinite(s) || s < range.lo || s > range.hi) {
      fail(ErrorKind::BackendContract, "scorer '" + scorer.name() + "' returned " +
                                           std::to_string(s) + " outside its declared range");
    }
    total += s;
  }
  return total / static_cast<double>(video.size()) / expected_hi;
}

// Cell boundaries of an n-way split of `length`.
int cell_edge(int i, int length, int n) {
  return static_cast<int>(static_cast<long long>(i) * length / n);
}

std::vector<double> grid_means(const Frame& frame, int n) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n) * n * 3);
  for (int gy = 0; gy < n; ++gy) {
    const int y0 = cell_edge(gy, frame.height(), n);
    const int y1 = std::max(cell_edge(gy + 1, frame.height(), n), y0 + 1);
    for (int gx = 0; gx < n; ++gx) {
      const int x0 = cell_edge(gx, frame.width(), n);
      const int x1 = std::max(cell_edge(gx + 1, frame.width(), n), x0 + 1);
      double sum[3] = {0.0, 0.0, 0.0};
      for (int y = y0; y < std::min(y1, frame.height()); ++y) {
        for (int x = x0; x < std::min(x1, frame.width()); ++x) {
          for (int c = 0; c < 3; ++c) sum[c] += frame.at(y, x, c);
        }
      }
      const double count = static_cast<double>(std::min(y1, frame.height()) - y0) *
                           (std::min(x1, frame.width()) - x0);
      for (int c = 0; c < 3; ++c) out.push_back(sum[c] / count);
    }
  }
  return out;
}

std::vector<double> grid_luma_means(const Plane& y_plane, int n) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  for (int gy = 0; gy < n; ++gy) {
    const int y0 = cell_edge(gy, y_plane.height, n);
    const int y1 = std::min(std::max(cell_edge(gy + 1, y_plane.height, n), y0 + 1), y_plane.height);
    for (int gx = 0; gx < n; ++gx) {
      const int x0 = cell_edge(gx, y_plane.width, n);
      const int x1 = std::min(std::max(cell_edge(gx + 1, y_plane.width, n), x0 + 1), y_plane.width);
      double sum = 0.0;
      for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) sum += y_plane.at(y, x);
      }
      out.push_back(std::clamp(sum / (static_cast<double>(y1 - y0) * (x1 - x0)), 0.0, 1.0));
    }
  }
  return out;
}

struct LumaStats {
  double mean = 0.0;
  double stddev = 0.0;
  double gradient = 0.0;
};

LumaStats luma_stats(const Frame& frame) {
  const Plane y = luma(frame);
  LumaStats st;
  for (double v : y.values) st.mean += v;
  st.mean /= static_cast<double>(y.values.size());
  double var = 0.0;
  for (double v : y.values) var += (v - st.mean) * (v - st.mean);
  st.stddev = std::sqrt(var / static_cast<double>(y.values.size()));
  double grad = 0.0;
  std::size_t count = 0;
  for (int r = 0; r < y.height; ++r) {
    for (int c = 0; c < y.width; ++c) {
      if (c + 1 < y.width) {
        grad += std::fabs(y.at(r, c + 1) - y.at(r, c));
        ++count;
      }
      if (r + 1 < y.height) {
        grad += std::fabs(y.at(r + 1, c) - y.at(r, c));
        ++count;
      }
    }
  }
  st.gradient = count ? grad / static_cast<double>(count) : 0.0;
  return st;
}

}  // namespace

double consistency_from_embeddings(const std::vector<std::vector<double>>& embeddings) {
  const std::size_t n = embeddings.size();
  if (n < 3) fail(ErrorKind::TooFewFrames, "consistency needs at least 3 frames");
  check_vectors(embeddings, "embedding");
  const auto& e = embeddings;
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    sq[i] = dot(e[i], e[i]);
    if (!(sq[i] > 0.0)) fail(ErrorKind::BackendContract, "embedding has zero norm");
  }
  double total = 0.0;
  for (std::size_t t = 1; t + 1 < n; ++t) {
    total += (clamped_cosine(e[0], sq[0], e[t], sq[t]) +
              clamped_cosine(e[t - 1], sq[t - 1], e[t], sq[t]) +
              clamped_cosine(e[t], sq[t], e[n - 1], sq[n - 1])) /
             3.0;
  }
  return total / static_cast<double>(n - 2);
}

namespace {

double consistency(const FrameSequence& video, const FrameEmbedder& embedder) {
  if (video.size() < 3) fail(ErrorKind::TooFewFrames, "consistency needs at least 3 frames");
  std::vector<std::vector<double>> embeddings;
  embeddings.reserve(video.size());
  for (const Frame& f : video.frames()) {
    embeddings.push_back(call_backend(embedder.name(), [&] { return embedder.embed(f); }));
  }
  return consistency_from_embeddings(embeddings);
}

}  // namespace

double subject_consistency(const FrameSequence& video, const FrameEmbedder& embedder) {
  return consistency(video, embedder);
}

double background_consistency(const FrameSequence& video, const FrameEmbedder& embedder) {
  return consistency(video, embedder);
}

double aesthetic_score(const FrameSequence& video, const FrameScorer& scorer) {
  return mean_normalized_score(video, scorer, 10.0);
}

double imaging_quality(const FrameSequence& video, const FrameScorer& scorer) {
  return mean_normalized_score(video, scorer, 100.0);
}

double perceptual_consistency_from_features(const std::vector<std::vector<double>>& features) {
  if (features.size() < 2) fail(ErrorKind::TooFewFrames, "perceptual consistency needs at least 2 frames");
  check_vectors(features, "perceptual feature");
  for (const auto& v : features) {
    for (double x : v) {
      if (x < 0.0 || x > 1.0) {
        fail(ErrorKind::BackendContract, "perceptual feature component outside [0, 1]");
      }
    }
  }
  double total = 0.0;
  for (std::size_t t = 1; t < features.size(); ++t) {
    double diff = 0.0;
    for (std::size_t i = 0; i < features[t].size(); ++i) {
      diff += std::fabs(features[t][i] - features[t - 1][i]);
    }
    total += diff / static_cast<double>(features[t].size());
  }
  const double error = total / static_cast<double>(features.size() - 1);
  return 1.0 - error;
}

double local_perceptual_consistency(const FrameSequence& video,
                                    const PerceptualExtractor& extractor) {
  if (video.size() < 2) fail(ErrorKind::TooFewFrames, "perceptual consistency needs at least 2 frames");
  std::vector<std::vector<double>> feats;
  feats.reserve(video.size());
  for (const Frame& f : video.frames()) {
    feats.push_back(call_backend(extractor.name(), [&] { return extractor.features(f); }));
  }
  return perceptual_consistency_from_features(feats);
}

// ---------------------------------------------------------------------------
// Stubs

std::vector<double> StubEmbedder::embed(const Frame& frame) const {
  std::vector<double> out = grid_means(frame, 4);
  std::vector<double> hist(24, 0.0);
  const auto px = frame.data();
  for (std::size_t i = 0; i < px.size(); ++i) {
    const int bin = std::min(7, static_cast<int>(px[i] * 8.0f));
    hist[(i % 3) * 8 + bin] += 1.0;
  }
  const double pixels = static_cast<double>(frame.pixel_count());
  for (double h : hist) out.push_back(h / pixels);
  return out;
}

double StubAestheticScorer::score(const Frame& frame) const {
  const LumaStats st = luma_stats(frame);
  const double s = 5.0 * (1.0 - 2.0 * std::fabs(st.mean - 0.5)) + 5.0 * std::min(1.0, 4.0 * st.stddev);
  return std::clamp(s, 0.0, 10.0);
}

double StubQualityScorer::score(const Frame& frame) const {
  const LumaStats st = luma_stats(frame);
  const double s =
      50.0 * (1.0 - 2.0 * std::fabs(st.mean - 0.5)) + 50.0 * std::min(1.0, 10.0 * st.gradient);
  return std::clamp(s, 0.0, 100.0);
}

std::vector<double> StubPerceptualExtractor::features(const Frame& frame) const {
  std::vector<double> out = grid_luma_means(luma(frame), 8);
  for (double v : grid_means(frame, 4)) out.push_back(std::clamp(v, 0.0, 1.0));
  return out;
}

StubBackends builtin_stub_backends() {
  return {std::make_shared<StubEmbedder>(), std::make_shared<StubAestheticScorer>(),
          std::make_shared<StubQualityScorer>(), std::make_shared<StubPerceptualExtractor>()};
}

// ---------------------------------------------------------------------------
// Registry

BackendRegistry BackendRegistry::with_builtins() {
  BackendRegistry r;
  r.add_embedder("stub-embed", [] { return std::make_unique<StubEmbedder>(); });
  r.add_scorer("stub-aesthetic", [] { return std::make_unique<StubAestheticScorer>(); });
  r.add_scorer("stub-quality", [] { return std::make_unique<StubQualityScorer>(); });
  r.add_extractor("stub-perceptual", [] { return std::make_unique<StubPerceptualExtractor>(); });
  return r;
}

void BackendRegistry::add_embedder(const std::string& name, EmbedderFactory factory) {
  embedders_[name] = std::move(factory);
}
void BackendRegistry::add_scorer(const std::string& name, ScorerFactory factory) {
  scorers_[name] = std::move(factory);
}
void BackendRegistry::add_extractor(const std::string& name, ExtractorFactory factory) {
  extractors_[name] = std::move(factory);
}

namespace {

template <typename Map>
auto make_from(const Map& map, const std::string& name, const char* kind,
               const BackendRegistry& registry) {
  const auto it = map.find(name);
  if (it == map.end()) {
    fail(ErrorKind::Configuration,
         "unknown " + std::string(kind) + " backend '" + name + "'\n" + registry.describe());
  }
  return it->second();
}

template <typename Map>
std::vector<std::string> names_of(const Map& map) {
  std::vector<std::string> out;
  for (const auto& [name, _] : map) out.push_back(name);
  return out;
}

}  // namespace

std::unique_ptr<FrameEmbedder> BackendRegistry::make_embedder(const std::string& name) const {
  return make_from(embedders_, name, "embedder", *this);
}
std::unique_ptr<FrameScorer> BackendRegistry::make_scorer(const std::string& name) const {
  return make_from(scorers_, name, "scorer", *this);
}
std::unique_ptr<PerceptualExtractor> BackendRegistry::make_extractor(const std::string& name) const {
  return make_from(extractors_, name, "perceptual", *this);
}

std::vector<std::string> BackendRegistry::embedder_names() const { return names_of(embedders_); }
std::vector<std::string> BackendRegistry::scorer_names() const { return names_of(scorers_); }
std::vector<std::string> BackendRegistry::extractor_names() const { return names_of(extractors_); }

std::string BackendRegistry::describe() const {
  std::ostringstream out;
  auto list = [&](const char* label, const std::vector<std::string>& names) {
    out << "  " << label << ":";
    for (const auto& n : names) out << ' ' << n;
    out << '\n';
  };
  out << "registered backends\n";
  list("embedders", embedder_names());
  list("scorers", scorer_names());
  list("perceptual", extractor_names());
  return out.str();
}

std::filesystem::path model_cache_dir() {
  if (const char* dir = std::getenv(kModelCacheEnv); dir && *dir) return dir;
  if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "vcbench";
  return {};
}

}  // namespace vcbench
