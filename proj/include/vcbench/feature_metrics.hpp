#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "vcbench/media.hpp"

namespace vcbench {

// Frame -> feature vector. Outputs must be finite with a constant dimension;
// the metrics L2-normalize them before taking cosines.
class FrameEmbedder {
 public:
  virtual ~FrameEmbedder() = default;
  virtual std::vector<double> embed(const Frame& frame) const = 0;
  virtual std::string name() const = 0;
  virtual bool reentrant() const { return false; }
};

struct ScoreRange {
  double lo = 0.0;
  double hi = 1.0;
};

// Frame -> scalar score inside declared_range().
class FrameScorer {
 public:
  virtual ~FrameScorer() = default;
  virtual double score(const Frame& frame) const = 0;
  virtual ScoreRange declared_range() const = 0;
  virtual std::string name() const = 0;
  virtual bool reentrant() const { return false; }
};

// Frame -> feature vector whose components all lie in [0, 1].
class PerceptualExtractor {
 public:
  virtual ~PerceptualExtractor() = default;
  virtual std::vector<double> features(const Frame& frame) const = 0;
  virtual std::string name() const = 0;
  virtual bool reentrant() const { return false; }
};

/// Mean over t = 2..N-1 of (cos(e_1, e_t) + cos(e_{t-1}, e_t) + cos(e_t, e_N)) / 3,
/// each cosine clamped below at 0. Shared by subject and background consistency.
double consistency_from_embeddings(const std::vector<std::vector<double>>& embeddings);

double subject_consistency(const FrameSequence& video, const FrameEmbedder& embedder);
double background_consistency(const FrameSequence& video, const FrameEmbedder& embedder);

// Mean frame score over hi, for a scorer declaring [0, 10].
double aesthetic_score(const FrameSequence& video, const FrameScorer& scorer);
// Mean frame score over hi, for a scorer declaring [0, 100].
double imaging_quality(const FrameSequence& video, const FrameScorer& scorer);

// 1 - mean over adjacent pairs of the mean absolute feature difference.
double perceptual_consistency_from_features(const std::vector<std::vector<double>>& features);
double local_perceptual_consistency(const FrameSequence& video,
                                    const PerceptualExtractor& extractor);

// ---------------------------------------------------------------------------
// Deterministic backends computed from frame statistics.
//
// stub-embed (dim 72): mean R, G, B over a 4x4 grid (48 values) followed by
//   an 8-bin histogram per channel normalized by pixel count (24 values).
// stub-aesthetic, range [0, 10]: 5 * (1 - 2|mu - 0.5|) + 5 * min(1, 4 sigma),
//   where mu and sigma are the mean and standard deviation of luma.
//   A uniform 0.5 gray frame scores 5.
// stub-quality, range [0, 100]: 50 * (1 - 2|mu - 0.5|) + 50 * min(1, 10 g),
//   where g is the mean absolute difference between horizontally and
//   vertically adjacent luma samples. A uniform 0.5 gray frame scores 50.
// stub-perceptual (dim 112): mean luma over an 8x8 grid (64 values) followed
//   by mean R, G, B over a 4x4 grid (48 values).
//
// Grid cells split the frame as evenly as possible: cell i of n spans
// [floor(i * L / n), floor((i + 1) * L / n)).

class StubEmbedder final : public FrameEmbedder {
 public:
  std::vector<double> embed(const Frame& frame) const override;
  std::string name() const override { return "stub-embed"; }
  bool reentrant() const override { return true; }
};

class StubAestheticScorer final : public FrameScorer {
 public:
  double score(const Frame& frame) const override;
  ScoreRange declared_range() const override { return {0.0, 10.0}; }
  std::string name() const override { return "stub-aesthetic"; }
  bool reentrant() const override { return true; }
};

class StubQualityScorer final : public FrameScorer {
 public:
  double score(const Frame& frame) const override;
  ScoreRange declared_range() const override { return {0.0, 100.0}; }
  std::string name() const override { return "stub-quality"; }
  bool reentrant() const override { return true; }
};

class StubPerceptualExtractor final : public PerceptualExtractor {
 public:
  std::vector<double> features(const Frame& frame) const override;
  std::string name() const override { return "stub-perceptual"; }
  bool reentrant() const override { return true; }
};

struct StubBackends {
  std::shared_ptr<const FrameEmbedder> embedder;
  std::shared_ptr<const FrameScorer> aesthetic;
  std::shared_ptr<const FrameScorer> quality;
  std::shared_ptr<const PerceptualExtractor> perceptual;
};

StubBackends builtin_stub_backends();

// ---------------------------------------------------------------------------
// Registry mapping backend names to constructors.

class BackendRegistry {
 public:
  using EmbedderFactory = std::function<std::unique_ptr<FrameEmbedder>()>;
  using ScorerFactory = std::function<std::unique_ptr<FrameScorer>()>;
  using ExtractorFactory = std::function<std::unique_ptr<PerceptualExtractor>()>;

  // Registry preloaded with the stub backends.
  static BackendRegistry with_builtins();

  void add_embedder(const std::string& name, EmbedderFactory factory);
  void add_scorer(const std::string& name, ScorerFactory factory);
  void add_extractor(const std::string& name, ExtractorFactory factory);

  // Throw Error(Configuration) listing the known names on a miss.
  std::unique_ptr<FrameEmbedder> make_embedder(const std::string& name) const;
  std::unique_ptr<FrameScorer> make_scorer(const std::string& name) const;
  std::unique_ptr<PerceptualExtractor> make_extractor(const std::string& name) const;

  std::vector<std::string> embedder_names() const;
  std::vector<std::string> scorer_names() const;
  std::vector<std::string> extractor_names() const;

  // Human-readable listing of every registered name.
  std::string describe() const;

 private:
  std::map<std::string, EmbedderFactory> embedders_;
  std::map<std::string, ScorerFactory> scorers_;
  std::map<std::string, ExtractorFactory> extractors_;
};

// Environment variable naming the directory pretrained backends load weights
// from. The stub backends ignore it.
inline constexpr const char* kModelCacheEnv = "VCBENCH_MODEL_CACHE";

// $VCBENCH_MODEL_CACHE, else $HOME/.cache/vcbench, else empty.
std::filesystem::path model_cache_dir();

}  // namespace vcbench
