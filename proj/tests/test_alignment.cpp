#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "vcbench/alignment.hpp"
#include "vcbench/error.hpp"

using namespace vcbench;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

double path_cost(const AlignmentPath& p, const std::vector<double>& cost, std::size_t cols) {
  double s = 0;
  for (auto [i, j] : p.pairs) s += cost[i * cols + j];
  return s;
}

// Term-by-term evaluation of the connecting distance from the direct SSIM
// reference, sharing only the DTW and sampling helpers with the library.
double connecting_distance_direct(const EvaluationItem& item, const ConnectingDistanceConfig& cfg) {
  const std::size_t ns = item.start_length(), ne = item.end_length(), g = item.generated.size();
  auto align = [&](const FrameSequence& clip, std::size_t offset) {
    std::vector<double> cost;
    for (std::size_t i = 0; i < clip.size(); ++i) {
      for (std::size_t j = 0; j < clip.size(); ++j) {
        cost.push_back(std::max(0.0, 1.0 - oracles::ssim_direct(clip[i], item.generated[offset + j])));
      }
    }
    return dtw_align(cost, clip.size(), clip.size());
  };
  struct Pair {
    const Frame* original;
    std::size_t gen;
  };
  std::vector<Pair> pairs;
  for (auto [r, c] : align(item.clips.start, 0).pairs) pairs.push_back({&item.clips.start[r], c});
  for (auto [r, c] : align(item.clips.end, g - ne).pairs) pairs.push_back({&item.clips.end[r], g - ne + c});

  double total = 0;
  std::size_t count = 0;
  for (std::size_t p : evenly_spaced(pairs.size(), cfg.k)) {
    for (std::size_t m : evenly_spaced(g - ne - ns, cfg.z)) {
      const std::size_t mid = ns + m;
      const double d = std::max(std::fabs(double(mid) - double(pairs[p].gen)), double(cfg.min_distance));
      const double a = oracles::ssim_direct(*pairs[p].original, item.generated[mid]) / d;
      const double b = oracles::ssim_direct(item.generated[pairs[p].gen], item.generated[mid]) / d;
      total += std::fabs(a - b);
      ++count;
    }
  }
  return total / double(count);
}

}  // namespace

TEST_CASE("dtw agrees with exhaustive path search") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 7;
    std::vector<double> cost(rows * cols);
    for (auto& c : cost) c = u(rng);
    const AlignmentPath p = dtw_align(cost, rows, cols);
    CHECK(is_valid_path(p, rows, cols));
    CHECK(p.total_cost == doctest::Approx(oracles::dtw_exhaustive(cost, rows, cols)).epsilon(1e-12));
    CHECK(path_cost(p, cost, cols) == doctest::Approx(p.total_cost).epsilon(1e-12));
  }
}

TEST_CASE("dtw tie breaking") {
  const std::vector<double> zeros(9, 0.0);
  const AlignmentPath p = dtw_align(zeros, 3, 3);
  CHECK(p.pairs == std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {1, 1}, {2, 2}});

  // Off-diagonal ties: stepping along the reference is preferred.
  const std::vector<double> flat(6, 0.0);
  const AlignmentPath q = dtw_align(flat, 3, 2);
  CHECK(q.pairs.front() == std::pair<std::size_t, std::size_t>{0, 0});
  CHECK(q.pairs.back() == std::pair<std::size_t, std::size_t>{2, 1});
  CHECK(q.pairs.size() == 3);

  CHECK(kind_of([] { dtw_align(std::vector<double>{}, 0, 0); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { dtw_align(std::vector<double>{-1.0}, 1, 1); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { dtw_align(std::vector<double>{1.0, 2.0}, 1, 1); }) == ErrorKind::Dimension);
}

TEST_CASE("path validity checks") {
  AlignmentPath p;
  p.pairs = {{0, 0}, {1, 2}};
  CHECK_FALSE(is_valid_path(p, 2, 3));
  p.pairs = {{0, 0}, {0, 1}, {1, 2}};
  CHECK(is_valid_path(p, 2, 3));
  p.pairs = {{0, 1}, {1, 2}};
  CHECK_FALSE(is_valid_path(p, 2, 3));
}

TEST_CASE("evenly spaced sampling") {
  CHECK(evenly_spaced(10, 4) == std::vector<std::size_t>{0, 3, 6, 9});
  CHECK(evenly_spaced(9, 1) == std::vector<std::size_t>{4});
  CHECK(evenly_spaced(5, 5) == std::vector<std::size_t>{0, 1, 2, 3, 4});
  CHECK(evenly_spaced(7, 3) == std::vector<std::size_t>{0, 3, 6});
  for (std::size_t n = 1; n < 40; ++n) {
    for (std::size_t count = 2; count < 12; count += 2) {
      const auto idx = evenly_spaced(n, count);
      REQUIRE(idx.size() == count);
      CHECK(std::is_sorted(idx.begin(), idx.end()));
      for (std::size_t i = 0; i < count; ++i) CHECK(idx[i] + idx[count - 1 - i] == n - 1);
    }
  }
}

TEST_CASE("pairwise sum") {
  const std::vector<double> v{1, 2, 3, 4, 5, 6, 7};
  CHECK(pairwise_sum(v) == 28.0);
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("connecting distance matches the term-by-term evaluation") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<Frame> start, end, gen;
    for (int i = 0; i < 4; ++i) start.push_back(fixtures::random_frame(rng, 14, 14));
    for (int i = 0; i < 3; ++i) end.push_back(fixtures::random_frame(rng, 14, 14));
    for (int i = 0; i < 12; ++i) gen.push_back(fixtures::random_frame(rng, 14, 14));
    const EvaluationItem item("t", ClipPair(FrameSequence(start, 24), FrameSequence(end, 24)),
                              FrameSequence(gen, 24));
    ConnectingDistanceConfig cfg;
    cfg.k = 5;
    cfg.z = 3;
    cfg.min_distance = 1 + trial;
    CHECK(connecting_distance(item, cfg) == doctest::Approx(connecting_distance_direct(item, cfg)).epsilon(1e-9));
  }
}

TEST_CASE("connecting distance properties") {
  std::mt19937_64 rng(42);
  const FrameSequence video = fixtures::panning_video(rng, 24, 24, 24, 2);
  const EvaluationItem self("s", ClipPair(video.slice(0, 6), video.slice(18, 6)), video);
  CHECK(connecting_distance(self) == 0.0);

  std::vector<Frame> frames;
  for (int i = 0; i < 16; ++i) frames.push_back(fixtures::random_frame(rng, 24, 24));
  const FrameSequence other(frames, 24.0);
  const EvaluationItem item("o", ClipPair(video.slice(0, 5), video.slice(19, 5)), other);
  double previous = 2.0;
  for (int md = 1; md <= 8; ++md) {
    ConnectingDistanceConfig cfg;
    cfg.min_distance = md;
    const double v = connecting_distance(item, cfg);
    CHECK(v >= 0.0);
    CHECK(v <= previous + 1e-15);
    previous = v;
  }

  const EvaluationItem tight("n", ClipPair(video.slice(0, 5), video.slice(19, 5)), other.slice(0, 10));
  CHECK(kind_of([&] { connecting_distance(tight); }) == ErrorKind::DegenerateItem);
  ConnectingDistanceConfig bad;
  bad.k = 0;
  CHECK(kind_of([&] { connecting_distance(item, bad); }) == ErrorKind::InvalidArgument);
}
