// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "vcbench/alignment.hpp"
#include "vcbench/cli.hpp"
#include "vcbench/conditioning.hpp"
#include "vcbench/dataset.hpp"
#include "vcbench/error.hpp"
#include "vcbench/feature_metrics.hpp"
#include "vcbench/manifest.hpp"
#include "vcbench/pixel_metrics.hpp"
#include "vcbench/scoring.hpp"
#include "vcbench/ssim.hpp"
#include "vcbench/stats.hpp"

using namespace vcbench;
using namespace vcbench::stats;
namespace fs = std::filesystem;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

int failures = 0;

void report(const std::string& name, const std::function<Check()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Check c;
  try {
    c = body();
  } catch (const std::exception& ex) {
    c.ok = false;
    c.detail = std::string("exception: ") + ex.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!c.ok) ++failures;
  std::printf("%s  %-34s %7.2fs%s%s\n", c.ok ? "PASS" : "FAIL", name.c_str(), secs, c.detail.empty() ? "" : "  ",
              c.detail.c_str());
  std::fflush(stdout);
}

Check leaderboard_regression() {
  struct Row {
    MetricVector raw;
    double total;
  };
  const std::vector<Row> rows{
      {make_metric_vector(0.921, 0.944, 0.045, 0.577, 0.720, 0.933, 0.042, 0.022, 0.839), 0.892},
      {make_metric_vector(0.922, 0.946, 0.060, 0.576, 0.713, 0.952, 0.031, 0.021, 0.820), 0.893},
      {make_metric_vector(0.914, 0.943, 0.048, 0.562, 0.704, 0.880, 0.058, 0.077, 0.810), 0.864},
      {make_metric_vector(0.906, 0.940, 0.079, 0.561, 0.685, 0.893, 0.059, 0.073, 0.782), 0.858},
      {make_metric_vector(0.911, 0.938, 0.028, 0.537, 0.644, 0.851, 0.098, 0.036, 0.837), 0.859},
      {make_metric_vector(0.909, 0.939, 0.090, 0.560, 0.688, 0.848, 0.078, 0.056, 0.649), 0.827},
  };
  Check c;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double got = score_raw_metrics(rows[i].raw).score;
    c.expect(std::fabs(got - rows[i].total) <= 0.002,
             "row " + std::to_string(i) + " total " + std::to_string(got));
  }
  return c;
}

Check metric_oracles() {
  Check c;
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 50; ++i) {
    const Frame a = fixtures::random_frame(rng, 24 + int(rng() % 17), 24 + int(rng() % 17));
    // Mix of related and unrelated pairs so both ends of the SSIM range are covered.
    std::vector<float> px(a.data().begin(), a.data().end());
    std::normal_distribution<float> n(0.0f, 0.05f);
    for (float& v : px) v = i % 2 == 0 ? float(rng() % 256) / 255.0f : std::clamp(v + n(rng), 0.0f, 1.0f);
    const Frame b(a.height(), a.width(), std::move(px));
    const double diff = std::fabs(ssim(a, b) - oracles::ssim_direct(a, b));
    c.expect(diff <= 1e-6, "ssim pair " + std::to_string(i) + " differs by " + std::to_string(diff));
  }

  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const std::size_t rows = 1 + rng() % 8, cols = 1 + rng() % 8;
    std::vector<double> cost(rows * cols);
    for (auto& v : cost) v = u(rng);
    const double got = dtw_align(cost, rows, cols).total_cost;
    const double want = oracles::dtw_exhaustive(cost, rows, cols);
    c.expect(std::fabs(got - want) <= 1e-12 * std::max(1.0, want), "dtw trial " + std::to_string(t));
  }

  for (int t = 0; t < 50; ++t) {
    const int dx = int(rng() % 33) - 16, dy = int(rng() % 33) - 16;
    const auto pair = fixtures::translated_noise(rng, dx, dy);
    const FlowField f = block_optical_flow(pair.a, pair.b);
    for (int by = 0; by < f.blocks_y; ++by) {
      for (int bx = 0; bx < f.blocks_x; ++bx) {
        const int ty = by * 16 + dy, tx = bx * 16 + dx;
        if (ty < 0 || tx < 0 || ty + 16 > 64 || tx + 16 > 64) continue;
        c.expect(f.at(by, bx) == FlowVector{dx, dy}, "flow trial " + std::to_string(t));
      }
    }
  }
  return c;
}

Check self_identities() {
  Check c;
  const StubBackends stubs = builtin_stub_backends();
  const BackendSet set{*stubs.embedder, *stubs.embedder, *stubs.aesthetic, *stubs.quality, *stubs.perceptual};
  std::mt19937_64 rng(99);

  const FrameSequence still = fixtures::static_video(rng, 16, 32, 32);
  const EvaluationItem still_item("still", ClipPair(still.slice(0, 5), still.slice(11, 5)), still);
  const ScoreReport r = evaluate_item(still_item, set, EvalConfig{});
  auto raw = [&](Metric m) { return r.metrics[static_cast<std::size_t>(m)].value_or(-1.0); };
  c.expect(!r.partial(), "static item report is partial");
  c.expect(raw(Metric::PixelConsistency) == 1.0, "static C_P");
  c.expect(raw(Metric::OpticalFlowError) == 0.0, "static C_OF");
  c.expect(raw(Metric::SubjectConsistency) == 1.0, "Q_S");
  c.expect(raw(Metric::BackgroundConsistency) == 1.0, "Q_B");
  c.expect(raw(Metric::LocalPerceptualConsistency) == 1.0, "T_LP");
  c.expect(std::fabs(raw(Metric::ConnectingDistance)) <= 1e-9, "static T_CD");

  const FrameSequence pan = fixtures::panning_video(rng, 24, 32, 32, 1);
  const EvaluationItem pan_item("pan", ClipPair(pan.slice(0, 6), pan.slice(18, 6)), pan);
  c.expect(pixel_consistency(pan_item) == 1.0, "pan C_P");
  c.expect(optical_flow_error(pan_item) == 0.0, "pan C_OF");
  c.expect(std::fabs(connecting_distance(pan_item)) <= 1e-9, "pan T_CD");
  return c;
}

Check flicker_periodicity() {
  Check c;
  std::vector<Frame> alt;
  for (int t = 0; t < 8; ++t) {
    const float v = t % 2 == 0 ? 0.0f : 1.0f;
    alt.push_back(Frame::filled(64, 64, v, v, v));
  }
  c.expect(flicker_severity(FrameSequence(alt, 24.0)) == 1.0, "alternating Q_F");
  const FrameSequence constant(fixtures::repeat(Frame::filled(64, 64, 0.4f, 0.5f, 0.6f), 8), 24.0);
  c.expect(flicker_severity(constant) == 0.0, "constant Q_F");

  std::mt19937_64 rng(8);
  const FrameSequence osc = fixtures::oscillating(rng, 96, 24);
  const PeriodReport pr = periodicity_detect(osc);
  c.expect(pr.is_periodic && pr.period_frames && std::fabs(*pr.period_frames - 24.0) <= 1.0,
           "oscillation period " + (pr.period_frames ? std::to_string(*pr.period_frames) : std::string("none")));
  c.expect(!filter_periodic(osc).accept, "oscillation accepted by filter");
  c.expect(filter_periodic(fixtures::panning_video(rng, 96, 48, 48)).accept, "pan rejected by filter");
  return c;
}

Check statistics() {
  Check c;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> subject(0.0, 10.0), bias(-1.0, 1.0);
  std::normal_distribution<double> noise(0.0, 0.5);
  int checked = 0;
  while (checked < 100) {
    const std::size_t n = 2 + rng() % 4, k = 2 + rng() % 4;
    std::vector<double> b(k);
    for (auto& v : b) v = bias(rng);
    std::vector<std::vector<double>> x(n, std::vector<double>(k));
    std::vector<double> flat;
    for (auto& row : x) {
      const double s = subject(rng);
      for (std::size_t j = 0; j < k; ++j) {
        row[j] = s + b[j] + noise(rng);
        flat.push_back(row[j]);
      }
    }
    const double got = icc2k(RaterMatrix(n, k, flat));
    c.expect(std::fabs(got - oracles::icc2k_residual(x)) <= 1e-9, "icc matrix " + std::to_string(checked));
    ++checked;
  }

  const std::vector<double> xs{0.3, 1.7, 2.2, 5.0, 4.1, 0.9};
  c.expect(std::fabs(pearson(xs, xs) - 1.0) <= 1e-15, "pearson(x, x)");

  const AnovaResult same = anova_oneway({{"a", {1, 2, 3}}, {"b", {1, 2, 3}}, {"c", {2, 3, 1}}});
  c.expect(same.f == 0.0 && same.p == 1.0, "identical groups");

  for (auto [d1, d2] : std::vector<std::pair<double, double>>{{2, 9}, {1, 5}, {5, 40}, {3, 100}}) {
    double prev = 1.0;
    for (double f = 0.0; f <= 30.0; f += 0.1) {
      const double p = f_distribution_sf(f, d1, d2);
      c.expect(p <= prev, "p not monotone at F=" + std::to_string(f));
      prev = p;
    }
  }
  return c;
}

void write_eval_fixture(const fs::path& root, int items) {
  std::mt19937_64 rng(123);
  fs::create_directories(root / "videos");
  fs::create_directories(root / "generated");
  std::vector<ManifestEntry> entries;
  for (int i = 0; i < items; ++i) {
    const std::string id = "item" + std::to_string(i);
    const FrameSequence original = fixtures::panning_video(rng, 24, 32, 32, 1, 8.0);
    const FrameSequence other = fixtures::panning_video(rng, 24, 32, 32, 2, 8.0);
    fixtures::write_y4m(root / "videos" / (id + ".y4m"), original, 8);
    fixtures::write_y4m(root / "generated" / (id + ".y4m"),
                        fixtures::concat({original.slice(0, 6), other.slice(6, 12), original.slice(18, 6)}), 8);
    ManifestEntry e;
    e.id = id;
    e.path = (root / "videos" / (id + ".y4m")).string();
    e.category = "synthetic";
    e.caption = "texture pans right";
    e.fps = 8.0;
    e.duration_seconds = 3.0;
    e.aesthetic_score = 0.6;
    e.start_window = {0, 5};
    e.end_window = {18, 23};
    entries.push_back(e);
  }
  save_manifest(entries, root / "manifest.json");
}

std::string tree_text(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::string all;
  for (const auto& f : files) all += fs::relative(f, dir).string() + "\n" + fixtures::slurp(f);
  return all;
}

Check determinism() {
  Check c;
  fixtures::TempDir dir;
  write_eval_fixture(dir.path(), 4);
  auto eval = [&](const std::string& out, int workers) {
    std::ostringstream o, e;
    return cli::run({"eval", "--manifest", (dir / "manifest.json").string(), "--generated",
                     (dir / "generated").string(), "--output", (dir / out).string(), "--workers",
                     std::to_string(workers)},
                    o, e);
  };
  c.expect(eval("a", 1) == cli::kExitOk, "first run did not complete");
  c.expect(eval("b", 1) == cli::kExitOk, "second run did not complete");
  c.expect(eval("c", 4) == cli::kExitOk, "four-worker run did not complete");
  const std::string a = tree_text(dir / "a");
  c.expect(a.find("item3.json") != std::string::npos, "reports missing");
  c.expect(a == tree_text(dir / "b"), "outputs differ between runs");
  c.expect(a == tree_text(dir / "c"), "outputs differ between worker counts");
  return c;
}

Check conditioning() {
  Check c;
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  for (int t = 0; t < 20; ++t) {
    std::vector<double> u(6), v(6);
    for (auto& x : u) x = n(rng);
    for (auto& x : v) x = n(rng);
    c.expect(slerp(u, v, 0.0) == u && slerp(u, v, 1.0) == v, "slerp endpoints");
  }
  const std::vector<double> e1{1, 0, 0, 0}, e2{0, 1, 0, 0};
  const auto mid = slerp(e1, e2, 0.5);
  const double h = std::sqrt(0.5);
  c.expect(std::fabs(mid[0] - h) <= 1e-9 && std::fabs(mid[1] - h) <= 1e-9 && mid[2] == 0 && mid[3] == 0,
           "orthogonal midpoint");

  auto ceil_div = [](int a, int b) { return (a + b - 1) / b; };
  for (int t = 0; t < 1000; ++t) {
    const int total = 1 + int(rng() % 120);
    const int ns = int(rng() % (total + 1));
    const int ne = int(rng() % (total - ns + 1));
    const int comp = 1 + int(rng() % 8);
    const int lt = ceil_div(total, comp);
    if (ceil_div(ns, comp) + ceil_div(ne, comp) > lt) {
      bool threw = false;
      try {
        latent_schedule(ns, ne, total, comp);
      } catch (const Error& e) {
        threw = e.kind() == ErrorKind::InfeasibleSchedule;
      }
      c.expect(threw, "infeasible tuple accepted");
      continue;
    }
    const LatentSchedule s = latent_schedule(ns, ne, total, comp);
    bool contiguous = s.total_latent_len == lt &&
                      s.conditioned_head + s.conditioned_tail + int(s.noise_indices.size()) == lt;
    for (std::size_t i = 0; i < s.noise_indices.size(); ++i) {
      contiguous = contiguous && s.noise_indices[i] == s.conditioned_head + int(i);
    }
    c.expect(contiguous, "partition broken for (" + std::to_string(ns) + ", " + std::to_string(ne) + ", " +
                             std::to_string(total) + ", " + std::to_string(comp) + ")");
  }
  return c;
}

}  // namespace

int main() {
  report("leaderboard total regression", leaderboard_regression);
  std::printf("N/A   %-34s          needs the curated video corpus and six generators; covered by the checks below\n",
              "full benchmark reproduction");
  report("metric oracle suite", metric_oracles);
  report("self-evaluation identities", self_identities);
  report("flicker and periodicity fixtures", flicker_periodicity);
  report("statistics", statistics);
  report("eval determinism", determinism);
  report("conditioning math", conditioning);
  std::printf("%d failed\n", failures);
  return failures == 0 ? 0 : 1;
}
