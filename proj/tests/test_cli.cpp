#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "support/fixtures.hpp"
#include "vcbench/cli.hpp"
#include "vcbench/feature_metrics.hpp"
#include "vcbench/manifest.hpp"
#include "vcbench/stats.hpp"

using namespace vcbench;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Originals under <root>/videos, generated videos under <root>/generated and a
// manifest at <root>/manifest.json. Odd items get a generated video that
// differs from the original outside the conditioning windows.
void write_eval_fixture(const fs::path& root, int items, const std::vector<int>& skip_generated = {}) {
  std::mt19937_64 rng(123);
  fs::create_directories(root / "videos");
  fs::create_directories(root / "generated");
  std::vector<ManifestEntry> entries;
  for (int i = 0; i < items; ++i) {
    const std::string id = "item" + std::to_string(i);
    const FrameSequence original = fixtures::panning_video(rng, 24, 32, 32, 1, 8.0);
    fixtures::write_y4m(root / "videos" / (id + ".y4m"), original, 8);
    FrameSequence generated = original;
    if (i % 2 == 1) {
      const FrameSequence noise = fixtures::panning_video(rng, 24, 32, 32, 2, 8.0);
      generated = fixtures::concat({original.slice(0, 6), noise.slice(6, 12), original.slice(18, 6)});
    }
    if (std::find(skip_generated.begin(), skip_generated.end(), i) == skip_generated.end()) {
      fixtures::write_y4m(root / "generated" / (id + ".y4m"), generated, 8);
    }
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

std::vector<std::string> eval_args(const fs::path& root, const fs::path& out, int workers = 1) {
  return {"eval", "--manifest", (root / "manifest.json").string(), "--generated", (root / "generated").string(),
          "--output", out.string(), "--workers", std::to_string(workers)};
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

ScoreReport synthetic_report(const std::string& id, double vqs, double secs, double tss) {
  ScoreReport r;
  r.item_id = id;
  r.config_digest = "0000000000000000";
  for (Metric m : kAllMetrics) r.metrics[static_cast<std::size_t>(m)] = 0.5;
  finalize_report(r);
  r.vqs = vqs;
  r.secs = secs;
  r.tss = tss;
  r.score = total_score(vqs, secs, tss);
  return r;
}

void write_reports(const fs::path& dir, const std::vector<ScoreReport>& reports) {
  fs::create_directories(dir);
  for (const auto& r : reports) std::ofstream(dir / (r.item_id + ".json")) << report_to_json(r);
}

}  // namespace

TEST_CASE("eval writes reports and a leaderboard") {
  fixtures::TempDir dir;
  write_eval_fixture(dir.path(), 2);
  const Result r = run_cli(eval_args(dir.path(), dir / "out"));
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "out" / "reports" / "item0.json"));
  CHECK(fs::exists(dir / "out" / "reports" / "item1.json"));
  const std::string csv = fixtures::slurp(dir / "out" / "leaderboard.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(csv.find("\nmodel,") != std::string::npos);

  const ScoreReport self = report_from_json(fixtures::slurp(dir / "out" / "reports" / "item0.json"));
  CHECK_FALSE(self.partial());
  CHECK(*self.metrics[static_cast<std::size_t>(Metric::PixelConsistency)] == 1.0);
  CHECK(*self.metrics[static_cast<std::size_t>(Metric::OpticalFlowError)] == 0.0);
  CHECK(r.out.find("2 complete") != std::string::npos);
}

TEST_CASE("eval marks missing generated videos") {
  fixtures::TempDir dir;
  write_eval_fixture(dir.path(), 2, {1});
  const Result r = run_cli(eval_args(dir.path(), dir / "out"));
  CHECK(r.code == 2);
  CHECK(fs::exists(dir / "out" / "reports" / "item0.json"));
  CHECK_FALSE(fs::exists(dir / "out" / "reports" / "item1.json"));
  const std::string summary = fixtures::slurp(dir / "out" / "summary.json");
  CHECK(summary.find("\"missing\": [\n    \"item1\"\n  ]") != std::string::npos);
}

TEST_CASE("eval rejects ambiguous generated files") {
  fixtures::TempDir dir;
  write_eval_fixture(dir.path(), 1);
  fs::copy_file(dir / "generated" / "item0.y4m", dir / "generated" / "item0.Y4M");
  const Result r = run_cli(eval_args(dir.path(), dir / "out"));
  CHECK(r.code == 2);
  const ScoreReport rep = report_from_json(fixtures::slurp(dir / "out" / "reports" / "item0.json"));
  CHECK(rep.errors.at("item").find("ambiguous") != std::string::npos);
}

TEST_CASE("eval configuration errors") {
  fixtures::TempDir dir;
  write_eval_fixture(dir.path(), 1);
  auto args = eval_args(dir.path(), dir / "out");
  args.insert(args.end(), {"--subject-backend", "clip-vit-l14"});
  const Result bad_backend = run_cli(args);
  CHECK(bad_backend.code == 1);
  CHECK(bad_backend.err.find("registered backends") != std::string::npos);
  CHECK(bad_backend.err.find("stub-embed") != std::string::npos);

  auto unknown = eval_args(dir.path(), dir / "out");
  unknown.push_back("--colour");
  CHECK(run_cli(unknown).code == 1);

  auto zero_workers = eval_args(dir.path(), dir / "out", 0);
  CHECK(run_cli(zero_workers).code == 1);

  auto bad_eta = eval_args(dir.path(), dir / "out");
  bad_eta.insert(bad_eta.end(), {"--flicker-eta", "-1"});
  CHECK(run_cli(bad_eta).code == 1);

  CHECK(run_cli({"eval", "--manifest", (dir / "nope.json").string(), "--generated", dir.path().string(), "--output",
                 (dir / "o").string()})
            .code == 1);
  CHECK(run_cli({}).code == 1);
}

TEST_CASE("eval output is identical across runs and worker counts") {
  fixtures::TempDir dir;
  write_eval_fixture(dir.path(), 4);
  REQUIRE(run_cli(eval_args(dir.path(), dir / "a", 1)).code == 0);
  REQUIRE(run_cli(eval_args(dir.path(), dir / "b", 1)).code == 0);
  REQUIRE(run_cli(eval_args(dir.path(), dir / "c", 4)).code == 0);
  const std::string a = tree_text(dir / "a");
  CHECK(a == tree_text(dir / "b"));
  CHECK(a == tree_text(dir / "c"));
}

TEST_CASE("build command") {
  fixtures::TempDir dir;
  std::mt19937_64 rng(3);
  fs::create_directories(dir / "in" / "nature");
  fixtures::write_y4m(dir / "in" / "nature" / "pan.y4m", fixtures::panning_video(rng, 80, 48, 48, 1, 8.0), 8);
  const std::vector<std::string> args{"build", "--input", (dir / "in").string(), "--output", (dir / "m1").string(),
                                      "--seed", "5", "--plots"};
  const Result r = run_cli(args);
  INFO(r.err);
  CHECK(r.code == 0);
  const auto entries = load_manifest(dir / "m1" / "manifest.json");
  CHECK(entries.size() == 1);
  CHECK(fs::exists(dir / "m1" / "summary.json"));
  CHECK(fs::exists(dir / "m1" / "plots" / "duration.svg"));

  auto again = args;
  again[4] = (dir / "m2").string();
  CHECK(run_cli(again).code == 0);
  CHECK(fixtures::slurp(dir / "m1" / "manifest.json") == fixtures::slurp(dir / "m2" / "manifest.json"));

  CHECK(run_cli({"build", "--input", (dir / "missing").string(), "--output", (dir / "m3").string()}).code == 1);
}

TEST_CASE("build skips a three-scene splice") {
  fixtures::TempDir dir;
  std::mt19937_64 rng(4);
  fs::create_directories(dir / "in");
  const auto gray = fixtures::panning_video(rng, 27, 32, 32, 1, 8.0);
  std::vector<Frame> blue;
  for (int i = 0; i < 27; ++i) blue.push_back(Frame::filled(32, 32, 0.1f, 0.2f, 0.9f));
  const auto splice = fixtures::concat({gray, FrameSequence(blue, 8.0), fixtures::panning_video(rng, 26, 32, 32, 1, 8.0)});
  fixtures::write_y4m(dir / "in" / "splice.y4m", splice, 8);
  const Result r = run_cli({"build", "--input", (dir / "in").string(), "--output", (dir / "m").string()});
  CHECK(r.code == 0);
  CHECK(load_manifest(dir / "m" / "manifest.json").empty());
  CHECK(r.out.find("warnings: 1") != std::string::npos);
}

TEST_CASE("leaderboard command") {
  fixtures::TempDir dir;
  write_reports(dir / "m1", {synthetic_report("a", 0.8, 0.9, 0.7), synthetic_report("b", 0.6, 0.9, 0.7)});
  write_reports(dir / "m2", {synthetic_report("a", 0.9, 0.9, 0.9)});
  const Result r = run_cli({"leaderboard", "m1=" + (dir / "m1").string(), "m2=" + (dir / "m2").string(), "--radar",
                            (dir / "radar.svg").string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("\nm2,") < r.out.find("\nm1,"));
  CHECK(fixtures::slurp(dir / "radar.svg").find("<svg") == 0);
  CHECK(run_cli({"leaderboard", "m1"}).code == 1);

  ScoreReport broken = synthetic_report("c", 0.1, 0.1, 0.1);
  broken.metrics[static_cast<std::size_t>(Metric::AestheticScore)].reset();
  finalize_report(broken);
  broken.errors["Q_A"] = "backend: weights not found";
  write_reports(dir / "m1", {broken});
  const Result skipped = run_cli({"leaderboard", "m1=" + (dir / "m1").string()});
  CHECK(skipped.code == 0);
  CHECK(skipped.err.find("skipping partial report c") != std::string::npos);
  CHECK(std::count(skipped.out.begin(), skipped.out.end(), '\n') == 2);

  write_reports(dir / "m3", {broken});
  CHECK(run_cli({"leaderboard", "m3=" + (dir / "m3").string()}).code == 1);
}

TEST_CASE("human alignment") {
  fixtures::TempDir dir;
  const std::vector<ScoreReport> reports{synthetic_report("a", 0.8, 0.9, 0.7), synthetic_report("b", 0.6, 0.85, 0.75),
                                         synthetic_report("c", 0.7, 0.95, 0.6)};
  write_reports(dir / "reports", reports);

  SUBCASE("raters equal to objective scores") {
    std::ofstream(dir / "r.csv") << "item_id,dimension,r1,r2\n"
                                    "a,VQS,0.8,0.8\nb,VQS,0.6,0.6\nc,VQS,0.7,0.7\n"
                                    "a,TSS,0.7,0.7\nb,TSS,0.75,0.75\nc,TSS,0.6,0.6\n";
    std::map<std::string, ScoreReport> by_id;
    for (const auto& r : reports) by_id[r.item_id] = r;
    const auto rows = cli::human_alignment(by_id, cli::parse_rater_csv(fixtures::slurp(dir / "r.csv")));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].dimension == "VQS");
    CHECK(rows[0].correlation == doctest::Approx(1.0));
    CHECK(rows[1].correlation == doctest::Approx(1.0));
    CHECK(rows[0].objective_mean == doctest::Approx(rows[0].subjective_mean));
  }

  SUBCASE("values compose the statistics module") {
    std::ofstream(dir / "r.csv") << "item_id,dimension,r1,r2,r3\n"
                                    "a,SECS,9,8,9\nb,SECS,7,8,6\nc,SECS,10,9,9\n";
    const Result r = run_cli({"human-align", "--reports", (dir / "reports").string(), "--raters",
                              (dir / "r.csv").string(), "--rating-scale", "10"});
    CHECK(r.code == 0);
    const std::vector<double> objective{0.9, 0.85, 0.95};
    const std::vector<double> subjective{26.0 / 30, 21.0 / 30, 28.0 / 30};
    cli::AlignmentRow expected;
    expected.dimension = "SECS";
    expected.objective_mean = (0.9 + 0.85 + 0.95) / 3;
    expected.subjective_mean = (26.0 + 21.0 + 28.0) / 90;
    expected.correlation = stats::pearson(objective, subjective);
    expected.icc = stats::icc2k(stats::RaterMatrix(3, 3, {0.9, 0.8, 0.9, 0.7, 0.8, 0.6, 1.0, 0.9, 0.9}));
    CHECK(r.out == cli::alignment_csv({expected}));
  }

  SUBCASE("mismatched ids") {
    std::ofstream(dir / "r.csv") << "item_id,dimension,r1,r2\na,VQS,1,2\nb,VQS,2,3\nz,VQS,3,4\n";
    const Result r = run_cli({"human-align", "--reports", (dir / "reports").string(), "--raters",
                              (dir / "r.csv").string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("z (no report)") != std::string::npos);
    CHECK(r.err.find("c (no ratings)") != std::string::npos);
  }

  SUBCASE("empty rater file") {
    std::ofstream(dir / "r.csv").close();
    const Result r = run_cli({"human-align", "--reports", (dir / "reports").string(), "--raters",
                              (dir / "r.csv").string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("empty") != std::string::npos);
  }
}

TEST_CASE("version command") {
  const Result r = run_cli({"version"});
  CHECK(r.code == 0);
  CHECK(r.out.find("1.0.0") != std::string::npos);
}

TEST_CASE("model cache directory") {
  const char* saved = std::getenv(kModelCacheEnv);
  const std::string keep = saved ? saved : "";
  setenv(kModelCacheEnv, "/tmp/weights", 1);
  CHECK(model_cache_dir() == fs::path("/tmp/weights"));
  CHECK(run_cli({"version"}).out.find("/tmp/weights") != std::string::npos);
  unsetenv(kModelCacheEnv);
  CHECK(model_cache_dir() != fs::path("/tmp/weights"));
  if (saved) setenv(kModelCacheEnv, keep.c_str(), 1);
}
