#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "vcbench/error.hpp"
#include "vcbench/ssim.hpp"

using namespace vcbench;

namespace {

Plane hashed_plane(int h, int w, std::int64_t a, std::int64_t b) {
  Plane p(h, w);
  for (std::int64_t i = 0; i < h; ++i) {
    for (std::int64_t j = 0; j < w; ++j) p.at(int(i), int(j)) = double(((i * a) ^ (j * b)) % 256) / 255.0;
  }
  return p;
}

}  // namespace

TEST_CASE("gaussian kernel") {
  const auto k = gaussian_kernel(kSsimWindow, kSsimSigma);
  REQUIRE(k.size() == 11);
  double sum = 0;
  for (double v : k) sum += v;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(k[5] > k[4]);
  CHECK(k[0] == doctest::Approx(k[10]));
  CHECK(k[4] / k[5] == doctest::Approx(std::exp(-1.0 / (2 * 1.5 * 1.5))));
}

TEST_CASE("ssim matches the direct loop reference") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int h = 11 + int(rng() % 20), w = 11 + int(rng() % 20);
    const Frame a = fixtures::random_frame(rng, h, w);
    const Frame b = fixtures::random_frame(rng, h, w);
    CHECK(std::fabs(ssim(a, b) - oracles::ssim_direct(a, b)) < 1e-9);
  }
}

TEST_CASE("ssim agrees with scikit-image on fixed images") {
  // structural_similarity(gaussian_weights=True, sigma=1.5,
  // use_sample_covariance=False, data_range=1)
  const Plane a = hashed_plane(32, 40, 73856093, 19349663);
  const Plane b = hashed_plane(32, 40, 19349663, 83492791);
  CHECK(ssim(a, b) == doctest::Approx(0.014253935314757427).epsilon(1e-9));

  Plane c(32, 40);
  for (int i = 0; i < 32; ++i) {
    for (int j = 0; j < 40; ++j) {
      c.at(i, j) = std::clamp(a.at(i, j) * 0.7 + 0.1 * std::sin(i / 3.0) + 0.1, 0.0, 1.0);
    }
  }
  CHECK(ssim(a, c) == doctest::Approx(0.9193313161500393).epsilon(1e-9));
}

TEST_CASE("ssim properties") {
  std::mt19937_64 rng(3);
  const Frame a = fixtures::random_frame(rng, 20, 20);
  const Frame b = fixtures::random_frame(rng, 20, 20);
  CHECK(ssim(a, a) == 1.0);
  CHECK(ssim(a, b) == doctest::Approx(ssim(b, a)).epsilon(1e-12));
  CHECK(ssim(a, b) < 1.0);
  const Frame gray = Frame::filled(16, 16, 0.4f, 0.4f, 0.4f);
  CHECK(ssim(gray, gray) == 1.0);

  const auto prepared = prepare_ssim(a);
  CHECK(prepared.mean.height == 10);
  CHECK(prepared.mean.width == 10);
  CHECK(ssim(prepared, prepare_ssim(b)) == ssim(a, b));
}

TEST_CASE("ssim rejects small or mismatched images") {
  auto kind = [](const std::function<void()>& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  CHECK(kind([] { ssim(Frame::filled(10, 20, 0, 0, 0), Frame::filled(10, 20, 0, 0, 0)); }) ==
        ErrorKind::Dimension);
  CHECK(kind([] { ssim(Frame::filled(12, 20, 0, 0, 0), Frame::filled(12, 21, 0, 0, 0)); }) ==
        ErrorKind::Dimension);
}
