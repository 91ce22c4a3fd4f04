#include "vcbench/ssim.hpp"

#include <cmath>

#include "vcbench/error.hpp"

namespace vcbench {
namespace {

const std::vector<double>& window_taps() {
  static const std::vector<double> taps = gaussian_kernel(kSsimWindow, kSsimSigma);
  return taps;
}

void check_size(const Plane& p) {
  if (p.height < kSsimWindow || p.width < kSsimWindow) {
    fail(ErrorKind::Dimension, "SSIM needs images of at least 11x11, got " +
                                   std::to_string(p.height) + "x" + std::to_string(p.width));
  }
}

// Separable Gaussian filter keeping only positions where the window fits.
Plane filter_valid(const Plane& in) {
  const auto& taps = window_taps();
  const int k = kSsimWindow;
  const int out_w = in.width - k + 1;
  const int out_h = in.height - k + 1;
  Plane horiz(in.height, out_w);
  for (int y = 0; y < in.height; ++y) {
    const double* row = &in.values[static_cast<std::size_t>(y) * in.width];
    for (int x = 0; x < out_w; ++x) {
      double acc = 0.0;
      for (int t = 0; t < k; ++t) acc += taps[t] * row[x + t];
      horiz.at(y, x) = acc;
    }
  }
  Plane out(out_h, out_w);
  for (int y = 0; y < out_h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      double acc = 0.0;
      for (int t = 0; t < k; ++t) acc += taps[t] * horiz.at(y + t, x);
      out.at(y, x) = acc;
    }
  }
  return out;
}

}  // namespace

std::vector<double> gaussian_kernel(int size, double sigma) {
  std::vector<double> taps(static_cast<std::size_t>(size));
  const double centre = (size - 1) / 2.0;
  double sum = 0.0;
  for (int i = 0; i < size; ++i) {
    const double d = i - centre;
    taps[i] = std::exp(-(d * d) / (2.0 * sigma * sigma));
    sum += taps[i];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

SsimPrepared prepare_ssim(const Plane& luma_plane) {
  check_size(luma_plane);
  SsimPrepared out;
  out.luma = luma_plane;
  out.mean = filter_valid(luma_plane);
  Plane squared = luma_plane;
  for (double& v : squared.values) v *= v;
  out.variance = filter_valid(squared);
  for (std::size_t i = 0; i < out.variance.values.size(); ++i) {
    out.variance.values[i] -= out.mean.values[i] * out.mean.values[i];
  }
  return out;
}

SsimPrepared prepare_ssim(const Frame& frame) { return prepare_ssim(luma(frame)); }

std::vector<SsimPrepared> prepare_ssim(const FrameSequence& video) {
  std::vector<SsimPrepared> out;
  out.reserve(video.size());
  for (const Frame& f : video.frames()) out.push_back(prepare_ssim(f));
  return out;
}

double ssim(const SsimPrepared& a, const SsimPrepared& b) {
  if (a.luma.height != b.luma.height || a.luma.width != b.luma.width) {
    fail(ErrorKind::Dimension, "SSIM inputs differ in shape");
  }
  Plane product = a.luma;
  for (std::size_t i = 0; i < product.values.size(); ++i) product.values[i] *= b.luma.values[i];
  const Plane cross = filter_valid(product);

  double total = 0.0;
  for (std::size_t i = 0; i < cross.values.size(); ++i) {
    const double ma = a.mean.values[i];
    const double mb = b.mean.values[i];
    const double cov = cross.values[i] - ma * mb;
    const double num = (2.0 * ma * mb + kSsimC1) * (2.0 * cov + kSsimC2);
    const double den =
        (ma * ma + mb * mb + kSsimC1) * (a.variance.values[i] + b.variance.values[i] + kSsimC2);
    total += num / den;
  }
  return total / static_cast<double>(cross.values.size());
}

double ssim(const Plane& a, const Plane& b) {
  if (a.height != b.height || a.width != b.width) {
    fail(ErrorKind::Dimension, "SSIM inputs differ in shape");
  }
  return ssim(prepare_ssim(a), prepare_ssim(b));
}

double ssim(const Frame& a, const Frame& b) {
  if (!a.same_shape(b)) fail(ErrorKind::Dimension, "SSIM inputs differ in shape");
  return ssim(luma(a), luma(b));
}

}  // namespace vcbench
