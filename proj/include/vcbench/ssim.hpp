#pragma once

#include <vector>

#include "vcbench/media.hpp"

namespace vcbench {

inline constexpr int kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;
inline constexpr double kSsimC1 = 0.01 * 0.01;  // (K1 * L)^2 with L = 1
inline constexpr double kSsimC2 = 0.03 * 0.03;  // (K2 * L)^2

// Normalized 1-D Gaussian taps.
std::vector<double> gaussian_kernel(int size, double sigma);

// Per-frame SSIM statistics that do not depend on the other frame: the luma
// plane plus its windowed mean and variance over the valid region.
//
// Comparing one frame against many (DTW cost matrices, periodicity series)
// reuses these so that each pair only filters the cross product.
struct SsimPrepared {
  Plane luma;
  Plane mean;
  Plane variance;
};

SsimPrepared prepare_ssim(const Plane& luma);
SsimPrepared prepare_ssim(const Frame& frame);
std::vector<SsimPrepared> prepare_ssim(const FrameSequence& video);

/// Structural similarity on the luma plane.
///
/// Uses an 11x11 Gaussian window (sigma 1.5) evaluated at every position
/// where the window fits entirely inside the image, and averages the SSIM
/// map. Both images must share a shape of at least 11x11; otherwise a
/// dimension error is raised.
double ssim(const SsimPrepared& a, const SsimPrepared& b);
double ssim(const Plane& a, const Plane& b);
double ssim(const Frame& a, const Frame& b);

}  // namespace vcbench
