#include "vcbench/conditioning.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vcbench/error.hpp"

namespace vcbench {

std::vector<double> slerp(std::span<const double> u, std::span<const double> v, double alpha) {
  if (u.size() != v.size() || u.empty()) {
    fail(ErrorKind::Dimension, "slerp inputs must be non-empty and equal in dimension");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) fail(ErrorKind::InvalidArgument, "slerp alpha must lie in [0, 1]");
  double uu = 0.0, vv = 0.0, uv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    uu += u[i] * u[i];
    vv += v[i] * v[i];
    uv += u[i] * v[i];
  }
  if (!(uu > 0.0) || !(vv > 0.0)) {
    fail(ErrorKind::UndefinedDirection, "slerp of a zero vector has no direction");
  }
  const double omega = std::acos(std::clamp(uv / std::sqrt(uu * vv), -1.0, 1.0));

  std::vector<double> out(u.size());
  if (omega < kSlerpSmallAngle) {
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = (1.0 - alpha) * u[i] + alpha * v[i];
    return out;
  }
  if (std::numbers::pi - omega < kSlerpSmallAngle) {
    fail(ErrorKind::UndefinedDirection, "slerp between opposite vectors has no unique arc");
  }
  const double s = std::sin(omega);
  const double wu = std::sin((1.0 - alpha) * omega) / s;
  const double wv = std::sin(alpha * omega) / s;
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = wu * u[i] + wv * v[i];
  return out;
}

LatentSchedule latent_schedule(int start_frames, int end_frames, int total_frames,
                               int temporal_compression) {
  if (temporal_compression < 1) fail(ErrorKind::InvalidArgument, "temporal compression must be >= 1");
  if (start_frames < 0 || end_frames < 0 || total_frames < 1) {
    fail(ErrorKind::InvalidArgument, "frame counts must be non-negative with a positive total");
  }
  if (start_frames + end_frames > total_frames) {
    fail(ErrorKind::InfeasibleSchedule, "conditioning frames exceed the total frame count");
  }
  auto ceil_div = [&](int n) { return (n + temporal_compression - 1) / temporal_compression; };
  LatentSchedule s;
  s.total_latent_len = ceil_div(total_frames);
  s.conditioned_head = ceil_div(start_frames);
  s.conditioned_tail = ceil_div(end_frames);
  const int overflow = s.conditioned_head + s.conditioned_tail - s.total_latent_len;
  if (overflow > 0) {
    fail(ErrorKind::InfeasibleSchedule,
         "rounding to latent positions loses " + std::to_string(overflow) +
             " position(s): head " + std::to_string(s.conditioned_head) + " + tail " +
             std::to_string(s.conditioned_tail) + " > total " + std::to_string(s.total_latent_len));
  }
  for (int i = s.conditioned_head; i < s.total_latent_len - s.conditioned_tail; ++i) {
    s.noise_indices.push_back(i);
  }
  return s;
}

}  // namespace vcbench
