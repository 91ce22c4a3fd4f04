#pragma once

#include <span>
#include <vector>

namespace vcbench {

inline constexpr double kSlerpSmallAngle = 1e-6;

// Spherical interpolation between u (alpha = 0) and v (alpha = 1). Falls back
// to linear interpolation when the angle between them is below 1e-6 rad.
std::vector<double> slerp(std::span<const double> u, std::span<const double> v, double alpha);

// Latent positions for boundary-conditioned generation. Head positions hold
// the start clip, tail positions the end clip, the rest are noise.
struct LatentSchedule {
  int total_latent_len = 0;
  int conditioned_head = 0;
  int conditioned_tail = 0;
  std::vector<int> noise_indices;
};

// Latent lengths are ceil(frames / temporal_compression). Rounding up can
// make head + tail exceed the total; that raises Error(InfeasibleSchedule)
// with the number of overlapping positions.
LatentSchedule latent_schedule(int start_frames, int end_frames, int total_frames,
                               int temporal_compression);

}  // namespace vcbench
