#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <vector>

#include "vcbench/media.hpp"

namespace vcbench {

// Decodes a video file into a normalized frame sequence.
//
// YUV4MPEG2 (.y4m) streams are read natively. Other containers go through
// OpenCV when the toolkit was built with it; otherwise they fail with a
// decode error. When target_fps is set, frames are picked by nearest-index
// selection (no interpolation).
FrameSequence decode_video(const std::filesystem::path& path,
                           std::optional<double> target_fps = std::nullopt);

// Source indices kept when resampling n frames from source_fps to target_fps:
// index k maps to floor(k * source_fps / target_fps) while that is < n.
std::vector<std::size_t> resample_indices(std::size_t n, double source_fps, double target_fps);

// File extensions decode_video accepts in this build (lower case, with dot).
std::vector<std::string> supported_video_extensions();

bool opencv_decoding_available() noexcept;

}  // namespace vcbench
