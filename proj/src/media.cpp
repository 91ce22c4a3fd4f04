#include "vcbench/media.hpp"

#include <algorithm>
#include <cmath>

#include "vcbench/error.hpp"

namespace vcbench {

Frame::Frame(int height, int width, std::vector<float> rgb)
    : height_(height), width_(width), rgb_(std::move(rgb)) {
  if (height <= 0 || width <= 0) {
    fail(ErrorKind::Dimension, "frame dimensions must be positive");
  }
  if (rgb_.size() != static_cast<std::size_t>(height) * width * kChannels) {
    fail(ErrorKind::Dimension, "frame buffer size does not match " + std::to_string(height) +
                                   "x" + std::to_string(width) + "x3");
  }
  for (float v : rgb_) {
    if (!std::isfinite(v) || v < 0.0f || v > 1.0f) {
      fail(ErrorKind::InvalidArgument, "frame pixel values must be finite and within [0, 1]");
    }
  }
}

Frame Frame::filled(int height, int width, float r, float g, float b) {
  std::vector<float> rgb(static_cast<std::size_t>(std::max(height, 0)) * std::max(width, 0) *
                         kChannels);
  for (std::size_t i = 0; i < rgb.size(); i += kChannels) {
    rgb[i] = r;
    rgb[i + 1] = g;
    rgb[i + 2] = b;
  }
  return Frame(height, width, std::move(rgb));
}

FrameSequence::FrameSequence(std::vector<Frame> frames, double fps,
                             std::optional<std::string> source_id)
    : frames_(std::move(frames)), fps_(fps), source_id_(std::move(source_id)) {
  if (frames_.empty()) fail(ErrorKind::EmptyVideo, "frame sequence has no frames");
  if (!(fps_ > 0.0) || !std::isfinite(fps_)) {
    fail(ErrorKind::InvalidArgument, "frame rate must be a positive finite number");
  }
  for (const Frame& f : frames_) {
    if (!f.same_shape(frames_.front())) {
      fail(ErrorKind::Dimension, "all frames of a sequence must share one shape");
    }
  }
}

FrameSequence FrameSequence::slice(std::size_t first, std::size_t count) const {
  if (count == 0 || first + count > frames_.size()) {
    fail(ErrorKind::Dimension, "slice [" + std::to_string(first) + ", " +
                                   std::to_string(first + count) + ") out of range for " +
                                   std::to_string(frames_.size()) + " frames");
  }
  std::vector<Frame> out(frames_.begin() + static_cast<std::ptrdiff_t>(first),
                         frames_.begin() + static_cast<std::ptrdiff_t>(first + count));
  return FrameSequence(std::move(out), fps_, source_id_);
}

FrameSequence FrameSequence::reversed() const {
  std::vector<Frame> out(frames_.rbegin(), frames_.rend());
  return FrameSequence(std::move(out), fps_, source_id_);
}

FrameSequence FrameSequence::select(std::span<const std::size_t> indices, double fps) const {
  std::vector<Frame> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= frames_.size()) fail(ErrorKind::Dimension, "frame index out of range");
    out.push_back(frames_[i]);
  }
  return FrameSequence(std::move(out), fps, source_id_);
}

ClipPair::ClipPair(FrameSequence start_clip, FrameSequence end_clip)
    : start(std::move(start_clip)), end(std::move(end_clip)) {
  if (start.height() != end.height() || start.width() != end.width()) {
    fail(ErrorKind::Dimension, "start and end clips must share one resolution");
  }
  if (start.fps() != end.fps()) {
    fail(ErrorKind::InvalidArgument, "start and end clips must share one frame rate");
  }
}

EvaluationItem::EvaluationItem(std::string item_id, ClipPair clip_pair,
                               FrameSequence generated_video,
                               std::optional<std::string> text_prompt, std::string item_category,
                               std::string item_subcategory)
    : id(std::move(item_id)),
      clips(std::move(clip_pair)),
      generated(std::move(generated_video)),
      prompt(std::move(text_prompt)),
      category(std::move(item_category)),
      subcategory(std::move(item_subcategory)) {
  if (generated.height() != clips.start.height() || generated.width() != clips.start.width()) {
    fail(ErrorKind::Dimension, "generated video resolution differs from the conditioning clips");
  }
  if (generated.fps() != clips.start.fps()) {
    fail(ErrorKind::InvalidArgument, "generated video frame rate differs from the conditioning clips");
  }
  if (generated.size() < clips.start.size() + clips.end.size()) {
    fail(ErrorKind::Dimension, "generated video has " + std::to_string(generated.size()) +
                                   " frames, fewer than the " +
                                   std::to_string(clips.start.size() + clips.end.size()) +
                                   " conditioning frames");
  }
}

PlaneSet rgb_to_yuv(const Frame& frame) {
  const int h = frame.height();
  const int w = frame.width();
  PlaneSet out{Plane(h, w), Plane(h, w), Plane(h, w)};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double r = frame.at(y, x, 0);
      const double g = frame.at(y, x, 1);
      const double b = frame.at(y, x, 2);
      out.first.at(y, x) = std::clamp(0.299 * r + 0.587 * g + 0.114 * b, 0.0, 1.0);
      out.second.at(y, x) = std::clamp(0.5 - 0.168736 * r - 0.331264 * g + 0.5 * b, 0.0, 1.0);
      out.third.at(y, x) = std::clamp(0.5 + 0.5 * r - 0.418688 * g - 0.081312 * b, 0.0, 1.0);
    }
  }
  return out;
}

namespace {

struct Hsv {
  double h, s, v;
};

Hsv hsv_of(double r, double g, double b) {
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double delta = mx - mn;
  Hsv out{0.0, 0.0, mx};
  if (mx > 0.0) out.s = delta / mx;
  if (delta <= 0.0) return out;
  double hue;
  if (mx == r) {
    hue = (g - b) / delta;
  } else if (mx == g) {
    hue = 2.0 + (b - r) / delta;
  } else {
    hue = 4.0 + (r - g) / delta;
  }
  hue /= 6.0;
  if (hue < 0.0) hue += 1.0;
  if (hue >= 1.0) hue -= 1.0;
  out.h = hue;
  return out;
}

}  // namespace

PlaneSet rgb_to_hsv(const Frame& frame) {
  const int h = frame.height();
  const int w = frame.width();
  PlaneSet out{Plane(h, w), Plane(h, w), Plane(h, w)};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Hsv p = hsv_of(frame.at(y, x, 0), frame.at(y, x, 1), frame.at(y, x, 2));
      out.first.at(y, x) = p.h;
      out.second.at(y, x) = p.s;
      out.third.at(y, x) = p.v;
    }
  }
  return out;
}

Plane luma(const Frame& frame) {
  const int h = frame.height();
  const int w = frame.width();
  Plane out(h, w);
  const auto px = frame.data();
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double v = 0.299 * px[3 * i] + 0.587 * px[3 * i + 1] + 0.114 * px[3 * i + 2];
    out.values[i] = std::clamp(v, 0.0, 1.0);
  }
  return out;
}

double hue_distance(double a, double b) noexcept {
  const double d = std::fabs(a - b);
  return std::min(d, 1.0 - d);
}

}  // namespace vcbench
