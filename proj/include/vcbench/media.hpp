#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vcbench {

// Single-channel image of doubles, row-major.
struct Plane {
  int height = 0;
  int width = 0;
  std::vector<double> values;

  Plane() = default;
  Plane(int h, int w, double fill = 0.0)
      : height(h), width(w), values(static_cast<std::size_t>(h) * w, fill) {}

  double& at(int y, int x) { return values[static_cast<std::size_t>(y) * width + x]; }
  double at(int y, int x) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

// Three planes produced by a colour-space conversion of one frame.
struct PlaneSet {
  Plane first;
  Plane second;
  Plane third;
};

/// An RGB image with interleaved channels in [0, 1].
///
/// Shape is fixed at construction; pixel storage is immutable afterwards.
class Frame {
 public:
  static constexpr int kChannels = 3;

  Frame(int height, int width, std::vector<float> rgb);
  static Frame filled(int height, int width, float r, float g, float b);

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  int channels() const noexcept { return kChannels; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(height_) * width_;
  }

  float at(int y, int x, int c) const {
    return rgb_[(static_cast<std::size_t>(y) * width_ + x) * kChannels + c];
  }
  std::span<const float> data() const noexcept { return rgb_; }

  bool same_shape(const Frame& other) const noexcept {
    return height_ == other.height_ && width_ == other.width_;
  }
  bool operator==(const Frame& other) const = default;

 private:
  int height_;
  int width_;
  std::vector<float> rgb_;
};

class FrameSequence {
 public:
  FrameSequence(std::vector<Frame> frames, double fps,
                std::optional<std::string> source_id = std::nullopt);

  std::size_t size() const noexcept { return frames_.size(); }
  const Frame& operator[](std::size_t i) const { return frames_[i]; }
  const std::vector<Frame>& frames() const noexcept { return frames_; }
  double fps() const noexcept { return fps_; }
  const std::optional<std::string>& source_id() const noexcept { return source_id_; }
  int height() const noexcept { return frames_.front().height(); }
  int width() const noexcept { return frames_.front().width(); }

  // Frames [first, first + count).
  FrameSequence slice(std::size_t first, std::size_t count) const;
  FrameSequence reversed() const;

  // Frames at the given indices, in order, at a new frame rate.
  FrameSequence select(std::span<const std::size_t> indices, double fps) const;

 private:
  std::vector<Frame> frames_;
  double fps_;
  std::optional<std::string> source_id_;
};

struct ClipPair {
  FrameSequence start;
  FrameSequence end;

  ClipPair(FrameSequence start_clip, FrameSequence end_clip);
};

struct EvaluationItem {
  std::string id;
  ClipPair clips;
  FrameSequence generated;
  std::optional<std::string> prompt;
  std::string category;
  std::string subcategory;

  EvaluationItem(std::string item_id, ClipPair clip_pair, FrameSequence generated_video,
                 std::optional<std::string> text_prompt = std::nullopt,
                 std::string item_category = {}, std::string item_subcategory = {});

  std::size_t start_length() const noexcept { return clips.start.size(); }
  std::size_t end_length() const noexcept { return clips.end.size(); }
};

// BT.601 full-range conversion. Y in [0, 1]; U and V centred at 0.5.
PlaneSet rgb_to_yuv(const Frame& frame);

// Hexcone conversion with every plane scaled to [0, 1]. Hue of achromatic
// pixels is 0.
PlaneSet rgb_to_hsv(const Frame& frame);

// Y plane only; the input to SSIM, flow, and flicker luminance terms.
Plane luma(const Frame& frame);

// Distance on the unit hue circle, in [0, 0.5].
double hue_distance(double a, double b) noexcept;

}  // namespace vcbench
