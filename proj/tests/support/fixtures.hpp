#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <numbers>
#include <string>
#include <vector>

#include "vcbench/media.hpp"

namespace fixtures {

using vcbench::Frame;
using vcbench::FrameSequence;
using vcbench::Plane;

inline Frame random_frame(std::mt19937_64& rng, int h, int w) {
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  std::vector<float> rgb(static_cast<std::size_t>(h) * w * 3);
  for (auto& v : rgb) v = u(rng);
  return Frame(h, w, std::move(rgb));
}

inline Frame gray_frame(int h, int w, const std::function<double(int, int)>& value) {
  std::vector<float> rgb(static_cast<std::size_t>(h) * w * 3);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto v = static_cast<float>(std::clamp(value(y, x), 0.0, 1.0));
      for (int c = 0; c < 3; ++c) rgb[(static_cast<std::size_t>(y) * w + x) * 3 + c] = v;
    }
  }
  return Frame(h, w, std::move(rgb));
}

// Box-blurred noise: textured but smooth enough for SSIM to vary gradually.
inline Plane smooth_texture(std::mt19937_64& rng, int h, int w, int radius = 2) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Plane raw(h, w);
  for (auto& v : raw.values) v = u(rng);
  Plane out(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      int n = 0;
      for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
          const int yy = std::clamp(y + dy, 0, h - 1);
          const int xx = std::clamp(x + dx, 0, w - 1);
          s += raw.at(yy, xx);
          ++n;
        }
      }
      out.at(y, x) = s / n;
    }
  }
  return out;
}

inline Plane noise_plane(std::mt19937_64& rng, int h, int w) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Plane p(h, w);
  for (auto& v : p.values) v = u(rng);
  return p;
}

// h x w window of `texture` with its top-left corner at (oy, ox).
inline Frame crop(const Plane& texture, int oy, int ox, int h, int w) {
  return gray_frame(h, w, [&](int y, int x) { return texture.at(oy + y, ox + x); });
}

// Texture panning right by `step` pixels per frame.
inline FrameSequence panning_video(std::mt19937_64& rng, int frames, int h, int w, int step = 1,
                                   double fps = 24.0) {
  const Plane tex = smooth_texture(rng, h, w + step * frames);
  std::vector<Frame> out;
  for (int t = 0; t < frames; ++t) out.push_back(crop(tex, 0, step * t, h, w));
  return FrameSequence(std::move(out), fps);
}

// Pair of 64x64 noise crops where the content of `b` sits (dx, dy) pixels
// further right and down than in `a`.
struct TranslationPair {
  Plane a;
  Plane b;
};

inline TranslationPair translated_noise(std::mt19937_64& rng, int dx, int dy, int size = 64, int margin = 16) {
  const Plane tex = noise_plane(rng, size + 2 * margin, size + 2 * margin);
  TranslationPair p{Plane(size, size), Plane(size, size)};
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      p.a.at(y, x) = tex.at(margin + y, margin + x);
      p.b.at(y, x) = tex.at(margin + y - dy, margin + x - dx);
    }
  }
  return p;
}

inline FrameSequence static_video(std::mt19937_64& rng, int frames, int h, int w, double fps = 24.0) {
  const Plane tex = smooth_texture(rng, h, w);
  return FrameSequence(std::vector<Frame>(static_cast<std::size_t>(frames), crop(tex, 0, 0, h, w)), fps);
}

// Heavily smoothed texture shifted by a raised-cosine offset with the given
// period; small enough shifts keep SSIM monotone in the offset.
inline FrameSequence oscillating(std::mt19937_64& rng, int frames, int period, int amplitude = 6, int size = 48, double fps = 24.0) {
  const Plane tex = smooth_texture(rng, size, size + amplitude, 6);
  std::vector<Frame> out;
  for (int t = 0; t < frames; ++t) {
    const double phase = 2 * std::numbers::pi * t / period;
    const int shift = int(std::lround(amplitude * (1 - std::cos(phase)) / 2));
    out.push_back(crop(tex, 0, shift, size, size));
  }
  return FrameSequence(std::move(out), fps);
}

inline std::vector<Frame> repeat(const Frame& f, int n) { return std::vector<Frame>(static_cast<std::size_t>(n), f); }

inline FrameSequence concat(std::vector<FrameSequence> parts) {
  std::vector<Frame> frames;
  for (const auto& p : parts) frames.insert(frames.end(), p.frames().begin(), p.frames().end());
  return FrameSequence(std::move(frames), parts.front().fps());
}

// Writes an uncompressed 4:4:4 YUV4MPEG2 stream (BT.601 full range).
inline void write_y4m(const std::filesystem::path& path, const FrameSequence& video, int fps_num,
                      int fps_den = 1) {
  std::ofstream out(path, std::ios::binary);
  out << "YUV4MPEG2 W" << video.width() << " H" << video.height() << " F" << fps_num << ':' << fps_den
      << " Ip A1:1 C444\n";
  auto byte = [](double v) { return static_cast<char>(static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0))); };
  for (const auto& f : video.frames()) {
    out << "FRAME\n";
    const std::size_t n = f.pixel_count();
    std::string y(n, '\0'), u(n, '\0'), v(n, '\0');
    for (std::size_t i = 0; i < n; ++i) {
      const double r = f.data()[i * 3], g = f.data()[i * 3 + 1], b = f.data()[i * 3 + 2];
      y[i] = byte(0.299 * r + 0.587 * g + 0.114 * b);
      u[i] = byte(0.5 - 0.168736 * r - 0.331264 * g + 0.5 * b);
      v[i] = byte(0.5 + 0.5 * r - 0.418688 * g - 0.081312 * b);
    }
    out << y << u << v;
  }
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("vcbench-test-" + std::to_string(rd()) + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace fixtures
