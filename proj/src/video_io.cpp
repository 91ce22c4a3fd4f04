#include "vcbench/video_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "vcbench/error.hpp"

#ifdef VCBENCH_HAVE_OPENCV
#include <opencv2/core.hpp>
#include <opencv2/videoio.hpp>
#endif

namespace vcbench {
namespace {

enum class Chroma { k420, k422, k444, kMono };

struct Y4mHeader {
  int width = 0;
  int height = 0;
  double fps = 0.0;
  Chroma chroma = Chroma::k420;
};

double parse_ratio(const std::string& token, const std::filesystem::path& path) {
  const auto colon = token.find(':');
  try {
    if (colon == std::string::npos) return std::stod(token);
    const double num = std::stod(token.substr(0, colon));
    const double den = std::stod(token.substr(colon + 1));
    if (den == 0.0) fail(ErrorKind::Decode, path.string() + ": zero frame-rate denominator");
    return num / den;
  } catch (const std::logic_error&) {
    fail(ErrorKind::Decode, path.string() + ": malformed frame rate '" + token + "'");
  }
}

Y4mHeader parse_y4m_header(const std::string& line, const std::filesystem::path& path) {
  std::istringstream in(line);
  std::string magic;
  in >> magic;
  if (magic != "YUV4MPEG2") fail(ErrorKind::Decode, path.string() + ": not a YUV4MPEG2 stream");
  Y4mHeader header;
  std::string token;
  while (in >> token) {
    const char tag = token[0];
    const std::string value = token.substr(1);
    if (tag == 'W') {
      header.width = std::atoi(value.c_str());
    } else if (tag == 'H') {
      header.height = std::atoi(value.c_str());
    } else if (tag == 'F') {
      header.fps = parse_ratio(value, path);
    } else if (tag == 'C') {
      if (value.rfind("420", 0) == 0) {
        header.chroma = Chroma::k420;
      } else if (value == "422") {
        header.chroma = Chroma::k422;
      } else if (value == "444") {
        header.chroma = Chroma::k444;
      } else if (value == "mono") {
        header.chroma = Chroma::kMono;
      } else {
        fail(ErrorKind::Decode, path.string() + ": unsupported colour space C" + value);
      }
    }
  }
  if (header.width <= 0 || header.height <= 0) {
    fail(ErrorKind::Decode, path.string() + ": missing frame dimensions");
  }
  if (!(header.fps > 0.0)) fail(ErrorKind::Decode, path.string() + ": missing frame rate");
  return header;
}

Frame ycbcr_to_frame(const Y4mHeader& hdr, const std::vector<unsigned char>& buf) {
  const int w = hdr.width;
  const int h = hdr.height;
  int cw = w, ch = h;
  if (hdr.chroma == Chroma::k420) {
    cw = (w + 1) / 2;
    ch = (h + 1) / 2;
  } else if (hdr.chroma == Chroma::k422) {
    cw = (w + 1) / 2;
  }
  const unsigned char* yp = buf.data();
  const unsigned char* up = yp + static_cast<std::size_t>(w) * h;
  const unsigned char* vp = up + static_cast<std::size_t>(cw) * ch;

  std::vector<float> rgb(static_cast<std::size_t>(w) * h * 3);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double luma = yp[static_cast<std::size_t>(y) * w + x] / 255.0;
      double u = 0.0, v = 0.0;
      if (hdr.chroma != Chroma::kMono) {
        const int cy = (hdr.chroma == Chroma::k420) ? y / 2 : y;
        const int cx = (hdr.chroma == Chroma::k444) ? x : x / 2;
        u = up[static_cast<std::size_t>(cy) * cw + cx] / 255.0 - 0.5;
        v = vp[static_cast<std::size_t>(cy) * cw + cx] / 255.0 - 0.5;
      }
      float* px = &rgb[(static_cast<std::size_t>(y) * w + x) * 3];
      px[0] = static_cast<float>(std::clamp(luma + 1.402 * v, 0.0, 1.0));
      px[1] = static_cast<float>(std::clamp(luma - 0.344136 * u - 0.714136 * v, 0.0, 1.0));
      px[2] = static_cast<float>(std::clamp(luma + 1.772 * u, 0.0, 1.0));
    }
  }
  return Frame(h, w, std::move(rgb));
}

FrameSequence decode_y4m(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Decode, path.string() + ": cannot open");
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::Decode, path.string() + ": empty file");
  const Y4mHeader hdr = parse_y4m_header(line, path);

  std::size_t frame_bytes = static_cast<std::size_t>(hdr.width) * hdr.height;
  switch (hdr.chroma) {
    case Chroma::k420:
      frame_bytes += 2 * static_cast<std::size_t>((hdr.width + 1) / 2) * ((hdr.height + 1) / 2);
      break;
    case Chroma::k422:
      frame_bytes += 2 * static_cast<std::size_t>((hdr.width + 1) / 2) * hdr.height;
      break;
    case Chroma::k444:
      frame_bytes *= 3;
      break;
    case Chroma::kMono:
      break;
  }

  std::vector<Frame> frames;
  std::vector<unsigned char> buf(frame_bytes);
  while (std::getline(in, line)) {
    if (line.rfind("FRAME", 0) != 0) {
      fail(ErrorKind::Decode, path.string() + ": corrupt frame marker");
    }
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() != static_cast<std::streamsize>(buf.size())) {
      fail(ErrorKind::Decode, path.string() + ": truncated frame " + std::to_string(frames.size()));
    }
    frames.push_back(ycbcr_to_frame(hdr, buf));
  }
  if (frames.empty()) fail(ErrorKind::EmptyVideo, path.string() + ": stream contains no frames");
  return FrameSequence(std::move(frames), hdr.fps, path.stem().string());
}

#ifdef VCBENCH_HAVE_OPENCV
FrameSequence decode_opencv(const std::filesystem::path& path) {
  cv::VideoCapture cap(path.string());
  if (!cap.isOpened()) fail(ErrorKind::Decode, path.string() + ": cannot open video container");
  const double fps = cap.get(cv::CAP_PROP_FPS);
  if (!(fps > 0.0)) fail(ErrorKind::Decode, path.string() + ": container reports no frame rate");
  std::vector<Frame> frames;
  cv::Mat bgr;
  while (cap.read(bgr)) {
    if (bgr.empty()) break;
    if (bgr.type() != CV_8UC3) fail(ErrorKind::Decode, path.string() + ": unexpected pixel format");
    std::vector<float> rgb(static_cast<std::size_t>(bgr.rows) * bgr.cols * 3);
    for (int y = 0; y < bgr.rows; ++y) {
      const auto* row = bgr.ptr<cv::Vec3b>(y);
      for (int x = 0; x < bgr.cols; ++x) {
        float* px = &rgb[(static_cast<std::size_t>(y) * bgr.cols + x) * 3];
        px[0] = row[x][2] / 255.0f;
        px[1] = row[x][1] / 255.0f;
        px[2] = row[x][0] / 255.0f;
      }
    }
    frames.emplace_back(bgr.rows, bgr.cols, std::move(rgb));
  }
  if (frames.empty()) fail(ErrorKind::EmptyVideo, path.string() + ": stream contains no frames");
  return FrameSequence(std::move(frames), fps, path.stem().string());
}
#endif

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

}  // namespace

std::vector<std::size_t> resample_indices(std::size_t n, double source_fps, double target_fps) {
  if (!(source_fps > 0.0) || !(target_fps > 0.0)) {
    fail(ErrorKind::InvalidArgument, "frame rates must be positive");
  }
  const double step = source_fps / target_fps;
  std::vector<std::size_t> out;
  for (std::size_t k = 0;; ++k) {
    // Small slack keeps exact ratios such as 24/12 from landing one below.
    const auto idx = static_cast<std::size_t>(std::floor(static_cast<double>(k) * step + 1e-9));
    if (idx >= n) break;
    out.push_back(idx);
  }
  return out;
}

std::vector<std::string> supported_video_extensions() {
  std::vector<std::string> exts{".y4m"};
#ifdef VCBENCH_HAVE_OPENCV
  for (const char* e : {".avi", ".mkv", ".mov", ".mp4", ".webm"}) exts.emplace_back(e);
#endif
  return exts;
}

bool opencv_decoding_available() noexcept {
#ifdef VCBENCH_HAVE_OPENCV
  return true;
#else
  return false;
#endif
}

FrameSequence decode_video(const std::filesystem::path& path, std::optional<double> target_fps) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    fail(ErrorKind::Decode, path.string() + ": no such file");
  }
  const std::string ext = lower_extension(path);
  FrameSequence video = [&] {
    if (ext == ".y4m") return decode_y4m(path);
#ifdef VCBENCH_HAVE_OPENCV
    return decode_opencv(path);
#else
    fail(ErrorKind::Decode, path.string() + ": container '" + ext +
                                "' needs OpenCV support, which this build lacks");
#endif
  }();
  if (!target_fps) return video;
  const auto keep = resample_indices(video.size(), video.fps(), *target_fps);
  return video.select(keep, *target_fps);
}

}  // namespace vcbench
