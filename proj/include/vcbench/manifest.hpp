#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace vcbench {

// Inclusive frame range [first, last].
struct FrameWindow {
  long first = 0;
  long last = 0;

  long length() const noexcept { return last - first + 1; }
  bool operator==(const FrameWindow&) const = default;
};

struct ManifestEntry {
  std::string id;
  std::string path;
  std::string category;
  std::string subcategory;
  std::string caption;
  double fps = 0.0;
  double duration_seconds = 0.0;
  double aesthetic_score = 0.0;
  std::vector<long> scene_cuts;
  FrameWindow start_window;
  FrameWindow end_window;

  bool operator==(const ManifestEntry&) const = default;
};

inline constexpr int kManifestVersion = 1;

// Throws Error(Manifest) naming the offending field.
void validate_entry(const ManifestEntry& entry);

std::string manifest_to_string(const std::vector<ManifestEntry>& entries);
std::vector<ManifestEntry> manifest_from_string(const std::string& text);

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);
void save_manifest(const std::vector<ManifestEntry>& entries, const std::filesystem::path& path);

}  // namespace vcbench
