#include "vcbench/manifest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vcbench/error.hpp"

namespace vcbench {
namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& id, const std::string& field,
                            const std::string& why) {
  fail(ErrorKind::Manifest,
       "manifest entry '" + id + "': field '" + field + "' " + why);
}

long frame_count(const ManifestEntry& e) {
  return std::lround(e.duration_seconds * e.fps);
}

json window_json(const FrameWindow& w) { return json::array({w.first, w.last}); }

template <typename T>
T required(const json& obj, const char* field, const std::string& id) {
  if (!obj.contains(field)) bad_field(id, field, "is missing");
  try {
    return obj.at(field).get<T>();
  } catch (const json::exception&) {
    bad_field(id, field, "has the wrong type");
  }
}

FrameWindow window_from(const json& obj, const char* field, const std::string& id) {
  const auto values = required<std::vector<long>>(obj, field, id);
  if (values.size() != 2) bad_field(id, field, "must be a two-element integer array");
  return {values[0], values[1]};
}

}  // namespace

void validate_entry(const ManifestEntry& e) {
  if (e.id.empty()) bad_field(e.id, "id", "must not be empty");
  if (e.path.empty()) bad_field(e.id, "path", "must not be empty");
  if (!(e.fps > 0.0) || !std::isfinite(e.fps)) bad_field(e.id, "fps", "must be positive");
  if (!(e.duration_seconds > 0.0) || !std::isfinite(e.duration_seconds)) {
    bad_field(e.id, "duration_seconds", "must be positive");
  }
  if (!(e.aesthetic_score >= 0.0 && e.aesthetic_score <= 1.0)) {
    bad_field(e.id, "aesthetic_score", "must lie in [0, 1]");
  }
  const long n = frame_count(e);
  for (std::size_t i = 0; i < e.scene_cuts.size(); ++i) {
    if (e.scene_cuts[i] <= 0 || e.scene_cuts[i] >= n) {
      bad_field(e.id, "scene_cuts", "index " + std::to_string(e.scene_cuts[i]) +
                                        " outside (0, " + std::to_string(n) + ")");
    }
    if (i > 0 && e.scene_cuts[i] <= e.scene_cuts[i - 1]) {
      bad_field(e.id, "scene_cuts", "must be strictly increasing");
    }
  }
  if (e.start_window.first < 0 || e.start_window.last < e.start_window.first) {
    bad_field(e.id, "start_window", "must be a non-empty range starting at >= 0");
  }
  if (e.end_window.last < e.end_window.first) {
    bad_field(e.id, "end_window", "must be a non-empty range");
  }
  if (e.end_window.last >= n) {
    bad_field(e.id, "end_window", "extends past the last frame " + std::to_string(n - 1));
  }
  if (e.start_window.last >= e.end_window.first) {
    bad_field(e.id, "end_window", "overlaps or precedes start_window");
  }
}

std::string manifest_to_string(const std::vector<ManifestEntry>& entries) {
  json list = json::array();
  for (const auto& e : entries) {
    validate_entry(e);
    list.push_back(json{
        {"id", e.id},
        {"path", e.path},
        {"category", e.category},
        {"subcategory", e.subcategory},
        {"caption", e.caption},
        {"fps", e.fps},
        {"duration_seconds", e.duration_seconds},
        {"aesthetic_score", e.aesthetic_score},
        {"scene_cuts", e.scene_cuts},
        {"start_window", window_json(e.start_window)},
        {"end_window", window_json(e.end_window)},
    });
  }
  json doc{{"format", "vcbench-manifest"}, {"version", kManifestVersion}, {"entries", list}};
  return doc.dump(2) + "\n";
}

std::vector<ManifestEntry> manifest_from_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& ex) {
    fail(ErrorKind::Manifest, std::string("manifest is not valid JSON: ") + ex.what());
  }
  if (!doc.is_object() || doc.value("format", "") != "vcbench-manifest") {
    fail(ErrorKind::Manifest, "manifest header field 'format' must be 'vcbench-manifest'");
  }
  if (doc.value("version", 0) != kManifestVersion) {
    fail(ErrorKind::Manifest, "manifest header field 'version' is unsupported");
  }
  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    fail(ErrorKind::Manifest, "manifest field 'entries' must be an array");
  }
  std::vector<ManifestEntry> out;
  for (const auto& obj : doc["entries"]) {
    if (!obj.is_object()) fail(ErrorKind::Manifest, "manifest entries must be objects");
    const std::string id = obj.contains("id") && obj["id"].is_string() ? obj["id"].get<std::string>()
                                                                      : std::string("?");
    ManifestEntry e;
    e.id = required<std::string>(obj, "id", id);
    e.path = required<std::string>(obj, "path", id);
    e.category = required<std::string>(obj, "category", id);
    e.subcategory = required<std::string>(obj, "subcategory", id);
    e.caption = required<std::string>(obj, "caption", id);
    e.fps = required<double>(obj, "fps", id);
    e.duration_seconds = required<double>(obj, "duration_seconds", id);
    e.aesthetic_score = required<double>(obj, "aesthetic_score", id);
    e.scene_cuts = required<std::vector<long>>(obj, "scene_cuts", id);
    e.start_window = window_from(obj, "start_window", id);
    e.end_window = window_from(obj, "end_window", id);
    for (const auto& [key, value] : obj.items()) {
      static const std::vector<std::string> known{
          "id", "path", "category", "subcategory", "caption", "fps", "duration_seconds",
          "aesthetic_score", "scene_cuts", "start_window", "end_window"};
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        bad_field(id, key, "is not a manifest field");
      }
    }
    validate_entry(e);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Manifest, path.string() + ": cannot open manifest");
  std::stringstream ss;
  ss << in.rdbuf();
  return manifest_from_string(ss.str());
}

void save_manifest(const std::vector<ManifestEntry>& entries, const std::filesystem::path& path) {
  const std::string text = manifest_to_string(entries);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Manifest, path.string() + ": cannot write manifest");
  out << text;
}

}  // namespace vcbench
