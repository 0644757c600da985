#include "scorpion/core/manifest.hpp"

#include <set>

#include <json.hpp>

#include "scorpion/core/fsutil.hpp"
#include "scorpion/core/image_io.hpp"

namespace scorpion {
namespace {

using nlohmann::json;

json parse_json(const std::filesystem::path& path) {
  std::string text = read_file_bytes(path);
  json j = json::parse(text, nullptr, false);
  require(!j.is_discarded(), ErrorKind::SchemaViolation,
          "invalid JSON in " + path.string());
  return j;
}

template <typename T>
T get_field(const json& obj, const std::string& key, const char* context) {
  require(obj.contains(key), ErrorKind::SchemaViolation,
          std::string(context) + ": missing field '" + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorKind::SchemaViolation,
         std::string(context) + ": field '" + key + "' has wrong type");
  }
}

}  // namespace

DatasetManifest load_manifest(const std::filesystem::path& path) {
  json j = parse_json(path);
  DatasetManifest m;
  m.base_dir = path.has_parent_path() ? path.parent_path() : ".";
  m.scanners = get_field<std::vector<std::string>>(j, "scanners", "manifest");
  m.patch_size = get_field<int>(j, "patch_size", "manifest");
  m.micron_extent = get_field<double>(j, "micron_extent", "manifest");

  std::set<ScannerId> scanner_set;
  for (const auto& s : m.scanners) {
    require(!s.empty(), ErrorKind::SchemaViolation, "manifest: empty scanner id");
    require(scanner_set.insert(s).second, ErrorKind::SchemaViolation,
            "manifest: duplicate scanner id '" + s + "'");
  }

  require(j.contains("samples") && j.at("samples").is_array(),
          ErrorKind::SchemaViolation, "manifest: missing field 'samples'");

  std::set<std::string> ids;
  for (const auto& js : j.at("samples")) {
    PairedSample s;
    s.sample_id = get_field<std::string>(js, "sample_id", "sample");
    require(ids.insert(s.sample_id).second, ErrorKind::SchemaViolation,
            "manifest: duplicate sample_id '" + s.sample_id + "'");
    auto origin = get_field<std::vector<double>>(js, "region_origin", "sample");
    require(origin.size() == 2, ErrorKind::SchemaViolation,
            "sample '" + s.sample_id + "': region_origin must hold [x, y]");
    s.region_origin = {origin[0], origin[1]};
    auto patches = get_field<std::map<std::string, std::string>>(js, "patches", "sample");
    require(patches.size() >= 2, ErrorKind::SchemaViolation,
            "sample '" + s.sample_id + "': needs patches from at least 2 scanners");
    for (const auto& [scanner, rel] : patches) {
      require(scanner_set.count(scanner) != 0, ErrorKind::SchemaViolation,
              "sample '" + s.sample_id + "': unknown scanner id '" + scanner + "'");
      s.patches[scanner] = rel;
    }
    if (js.contains("mask")) s.mask = get_field<std::string>(js, "mask", "sample");
    m.samples.push_back(std::move(s));
  }

  // Patches of one sample must share dimensions; header reads keep this cheap.
  for (const auto& s : m.samples) {
    std::pair<int, int> dims{-1, -1};
    for (const auto& [scanner, rel] : s.patches) {
      auto wh = read_image_size(m.resolve(rel));
      if (dims.first < 0) {
        dims = wh;
      } else {
        require(wh == dims, ErrorKind::DimensionMismatch,
                "sample '" + s.sample_id + "': patch dimensions differ at scanner '" +
                    scanner + "'");
      }
    }
  }
  return m;
}

void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
  json j;
  j["scanners"] = manifest.scanners;
  j["patch_size"] = manifest.patch_size;
  j["micron_extent"] = manifest.micron_extent;
  j["samples"] = json::array();
  for (const auto& s : manifest.samples) {
    json js;
    js["sample_id"] = s.sample_id;
    js["region_origin"] = {s.region_origin[0], s.region_origin[1]};
    js["patches"] = s.patches;
    if (s.mask) js["mask"] = *s.mask;
    j["samples"].push_back(std::move(js));
  }
  atomic_write_bytes(path, j.dump(2) + "\n");
}

LabeledSet load_labeled_set(const std::filesystem::path& path) {
  json j = parse_json(path);
  LabeledSet set;
  set.base_dir = path.has_parent_path() ? path.parent_path() : ".";
  require(j.contains("samples") && j.at("samples").is_array(),
          ErrorKind::SchemaViolation, "labeled set: missing field 'samples'");
  std::set<std::string> ids;
  for (const auto& js : j.at("samples")) {
    LabeledRecord r;
    r.sample_id = get_field<std::string>(js, "sample_id", "labeled sample");
    r.image = get_field<std::string>(js, "image", "labeled sample");
    r.mask = get_field<std::string>(js, "mask", "labeled sample");
    require(ids.insert(r.sample_id).second, ErrorKind::SchemaViolation,
            "labeled set: duplicate sample_id '" + r.sample_id + "'");
    set.records.push_back(std::move(r));
  }
  return set;
}

void save_labeled_set(const LabeledSet& set, const std::filesystem::path& path) {
  json j;
  j["samples"] = json::array();
  for (const auto& r : set.records) {
    j["samples"].push_back({{"sample_id", r.sample_id}, {"image", r.image}, {"mask", r.mask}});
  }
  atomic_write_bytes(path, j.dump(2) + "\n");
}

}  // namespace scorpion
