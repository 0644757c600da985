#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scorpion/core/error.hpp"

namespace scorpion {

using ScannerId = std::string;

/// One tissue region's patches keyed by scanner. Paths are relative to the
/// manifest location. `mask` optionally names a shared ground-truth label
/// mask (identical across scanners by construction).
struct PairedSample {
  std::string sample_id;
  std::array<double, 2> region_origin{0.0, 0.0};
  std::map<ScannerId, std::string> patches;
  std::optional<std::string> mask;

  bool operator==(const PairedSample&) const = default;
};

struct DatasetManifest {
  std::vector<ScannerId> scanners;
  int patch_size = 0;
  double micron_extent = 0.0;
  std::vector<PairedSample> samples;

  /// Directory the manifest was loaded from; resolves relative patch paths.
  std::filesystem::path base_dir;

  std::filesystem::path resolve(const std::string& relative) const {
    return base_dir / relative;
  }

  bool operator==(const DatasetManifest& o) const {
    return scanners == o.scanners && patch_size == o.patch_size &&
           micron_extent == o.micron_extent && samples == o.samples;
  }
};

/// Parses and validates a manifest: unique scanner ids, unique sample ids,
/// patch keys within the scanner list, >=2 patches per sample, and identical
/// image dimensions within each sample (checked from file headers).
DatasetManifest load_manifest(const std::filesystem::path& path);

void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

/// A labeled single-scanner training record, stored in a separate
/// lightweight JSON list ({"samples":[{"sample_id","image","mask"}]}).
struct LabeledRecord {
  std::string sample_id;
  std::string image;
  std::string mask;
};

struct LabeledSet {
  std::vector<LabeledRecord> records;
  std::filesystem::path base_dir;
};

LabeledSet load_labeled_set(const std::filesystem::path& path);
void save_labeled_set(const LabeledSet& set, const std::filesystem::path& path);

}  // namespace scorpion
