#include "scorpion/analysis/stats.hpp"

#include <cmath>

#include "scorpion/core/fsutil.hpp"
#include "scorpion/core/image_io.hpp"

namespace scorpion::analysis {

StatVector compute_patch_stats(const RasterImage& img) {
  require(img.pixel_count() > 0, ErrorKind::InvalidArgument,
          "patch stats of an empty image");
  StatVector out{};
  double n = static_cast<double>(img.pixel_count());
  for (int c = 0; c < 3; ++c) {
    double sum = 0.0;
    for (size_t p = 0; p < img.pixel_count(); ++p) sum += img.data[p * 3 + c];
    double mean = sum / n;
    double var = 0.0;
    for (size_t p = 0; p < img.pixel_count(); ++p) {
      double d = img.data[p * 3 + c] - mean;
      var += d * d;
    }
    out[c * 2] = mean;
    out[c * 2 + 1] = std::sqrt(var / n);
  }
  return out;
}

std::vector<PatchStats> unpaired_analysis(
    const std::vector<ScannerId>& scanners,
    const std::vector<std::pair<std::string, std::vector<RasterImage>>>& samples) {
  std::vector<PatchStats> rows;
  for (const auto& [sample_id, patches] : samples) {
    require(patches.size() == scanners.size(), ErrorKind::DimensionMismatch,
            "sample '" + sample_id + "' does not cover every scanner");
    for (size_t s = 0; s < scanners.size(); ++s)
      rows.push_back({sample_id, scanners[s], compute_patch_stats(patches[s])});
  }
  return rows;
}

std::vector<PairedDeviation> paired_analysis(
    const std::vector<ScannerId>& scanners,
    const std::vector<std::pair<std::string, std::vector<RasterImage>>>& samples,
    const ScannerId& reference) {
  size_t ref_idx = scanners.size();
  for (size_t s = 0; s < scanners.size(); ++s)
    if (scanners[s] == reference) ref_idx = s;
  require(ref_idx < scanners.size(), ErrorKind::InvalidArgument,
          "reference scanner '" + reference + "' is not in the scanner list");

  std::vector<PairedDeviation> rows;
  for (const auto& [sample_id, patches] : samples) {
    require(patches.size() == scanners.size(), ErrorKind::DimensionMismatch,
            "sample '" + sample_id + "' does not cover every scanner");
    StatVector ref_stats = compute_patch_stats(patches[ref_idx]);
    for (size_t s = 0; s < scanners.size(); ++s) {
      PairedDeviation d;
      d.sample_id = sample_id;
      d.scanner = scanners[s];
      if (s == ref_idx) {
        d.delta = {};  // exactly zero for the reference itself
      } else {
        StatVector st = compute_patch_stats(patches[s]);
        for (int i = 0; i < 6; ++i) d.delta[i] = st[i] - ref_stats[i];
      }
      rows.push_back(std::move(d));
    }
  }
  return rows;
}

namespace {

std::vector<std::pair<std::string, std::vector<RasterImage>>> load_samples(
    const DatasetManifest& manifest, const ScannerId* required_reference) {
  std::vector<std::pair<std::string, std::vector<RasterImage>>> samples;
  for (const auto& s : manifest.samples) {
    std::vector<RasterImage> patches;
    for (const auto& scanner : manifest.scanners) {
      auto it = s.patches.find(scanner);
      if (it == s.patches.end()) {
        if (required_reference && scanner == *required_reference)
          fail(ErrorKind::SchemaViolation, "sample '" + s.sample_id +
                                               "' is missing the reference scanner '" +
                                               scanner + "'");
        fail(ErrorKind::SchemaViolation,
             "sample '" + s.sample_id + "' is missing scanner '" + scanner + "'");
      }
      patches.push_back(load_image(manifest.resolve(it->second)));
    }
    samples.emplace_back(s.sample_id, std::move(patches));
  }
  return samples;
}

}  // namespace

std::vector<PatchStats> unpaired_analysis(const DatasetManifest& manifest) {
  return unpaired_analysis(manifest.scanners, load_samples(manifest, nullptr));
}

std::vector<PairedDeviation> paired_analysis(const DatasetManifest& manifest,
                                             const ScannerId& reference) {
  return paired_analysis(manifest.scanners, load_samples(manifest, &reference), reference);
}

namespace {

std::string six_columns(const StatVector& v) {
  std::string s;
  for (int i = 0; i < 6; ++i) s += "," + format_double(v[i]);
  return s;
}

}  // namespace

std::string stats_to_csv(const std::vector<PatchStats>& rows) {
  std::string csv = "sample_id,scanner,r_mean,r_std,g_mean,g_std,b_mean,b_std\n";
  for (const auto& r : rows)
    csv += r.sample_id + "," + r.scanner + six_columns(r.stats) + "\n";
  return csv;
}

std::string deviations_to_csv(const std::vector<PairedDeviation>& rows) {
  std::string csv =
      "sample_id,scanner,d_r_mean,d_r_std,d_g_mean,d_g_std,d_b_mean,d_b_std\n";
  for (const auto& r : rows)
    csv += r.sample_id + "," + r.scanner + six_columns(r.delta) + "\n";
  return csv;
}

}  // namespace scorpion::analysis
