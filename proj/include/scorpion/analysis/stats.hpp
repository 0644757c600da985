#pragma once

#include <array>
#include <string>
#include <vector>

#include "scorpion/core/image.hpp"
#include "scorpion/core/manifest.hpp"

namespace scorpion::analysis {

/// Per-RGB-channel (mean, std) of one patch: [r_mean, r_std, g_mean, g_std,
/// b_mean, b_std], population std.
using StatVector = std::array<double, 6>;

struct PatchStats {
  std::string sample_id;
  ScannerId scanner;
  StatVector stats{};
};

struct PairedDeviation {
  std::string sample_id;
  ScannerId scanner;
  StatVector delta{};  // stats(scanner patch) - stats(reference patch)
};

StatVector compute_patch_stats(const RasterImage& img);

/// One row per (sample, scanner); pairing ignored.
std::vector<PatchStats> unpaired_analysis(const DatasetManifest& manifest);

/// Deviations of every patch's stats from the reference scanner's patch in
/// the same sample; reference rows are exactly zero.
std::vector<PairedDeviation> paired_analysis(const DatasetManifest& manifest,
                                             const ScannerId& reference);

/// In-memory variants used by the synthetic benchmark checks.
std::vector<PatchStats> unpaired_analysis(
    const std::vector<ScannerId>& scanners,
    const std::vector<std::pair<std::string, std::vector<RasterImage>>>& samples);
std::vector<PairedDeviation> paired_analysis(
    const std::vector<ScannerId>& scanners,
    const std::vector<std::pair<std::string, std::vector<RasterImage>>>& samples,
    const ScannerId& reference);

std::string stats_to_csv(const std::vector<PatchStats>& rows);
std::string deviations_to_csv(const std::vector<PairedDeviation>& rows);

}  // namespace scorpion::analysis
