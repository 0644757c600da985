#pragma once

#include <array>
#include <vector>

#include "scorpion/core/image.hpp"
#include "scorpion/core/rng.hpp"

namespace scorpion::augment {

/// Per-channel CIELAB mean and population std of one image.
struct StainStats {
  std::array<double, 3> mean{};  // L, A, B
  std::array<double, 3> std{};

  bool operator==(const StainStats&) const = default;
};

/// Gaussians over each of the six per-image statistics, fitted on a corpus.
struct StainStatsDistribution {
  StainStats mean;  // mean of per-image means / stds
  StainStats std;   // spread of per-image means / stds
};

StainStats compute_stain_stats(const RasterImage& img);

/// Fits the six statistic Gaussians over >=2 images (population std).
StainStatsDistribution fit_stain_distribution(const std::vector<RasterImage>& corpus);

/// Normalizes the image's LAB statistics to a target sampled from `dist`:
/// v <- (v - mu_src) / max(sigma_src, 1e-3) * sigma_tgt + mu_tgt per channel.
/// Sampled target stds are clamped to >= 1e-3.
RasterImage rand_stain_na(const RasterImage& img, const StainStatsDistribution& dist,
                          Rng& rng);

/// Deterministic variant used internally: normalize to explicit target stats.
RasterImage normalize_stain_to(const RasterImage& img, const StainStats& target);

}  // namespace scorpion::augment
