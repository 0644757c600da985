#pragma once

#include <map>
#include <string>
#include <vector>

#include "scorpion/core/manifest.hpp"
#include "scorpion/registration/ransac.hpp"
#include "scorpion/registration/warp.hpp"

namespace scorpion::registration {

struct RegistrationParams {
  int max_keypoints = 500;
  double match_ratio = 0.75;
  RansacParams ransac{};
};

struct RegistrationResult {
  AffineTransform transform;  // moving -> reference coordinates
  int inlier_count = 0;
  double mean_error = 0.0;
  size_t keypoints_reference = 0;
  size_t keypoints_moving = 0;
  size_t matches = 0;

  nlohmann::json to_json() const;
};

/// Full detect -> describe -> match -> RANSAC chain between two scans of the
/// same slide. Deterministic given the rng seed.
RegistrationResult register_pair(const RasterImage& reference,
                                 const RasterImage& moving,
                                 const RegistrationParams& params, Rng& rng);

/// One region's aligned patches, keyed by scanner (reference included).
struct AlignedSample {
  std::string sample_id;
  std::array<double, 2> origin{0.0, 0.0};
  std::map<ScannerId, RasterImage> patches;
};

/// Crops patch_src_size² regions from the reference scan and from every
/// other scan warped into reference coordinates, then resizes each crop to
/// patch_out_size². One sample per region; regions must lie inside the
/// reference bounds and every scanner needs a transform.
std::vector<AlignedSample> extract_aligned_patches(
    const ScannerId& reference_id, const RasterImage& reference,
    const std::map<ScannerId, RasterImage>& others,
    const std::map<ScannerId, AffineTransform>& transforms,
    const std::vector<std::array<int, 2>>& regions, int patch_src_size,
    int patch_out_size);

}  // namespace scorpion::registration
