#pragma once

#include <vector>

#include "scorpion/core/rng.hpp"
#include "scorpion/registration/affine.hpp"
#include "scorpion/registration/match.hpp"

namespace scorpion::registration {

struct RansacParams {
  int iterations = 2000;
  double inlier_tolerance = 3.0;  // px reprojection error
};

struct RansacResult {
  AffineTransform transform;
  std::vector<bool> inlier_mask;  // one flag per input match
  int inlier_count = 0;
  double mean_error = 0.0;  // mean reprojection error over inliers
};

/// 3-point minimal-sample RANSAC over the matched correspondences; the model
/// with the most inliers wins (ties by lower mean inlier error), then a
/// least-squares refit over the inliers. The returned mask is re-checked
/// against the final transform. Hypotheses with |det| outside [0.5, 2.0]
/// are rejected (scale sanity for same-slide registrations).
RansacResult estimate_affine_ransac(const MatchSet& matches,
                                    const std::vector<Vec2>& src_points,
                                    const std::vector<Vec2>& dst_points,
                                    const RansacParams& params, Rng& rng);

}  // namespace scorpion::registration
