#pragma once

#include <vector>

#include "scorpion/core/image.hpp"
#include "scorpion/registration/affine.hpp"

namespace scorpion::registration {

struct Keypoint {
  Vec2 position;
  double response = 0.0;     // Harris corner score
  double orientation = 0.0;  // intensity-centroid angle, radians
};

/// Segment-test corner detection (contiguous arc of 9 on the radius-3 circle
/// of 16, threshold 0.08 of the [0,1] range) on luma, Harris-response
/// ranking with 3x3 non-max suppression, intensity-centroid orientation.
/// Returns at most max_count keypoints sorted by descending response.
std::vector<Keypoint> detect_keypoints(const RasterImage& img, int max_count);

/// Detection constants, exposed for tests.
inline constexpr double kFastThreshold = 0.08;
inline constexpr int kFastArc = 9;

}  // namespace scorpion::registration
