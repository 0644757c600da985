#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "scorpion/core/image.hpp"
#include "scorpion/registration/keypoint.hpp"

namespace scorpion::registration {

/// 256 oriented intensity comparisons packed into four 64-bit words.
using BinaryDescriptor = std::array<uint64_t, 4>;

int hamming_distance(const BinaryDescriptor& a, const BinaryDescriptor& b);

/// Descriptors for the keypoints whose 16 px patch fits inside the image;
/// keypoints too close to the border are dropped and reported through
/// `kept_indices` (positions into the input keypoint list, order preserved).
struct DescriptorSet {
  std::vector<BinaryDescriptor> descriptors;
  std::vector<size_t> kept_indices;
};

DescriptorSet compute_descriptors(const RasterImage& img,
                                  const std::vector<Keypoint>& keypoints);

inline constexpr int kPatchRadius = 16;

}  // namespace scorpion::registration
