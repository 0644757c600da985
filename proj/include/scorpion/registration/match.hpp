#pragma once

#include <vector>

#include "scorpion/registration/descriptor.hpp"

namespace scorpion::registration {

struct Match {
  size_t src_index;
  size_t dst_index;
  int distance;
};

using MatchSet = std::vector<Match>;

/// Nearest-neighbor matching with Lowe's ratio test (keep when
/// d1 < ratio * d2, strict, so exact ties are rejected) followed by a
/// mutual-best check that leaves the set one-to-one.
MatchSet match_descriptors(const std::vector<BinaryDescriptor>& a,
                           const std::vector<BinaryDescriptor>& b, double ratio);

}  // namespace scorpion::registration
