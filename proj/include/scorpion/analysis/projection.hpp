#pragma once

#include <array>
#include <vector>

#include "scorpion/analysis/stats.hpp"

namespace scorpion::analysis {

/// Mean-centered PCA onto the top-2 components with a deterministic sign
/// convention: each component's largest-magnitude loading is positive.
std::vector<std::array<double, 2>> project_2d(const std::vector<StatVector>& rows);

/// Mean silhouette coefficient (Euclidean) over the given group labels.
/// Needs >=2 groups with >=2 points each.
double separability_score(const std::vector<StatVector>& points,
                          const std::vector<ScannerId>& groups);

}  // namespace scorpion::analysis
