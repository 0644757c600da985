#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scorpion/augment/color_jitter.hpp"
#include "scorpion/augment/fda.hpp"
#include "scorpion/augment/stain.hpp"
#include "scorpion/core/image.hpp"
#include "scorpion/core/rng.hpp"

namespace scorpion::augment {

/// A content-preserving style transform: same dimensions, values in [0,1],
/// deterministic given (image, rng seed). Instances are immutable and safe
/// to share across threads; the per-call Rng carries all randomness.
struct StyleAugmentation {
  std::string name;
  std::function<RasterImage(const RasterImage&, Rng&)> apply;
};

enum class SaMethod { ColorJitter, RandStainNa, Fda };

SaMethod parse_sa_method(const std::string& name);
const char* to_string(SaMethod method);

struct SaSpec {
  SaMethod method = SaMethod::ColorJitter;
  ColorJitterParams jitter{};
  std::optional<StainStatsDistribution> stain_dist;  // required for RandStainNA
  FdaParams fda{};
};

/// Builds the augmentation closure. FDA draws its target uniformly from
/// `style_pool` per call (excluding the source image itself when present)
/// and requires a non-empty pool; RandStainNA requires a fitted distribution.
StyleAugmentation make_sa(const SaSpec& spec,
                          std::vector<RasterImage> style_pool = {});

StyleAugmentation identity_sa();

}  // namespace scorpion::augment
