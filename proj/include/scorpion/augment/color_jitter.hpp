#pragma once

#include <utility>

#include "scorpion/core/image.hpp"
#include "scorpion/core/rng.hpp"

namespace scorpion::augment {

/// Multiplicative factor ranges; factors are sampled uniformly per call and
/// the four adjustments run in a per-call random order. Hue offset is in
/// turns of the hue circle.
struct ColorJitterParams {
  std::pair<double, double> brightness{0.8, 1.2};
  std::pair<double, double> contrast{0.8, 1.2};
  std::pair<double, double> saturation{0.8, 1.2};
  double hue = 0.05;  // offset sampled from (-hue, hue), hue <= 0.5

  void validate() const;
};

RasterImage color_jitter(const RasterImage& img, const ColorJitterParams& params,
                         Rng& rng);

}  // namespace scorpion::augment
