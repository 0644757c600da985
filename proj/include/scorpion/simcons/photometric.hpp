#pragma once

#include "scorpion/core/image.hpp"
#include "scorpion/core/rng.hpp"

namespace scorpion::simcons {

/// Separable Gaussian blur, kernel radius ceil(3*sigma), clamped borders.
/// sigma <= 0 returns the input unchanged.
RasterImage gaussian_blur(const RasterImage& img, double sigma);

RasterImage add_gaussian_noise(const RasterImage& img, double sigma, Rng& rng);

RasterImage hflip(const RasterImage& img);
RasterImage vflip(const RasterImage& img);
LabelMask hflip(const LabelMask& mask);
LabelMask vflip(const LabelMask& mask);

}  // namespace scorpion::simcons
