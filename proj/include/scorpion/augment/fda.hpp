#pragma once

#include "scorpion/core/image.hpp"

namespace scorpion::augment {

/// Half-width of the swapped low-frequency window, as a fraction of the
/// smaller image dimension.
struct FdaParams {
  double beta = 0.1;

  void validate() const {
    require(beta >= 0.0 && beta <= 0.5, ErrorKind::InvalidArgument,
            "FDA beta must lie in [0, 0.5]");
  }
};

/// Fourier domain adaptation: per channel, replace the source amplitude
/// spectrum with the target's inside the DC-centered square of half-width
/// floor(beta * min(H, W)), keep the source phase everywhere, invert, clamp.
/// beta = 0 swaps nothing (round trip only).
RasterImage fda_transfer(const RasterImage& source, const RasterImage& target,
                         const FdaParams& params);

}  // namespace scorpion::augment
