#pragma once

#include "scorpion/core/image.hpp"
#include "scorpion/registration/affine.hpp"

namespace scorpion::registration {

/// Inverse-mapped bilinear warp: out(x,y) = img(t⁻¹(x,y)). Samples outside
/// the source are filled white (the H&E slide background). Integer
/// translations reproduce the lattice exactly.
RasterImage warp_affine(const RasterImage& img, const AffineTransform& t,
                        int out_width, int out_height);

/// Center-aligned bilinear resize; equal sizes copy exactly.
RasterImage resize_bilinear(const RasterImage& img, int out_width, int out_height);

/// Axis-aligned crop; the window must lie inside the image.
RasterImage crop(const RasterImage& img, int x, int y, int w, int h);

}  // namespace scorpion::registration
