#pragma once

#include <array>

namespace scorpion::augment {

/// sRGB (D65) <-> CIELAB, double precision, inputs/outputs in [0,1] RGB.
std::array<double, 3> rgb_to_lab(double r, double g, double b);
std::array<double, 3> lab_to_rgb(double L, double a, double b);  // clamped to [0,1]

/// RGB <-> HSV with h in turns [0,1), s,v in [0,1].
std::array<double, 3> rgb_to_hsv(double r, double g, double b);
std::array<double, 3> hsv_to_rgb(double h, double s, double v);

}  // namespace scorpion::augment
