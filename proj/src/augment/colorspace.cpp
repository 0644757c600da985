#include "scorpion/augment/colorspace.hpp"

#include <algorithm>
#include <cmath>

namespace scorpion::augment {
namespace {

// sRGB D65 reference white
constexpr double kXn = 0.95047;
constexpr double kYn = 1.0;
constexpr double kZn = 1.08883;
constexpr double kDelta3 = 0.008856451679035631;  // (6/29)^3
constexpr double kKappa = 903.2962962962963;      // (29/3)^3

double srgb_linearize(double u) {
  return u <= 0.04045 ? u / 12.92 : std::pow((u + 0.055) / 1.055, 2.4);
}

double srgb_gamma(double u) {
  return u <= 0.0031308 ? 12.92 * u : 1.055 * std::pow(u, 1.0 / 2.4) - 0.055;
}

double lab_f(double t) {
  return t > kDelta3 ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0;
}

double lab_f_inv(double f) {
  double f3 = f * f * f;
  return f3 > kDelta3 ? f3 : (116.0 * f - 16.0) / kKappa;
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

std::array<double, 3> rgb_to_lab(double r, double g, double b) {
  double rl = srgb_linearize(r), gl = srgb_linearize(g), bl = srgb_linearize(b);
  double x = (0.4124564 * rl + 0.3575761 * gl + 0.1804375 * bl) / kXn;
  double y = (0.2126729 * rl + 0.7151522 * gl + 0.0721750 * bl) / kYn;
  double z = (0.0193339 * rl + 0.1191920 * gl + 0.9503041 * bl) / kZn;
  double fx = lab_f(x), fy = lab_f(y), fz = lab_f(z);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

std::array<double, 3> lab_to_rgb(double L, double a, double b) {
  double fy = (L + 16.0) / 116.0;
  double fx = fy + a / 500.0;
  double fz = fy - b / 200.0;
  double x = kXn * lab_f_inv(fx);
  double y = kYn * lab_f_inv(fy);
  double z = kZn * lab_f_inv(fz);
  double rl = 3.2404542 * x - 1.5371385 * y - 0.4985314 * z;
  double gl = -0.9692660 * x + 1.8760108 * y + 0.0415560 * z;
  double bl = 0.0556434 * x - 0.2040259 * y + 1.0572252 * z;
  return {clamp01(srgb_gamma(std::max(0.0, rl))),
          clamp01(srgb_gamma(std::max(0.0, gl))),
          clamp01(srgb_gamma(std::max(0.0, bl)))};
}

std::array<double, 3> rgb_to_hsv(double r, double g, double b) {
  double maxc = std::max({r, g, b});
  double minc = std::min({r, g, b});
  double v = maxc;
  double delta = maxc - minc;
  if (delta <= 0.0 || maxc <= 0.0) return {0.0, 0.0, v};
  double s = delta / maxc;
  double h;
  if (maxc == r)
    h = (g - b) / delta;
  else if (maxc == g)
    h = 2.0 + (b - r) / delta;
  else
    h = 4.0 + (r - g) / delta;
  h /= 6.0;
  if (h < 0.0) h += 1.0;
  return {h, s, v};
}

std::array<double, 3> hsv_to_rgb(double h, double s, double v) {
  if (s <= 0.0) return {v, v, v};
  h = h - std::floor(h);  // wrap to [0,1)
  double hh = h * 6.0;
  int sector = static_cast<int>(hh) % 6;
  double f = hh - std::floor(hh);
  double p = v * (1.0 - s);
  double q = v * (1.0 - s * f);
  double t = v * (1.0 - s * (1.0 - f));
  switch (sector) {
    case 0: return {v, t, p};
    case 1: return {q, v, p};
    case 2: return {p, v, t};
    case 3: return {p, q, v};
    case 4: return {t, p, v};
    default: return {v, p, q};
  }
}

}  // namespace scorpion::augment
