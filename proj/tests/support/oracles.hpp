#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "scorpion/core/image.hpp"
#include "scorpion/core/rng.hpp"

namespace scorpion::test {

/// Brute-force per-class Dice by direct pixel counting; independent of the
/// library implementation.
struct BruteDice {
  std::vector<std::optional<double>> per_class;
  double macro;
};

inline BruteDice brute_dice(const LabelMask& a, const LabelMask& b) {
  BruteDice out;
  out.per_class.resize(a.num_classes);
  double sum = 0.0;
  int defined = 0;
  for (int c = 0; c < a.num_classes; ++c) {
    int64_t na = 0, nb = 0, ni = 0;
    for (int y = 0; y < a.height; ++y) {
      for (int x = 0; x < a.width; ++x) {
        bool ia = a.at(x, y) == c;
        bool ib = b.at(x, y) == c;
        if (ia) ++na;
        if (ib) ++nb;
        if (ia && ib) ++ni;
      }
    }
    if (na + nb == 0) continue;
    out.per_class[c] = 2.0 * static_cast<double>(ni) / static_cast<double>(na + nb);
    sum += *out.per_class[c];
    ++defined;
  }
  out.macro = defined == 0 ? 0.0 : sum / defined;
  return out;
}

inline LabelMask random_mask(int w, int h, int k, Rng& rng) {
  LabelMask m(w, h, k);
  for (auto& v : m.labels) v = static_cast<uint8_t>(rng.below(k));
  return m;
}

/// Reference sRGB (D65) -> CIELAB conversion, written independently from the
/// library path: per-channel linearization, XYZ matrix, f(t) cube-root law.
inline void srgb_to_lab_reference(double r, double g, double b, double& L,
                                  double& A, double& B) {
  auto lin = [](double u) {
    return u <= 0.04045 ? u / 12.92 : std::pow((u + 0.055) / 1.055, 2.4);
  };
  double rl = lin(r), gl = lin(g), bl = lin(b);
  double x = 0.4124564 * rl + 0.3575761 * gl + 0.1804375 * bl;
  double y = 0.2126729 * rl + 0.7151522 * gl + 0.0721750 * bl;
  double z = 0.0193339 * rl + 0.1191920 * gl + 0.9503041 * bl;
  // D65 white point
  x /= 0.95047;
  z /= 1.08883;
  auto f = [](double t) {
    return t > 0.008856451679035631 ? std::cbrt(t) : (903.2962962962963 * t + 16.0) / 116.0;
  };
  double fx = f(x), fy = f(y), fz = f(z);
  L = 116.0 * fy - 16.0;
  A = 500.0 * (fx - fy);
  B = 200.0 * (fy - fz);
}

}  // namespace scorpion::test
