#pragma once

#include <array>
#include <vector>

#include <json.hpp>

#include "scorpion/core/error.hpp"

namespace scorpion::registration {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// 2x3 matrix [a b tx; c d ty] mapping source (x,y) to target coordinates.
struct AffineTransform {
  // row-major: m[0]=a m[1]=b m[2]=tx m[3]=c m[4]=d m[5]=ty
  std::array<double, 6> m{1, 0, 0, 0, 1, 0};

  static AffineTransform identity() { return {}; }
  static AffineTransform translation(double tx, double ty) {
    return {{1, 0, tx, 0, 1, ty}};
  }

  Vec2 apply(Vec2 p) const {
    return {m[0] * p.x + m[1] * p.y + m[2], m[3] * p.x + m[4] * p.y + m[5]};
  }

  double det() const { return m[0] * m[4] - m[1] * m[3]; }

  AffineTransform inverse() const;

  /// this ∘ other: applies `other` first.
  AffineTransform compose(const AffineTransform& other) const;

  nlohmann::json to_json() const;
  static AffineTransform from_json(const nlohmann::json& j);
};

/// Exact affine through 3 point correspondences. Throws on collinear input.
AffineTransform affine_from_three(const std::array<Vec2, 3>& src,
                                  const std::array<Vec2, 3>& dst);

/// Least-squares affine over >=3 correspondences (Eigen QR).
AffineTransform fit_affine_least_squares(const std::vector<Vec2>& src,
                                         const std::vector<Vec2>& dst);

}  // namespace scorpion::registration
