#include "scorpion/registration/affine.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace scorpion::registration {

AffineTransform AffineTransform::inverse() const {
  double d = det();
  require(std::abs(d) > 1e-12, ErrorKind::DegenerateData,
          "affine transform is not invertible");
  double ia = m[4] / d, ib = -m[1] / d, ic = -m[3] / d, id = m[0] / d;
  return {{ia, ib, -(ia * m[2] + ib * m[5]), ic, id, -(ic * m[2] + id * m[5])}};
}

AffineTransform AffineTransform::compose(const AffineTransform& o) const {
  return {{m[0] * o.m[0] + m[1] * o.m[3], m[0] * o.m[1] + m[1] * o.m[4],
           m[0] * o.m[2] + m[1] * o.m[5] + m[2], m[3] * o.m[0] + m[4] * o.m[3],
           m[3] * o.m[1] + m[4] * o.m[4], m[3] * o.m[2] + m[4] * o.m[5] + m[5]}};
}

nlohmann::json AffineTransform::to_json() const {
  return nlohmann::json{{"matrix", {{m[0], m[1], m[2]}, {m[3], m[4], m[5]}}}};
}

AffineTransform AffineTransform::from_json(const nlohmann::json& j) {
  require(j.contains("matrix"), ErrorKind::SchemaViolation,
          "transform JSON: missing field 'matrix'");
  auto rows = j.at("matrix");
  require(rows.is_array() && rows.size() == 2 && rows[0].size() == 3 &&
              rows[1].size() == 3,
          ErrorKind::SchemaViolation, "transform JSON: matrix must be 2x3");
  AffineTransform t;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 3; ++c) t.m[r * 3 + c] = rows[r][c].get<double>();
  return t;
}

AffineTransform affine_from_three(const std::array<Vec2, 3>& src,
                                  const std::array<Vec2, 3>& dst) {
  // Area of the source triangle guards against collinearity.
  double area = (src[1].x - src[0].x) * (src[2].y - src[0].y) -
                (src[2].x - src[0].x) * (src[1].y - src[0].y);
  require(std::abs(area) > 1e-9, ErrorKind::DegenerateData,
          "collinear points cannot determine an affine transform");
  Eigen::Matrix3d A;
  for (int i = 0; i < 3; ++i) A.row(i) << src[i].x, src[i].y, 1.0;
  Eigen::Vector3d bx(dst[0].x, dst[1].x, dst[2].x);
  Eigen::Vector3d by(dst[0].y, dst[1].y, dst[2].y);
  Eigen::PartialPivLU<Eigen::Matrix3d> lu(A);
  Eigen::Vector3d rx = lu.solve(bx);
  Eigen::Vector3d ry = lu.solve(by);
  return {{rx[0], rx[1], rx[2], ry[0], ry[1], ry[2]}};
}

AffineTransform fit_affine_least_squares(const std::vector<Vec2>& src,
                                         const std::vector<Vec2>& dst) {
  require(src.size() == dst.size() && src.size() >= 3, ErrorKind::InvalidArgument,
          "least-squares affine needs >=3 correspondences");
  Eigen::MatrixXd A(src.size(), 3);
  Eigen::VectorXd bx(src.size()), by(src.size());
  for (size_t i = 0; i < src.size(); ++i) {
    A.row(static_cast<Eigen::Index>(i)) << src[i].x, src[i].y, 1.0;
    bx[static_cast<Eigen::Index>(i)] = dst[i].x;
    by[static_cast<Eigen::Index>(i)] = dst[i].y;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  require(qr.rank() == 3, ErrorKind::DegenerateData,
          "correspondences are rank-deficient (collinear)");
  Eigen::Vector3d rx = qr.solve(bx);
  Eigen::Vector3d ry = qr.solve(by);
  return {{rx[0], rx[1], rx[2], ry[0], ry[1], ry[2]}};
}

}  // namespace scorpion::registration
