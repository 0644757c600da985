#include "scorpion/analysis/projection.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <map>

namespace scorpion::analysis {

std::vector<std::array<double, 2>> project_2d(const std::vector<StatVector>& rows) {
  require(rows.size() >= 2, ErrorKind::InvalidArgument,
          "2-D projection needs at least 2 rows");
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd x(n, 6);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int j = 0; j < 6; ++j) x(i, j) = rows[static_cast<size_t>(i)][j];
  Eigen::RowVectorXd mean = x.colwise().mean();
  x.rowwise() -= mean;

  Eigen::MatrixXd cov = (x.transpose() * x) / static_cast<double>(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  // Eigenvalues ascend; take the last two columns as the top components.
  Eigen::VectorXd c1 = eig.eigenvectors().col(5);
  Eigen::VectorXd c2 = eig.eigenvectors().col(4);
  auto fix_sign = [](Eigen::VectorXd& v) {
    Eigen::Index lead = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::abs(v[i]) > best) {
        best = std::abs(v[i]);
        lead = i;
      }
    }
    if (v[lead] < 0.0) v = -v;
  };
  fix_sign(c1);
  fix_sign(c2);

  std::vector<std::array<double, 2>> out(rows.size());
  for (Eigen::Index i = 0; i < n; ++i)
    out[static_cast<size_t>(i)] = {x.row(i).dot(c1), x.row(i).dot(c2)};
  return out;
}

double separability_score(const std::vector<StatVector>& points,
                          const std::vector<ScannerId>& groups) {
  require(points.size() == groups.size() && !points.empty(),
          ErrorKind::InvalidArgument, "separability: mismatched inputs");

  std::map<ScannerId, std::vector<size_t>> by_group;
  for (size_t i = 0; i < groups.size(); ++i) by_group[groups[i]].push_back(i);
  require(by_group.size() >= 2, ErrorKind::DegenerateData,
          "separability needs at least 2 scanners");
  for (const auto& [name, members] : by_group)
    require(members.size() >= 2, ErrorKind::DegenerateData,
            "scanner '" + name + "' has fewer than 2 points");

  auto dist = [&](size_t i, size_t j) {
    double acc = 0.0;
    for (int k = 0; k < 6; ++k) {
      double d = points[i][k] - points[j][k];
      acc += d * d;
    }
    return std::sqrt(acc);
  };

  double total = 0.0;
  for (size_t i = 0; i < points.size(); ++i) {
    const auto& own = by_group[groups[i]];
    double a = 0.0;
    for (size_t j : own)
      if (j != i) a += dist(i, j);
    a /= static_cast<double>(own.size() - 1);

    double b = std::numeric_limits<double>::infinity();
    for (const auto& [name, members] : by_group) {
      if (name == groups[i]) continue;
      double m = 0.0;
      for (size_t j : members) m += dist(i, j);
      b = std::min(b, m / static_cast<double>(members.size()));
    }
    double denom = std::max(a, b);
    total += denom > 0.0 ? (b - a) / denom : 0.0;
  }
  return total / static_cast<double>(points.size());
}

}  // namespace scorpion::analysis
