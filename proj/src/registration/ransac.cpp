#include "scorpion/registration/ransac.hpp"

#include <cmath>
#include <limits>

namespace scorpion::registration {
namespace {

double reprojection_error(const AffineTransform& t, Vec2 src, Vec2 dst) {
  Vec2 p = t.apply(src);
  double dx = p.x - dst.x, dy = p.y - dst.y;
  return std::sqrt(dx * dx + dy * dy);
}

struct Scored {
  int count = -1;
  double mean_error = std::numeric_limits<double>::infinity();
};

Scored score_model(const AffineTransform& t, const std::vector<Vec2>& src,
                   const std::vector<Vec2>& dst, double tol,
                   std::vector<bool>* mask_out) {
  Scored s;
  s.count = 0;
  double err_sum = 0.0;
  if (mask_out) mask_out->assign(src.size(), false);
  for (size_t i = 0; i < src.size(); ++i) {
    double e = reprojection_error(t, src[i], dst[i]);
    if (e < tol) {
      ++s.count;
      err_sum += e;
      if (mask_out) (*mask_out)[i] = true;
    }
  }
  s.mean_error = s.count > 0 ? err_sum / s.count : std::numeric_limits<double>::infinity();
  return s;
}

}  // namespace

RansacResult estimate_affine_ransac(const MatchSet& matches,
                                    const std::vector<Vec2>& src_points,
                                    const std::vector<Vec2>& dst_points,
                                    const RansacParams& params, Rng& rng) {
  require(matches.size() >= 3, ErrorKind::DegenerateData,
          "RANSAC needs at least 3 matches, got " + std::to_string(matches.size()));
  std::vector<Vec2> src(matches.size()), dst(matches.size());
  for (size_t i = 0; i < matches.size(); ++i) {
    src[i] = src_points.at(matches[i].src_index);
    dst[i] = dst_points.at(matches[i].dst_index);
  }

  size_t n = matches.size();
  AffineTransform best;
  Scored best_score;
  bool found = false;

  for (int iter = 0; iter < params.iterations; ++iter) {
    // Three distinct indices.
    size_t i0 = rng.below(static_cast<uint32_t>(n));
    size_t i1 = rng.below(static_cast<uint32_t>(n));
    size_t i2 = rng.below(static_cast<uint32_t>(n));
    if (i0 == i1 || i1 == i2 || i0 == i2) continue;

    AffineTransform t;
    try {
      t = affine_from_three({src[i0], src[i1], src[i2]}, {dst[i0], dst[i1], dst[i2]});
    } catch (const Error&) {
      continue;  // collinear sample
    }
    double d = std::abs(t.det());
    if (d < 0.5 || d > 2.0) continue;

    Scored s = score_model(t, src, dst, params.inlier_tolerance, nullptr);
    if (s.count > best_score.count ||
        (s.count == best_score.count && s.mean_error < best_score.mean_error)) {
      best = t;
      best_score = s;
      found = true;
    }
  }

  require(found && best_score.count >= 3, ErrorKind::DegenerateData,
          "RANSAC found no model with >=3 inliers");

  // Refit by least squares over the consensus set, twice: once on the
  // hypothesis inliers, once on the refit's own inliers. The reported mask
  // always reflects the returned transform.
  RansacResult result;
  std::vector<bool> mask;
  score_model(best, src, dst, params.inlier_tolerance, &mask);
  AffineTransform refit = best;
  for (int round = 0; round < 2; ++round) {
    std::vector<Vec2> in_src, in_dst;
    for (size_t i = 0; i < n; ++i) {
      if (mask[i]) {
        in_src.push_back(src[i]);
        in_dst.push_back(dst[i]);
      }
    }
    if (in_src.size() < 3) break;
    try {
      refit = fit_affine_least_squares(in_src, in_dst);
    } catch (const Error&) {
      break;  // keep the previous model if the refit degenerates
    }
    score_model(refit, src, dst, params.inlier_tolerance, &mask);
  }

  Scored final_score = score_model(refit, src, dst, params.inlier_tolerance, &result.inlier_mask);
  require(final_score.count >= 3, ErrorKind::DegenerateData,
          "refit lost the consensus set");
  result.transform = refit;
  result.inlier_count = final_score.count;
  result.mean_error = final_score.mean_error;
  return result;
}

}  // namespace scorpion::registration
