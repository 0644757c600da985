#include "scorpion/augment/stain.hpp"

#include <cmath>

#include "scorpion/augment/colorspace.hpp"

namespace scorpion::augment {
namespace {

constexpr double kStdFloor = 1e-3;

std::vector<std::array<double, 3>> to_lab_plane(const RasterImage& img) {
  std::vector<std::array<double, 3>> lab(img.pixel_count());
  for (size_t p = 0; p < img.pixel_count(); ++p) {
    const float* px = img.data.data() + p * 3;
    lab[p] = rgb_to_lab(px[0], px[1], px[2]);
  }
  return lab;
}

StainStats stats_of_lab(const std::vector<std::array<double, 3>>& lab) {
  StainStats s;
  double n = static_cast<double>(lab.size());
  for (const auto& px : lab)
    for (int c = 0; c < 3; ++c) s.mean[c] += px[c];
  for (int c = 0; c < 3; ++c) s.mean[c] /= n;
  for (const auto& px : lab)
    for (int c = 0; c < 3; ++c) {
      double d = px[c] - s.mean[c];
      s.std[c] += d * d;
    }
  for (int c = 0; c < 3; ++c) s.std[c] = std::sqrt(s.std[c] / n);
  return s;
}

}  // namespace

StainStats compute_stain_stats(const RasterImage& img) {
  require(img.pixel_count() > 0, ErrorKind::InvalidArgument,
          "stain stats of an empty image");
  return stats_of_lab(to_lab_plane(img));
}

StainStatsDistribution fit_stain_distribution(const std::vector<RasterImage>& corpus) {
  require(corpus.size() >= 2, ErrorKind::InvalidArgument,
          "stain distribution needs at least 2 images, got " +
              std::to_string(corpus.size()));
  std::vector<StainStats> per_image;
  per_image.reserve(corpus.size());
  for (const auto& img : corpus) per_image.push_back(compute_stain_stats(img));

  StainStatsDistribution dist;
  double n = static_cast<double>(per_image.size());
  for (const auto& s : per_image)
    for (int c = 0; c < 3; ++c) {
      dist.mean.mean[c] += s.mean[c];
      dist.mean.std[c] += s.std[c];
    }
  for (int c = 0; c < 3; ++c) {
    dist.mean.mean[c] /= n;
    dist.mean.std[c] /= n;
  }
  for (const auto& s : per_image)
    for (int c = 0; c < 3; ++c) {
      double dm = s.mean[c] - dist.mean.mean[c];
      double ds = s.std[c] - dist.mean.std[c];
      dist.std.mean[c] += dm * dm;
      dist.std.std[c] += ds * ds;
    }
  for (int c = 0; c < 3; ++c) {
    dist.std.mean[c] = std::sqrt(dist.std.mean[c] / n);
    dist.std.std[c] = std::sqrt(dist.std.std[c] / n);
  }
  return dist;
}

RasterImage normalize_stain_to(const RasterImage& img, const StainStats& target) {
  auto lab = to_lab_plane(img);
  StainStats src = stats_of_lab(lab);
  RasterImage out(img.width, img.height);
  for (size_t p = 0; p < lab.size(); ++p) {
    std::array<double, 3> mapped;
    for (int c = 0; c < 3; ++c)
      mapped[c] = (lab[p][c] - src.mean[c]) / std::max(src.std[c], kStdFloor) *
                      target.std[c] +
                  target.mean[c];
    auto rgb = lab_to_rgb(mapped[0], mapped[1], mapped[2]);
    for (int c = 0; c < 3; ++c) out.data[p * 3 + c] = static_cast<float>(rgb[c]);
  }
  return out;
}

RasterImage rand_stain_na(const RasterImage& img, const StainStatsDistribution& dist,
                          Rng& rng) {
  // Fixed draw order: (mean, std) per channel L, A, B.
  StainStats target;
  for (int c = 0; c < 3; ++c) {
    target.mean[c] = rng.normal(dist.mean.mean[c], dist.std.mean[c]);
    target.std[c] = std::max(kStdFloor, rng.normal(dist.mean.std[c], dist.std.std[c]));
  }
  return normalize_stain_to(img, target);
}

}  // namespace scorpion::augment
