#include "scorpion/simcons/photometric.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace scorpion::simcons {

RasterImage gaussian_blur(const RasterImage& img, double sigma) {
  if (sigma <= 0.0) return img;
  int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    sum += kernel[i + radius];
  }
  for (double& k : kernel) k /= sum;

  int w = img.width, h = img.height;
  RasterImage tmp(w, h), out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < 3; ++c) {
        double acc = 0.0;
        for (int i = -radius; i <= radius; ++i)
          acc += kernel[i + radius] * img.at(std::clamp(x + i, 0, w - 1), y, c);
        tmp.at(x, y, c) = static_cast<float>(acc);
      }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < 3; ++c) {
        double acc = 0.0;
        for (int i = -radius; i <= radius; ++i)
          acc += kernel[i + radius] * tmp.at(x, std::clamp(y + i, 0, h - 1), c);
        out.at(x, y, c) = static_cast<float>(std::min(1.0, std::max(0.0, acc)));
      }
  return out;
}

RasterImage add_gaussian_noise(const RasterImage& img, double sigma, Rng& rng) {
  if (sigma <= 0.0) return img;
  RasterImage out = img;
  for (float& v : out.data)
    v = static_cast<float>(std::min(1.0, std::max(0.0, v + rng.normal(0.0, sigma))));
  return out;
}

RasterImage hflip(const RasterImage& img) {
  RasterImage out(img.width, img.height);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = img.at(img.width - 1 - x, y, c);
  return out;
}

RasterImage vflip(const RasterImage& img) {
  RasterImage out(img.width, img.height);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = img.at(x, img.height - 1 - y, c);
  return out;
}

LabelMask hflip(const LabelMask& mask) {
  LabelMask out(mask.width, mask.height, mask.num_classes);
  for (int y = 0; y < mask.height; ++y)
    for (int x = 0; x < mask.width; ++x) out.at(x, y) = mask.at(mask.width - 1 - x, y);
  return out;
}

LabelMask vflip(const LabelMask& mask) {
  LabelMask out(mask.width, mask.height, mask.num_classes);
  for (int y = 0; y < mask.height; ++y)
    for (int x = 0; x < mask.width; ++x) out.at(x, y) = mask.at(x, mask.height - 1 - y);
  return out;
}

}  // namespace scorpion::simcons
