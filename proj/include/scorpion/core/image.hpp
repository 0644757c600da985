#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "scorpion/core/error.hpp"

namespace scorpion {

/// H x W x 3 color raster, row-major interleaved RGB, values in [0,1].
struct RasterImage {
  int width = 0;
  int height = 0;
  std::vector<float> data;  // size == width * height * 3

  RasterImage() = default;
  RasterImage(int w, int h, float fill = 0.0f)
      : width(w), height(h), data(static_cast<size_t>(w) * h * 3, fill) {}

  size_t pixel_count() const { return static_cast<size_t>(width) * height; }

  float& at(int x, int y, int c) {
    return data[(static_cast<size_t>(y) * width + x) * 3 + c];
  }
  float at(int x, int y, int c) const {
    return data[(static_cast<size_t>(y) * width + x) * 3 + c];
  }

  bool same_size(const RasterImage& other) const {
    return width == other.width && height == other.height;
  }

  void clamp01() {
    for (float& v : data) v = std::min(1.0f, std::max(0.0f, v));
  }
};

/// Rec.601 luma, the grayscale used for keypoints and descriptors.
inline float luma(const RasterImage& img, int x, int y) {
  return 0.299f * img.at(x, y, 0) + 0.587f * img.at(x, y, 1) +
         0.114f * img.at(x, y, 2);
}

std::vector<float> luma_plane(const RasterImage& img);

/// Per-pixel class labels in {0..num_classes-1}.
struct LabelMask {
  int width = 0;
  int height = 0;
  int num_classes = 0;
  std::vector<uint8_t> labels;  // size == width * height

  LabelMask() = default;
  LabelMask(int w, int h, int k, uint8_t fill = 0)
      : width(w), height(h), num_classes(k),
        labels(static_cast<size_t>(w) * h, fill) {}

  uint8_t& at(int x, int y) { return labels[static_cast<size_t>(y) * width + x]; }
  uint8_t at(int x, int y) const {
    return labels[static_cast<size_t>(y) * width + x];
  }

  void validate() const;
};

/// Per-pixel class probabilities, pixel-major: data[(y*W+x)*K + k].
struct ProbMap {
  int width = 0;
  int height = 0;
  int num_classes = 0;
  std::vector<float> data;  // size == width * height * num_classes

  ProbMap() = default;
  ProbMap(int w, int h, int k)
      : width(w), height(h), num_classes(k),
        data(static_cast<size_t>(w) * h * k, 0.0f) {}

  float& at(int x, int y, int k) {
    return data[(static_cast<size_t>(y) * width + x) * num_classes + k];
  }
  float at(int x, int y, int k) const {
    return data[(static_cast<size_t>(y) * width + x) * num_classes + k];
  }

  /// Checks every pixel's probabilities are >= 0 and sum to 1 within tol.
  void validate(double tol = 1e-5) const;
};

/// One-hot encoding of a mask, used as a soft-dice target.
ProbMap one_hot(const LabelMask& mask);

}  // namespace scorpion
