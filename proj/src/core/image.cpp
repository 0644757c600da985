#include "scorpion/core/image.hpp"

#include <cmath>
#include <string>

namespace scorpion {

std::vector<float> luma_plane(const RasterImage& img) {
  std::vector<float> out(img.pixel_count());
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      out[static_cast<size_t>(y) * img.width + x] = luma(img, x, y);
  return out;
}

void LabelMask::validate() const {
  require(labels.size() == static_cast<size_t>(width) * height,
          ErrorKind::DimensionMismatch, "label buffer does not match mask size");
  for (uint8_t v : labels)
    require(v < num_classes, ErrorKind::SchemaViolation,
            "label " + std::to_string(int(v)) + " out of range for K=" +
                std::to_string(num_classes));
}

void ProbMap::validate(double tol) const {
  require(data.size() == static_cast<size_t>(width) * height * num_classes,
          ErrorKind::DimensionMismatch, "prob buffer does not match map size");
  for (size_t p = 0; p < static_cast<size_t>(width) * height; ++p) {
    double sum = 0.0;
    for (int k = 0; k < num_classes; ++k) {
      float v = data[p * num_classes + k];
      require(std::isfinite(v) && v >= 0.0f, ErrorKind::SchemaViolation,
              "probability negative or non-finite");
      sum += v;
    }
    require(std::abs(sum - 1.0) <= tol, ErrorKind::SchemaViolation,
            "pixel probabilities sum to " + std::to_string(sum));
  }
}

ProbMap one_hot(const LabelMask& mask) {
  ProbMap p(mask.width, mask.height, mask.num_classes);
  for (size_t i = 0; i < mask.labels.size(); ++i)
    p.data[i * mask.num_classes + mask.labels[i]] = 1.0f;
  return p;
}

}  // namespace scorpion
