#include "scorpion/augment/color_jitter.hpp"

#include <algorithm>
#include <vector>

#include "scorpion/augment/colorspace.hpp"

namespace scorpion::augment {
namespace {

float clampf(double v) { return static_cast<float>(std::min(1.0, std::max(0.0, v))); }

void apply_brightness(RasterImage& img, double f) {
  if (f == 1.0) return;
  for (float& v : img.data) v = clampf(f * v);
}

void apply_contrast(RasterImage& img, double f) {
  if (f == 1.0) return;
  double mean_gray = 0.0;
  for (size_t p = 0; p < img.pixel_count(); ++p) {
    const float* px = img.data.data() + p * 3;
    mean_gray += 0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2];
  }
  mean_gray /= static_cast<double>(img.pixel_count());
  for (float& v : img.data) v = clampf(mean_gray + f * (v - mean_gray));
}

void apply_saturation(RasterImage& img, double f) {
  if (f == 1.0) return;
  for (size_t p = 0; p < img.pixel_count(); ++p) {
    float* px = img.data.data() + p * 3;
    double gray = 0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2];
    for (int c = 0; c < 3; ++c) px[c] = clampf(gray + f * (px[c] - gray));
  }
}

void apply_hue(RasterImage& img, double offset) {
  if (offset == 0.0) return;
  for (size_t p = 0; p < img.pixel_count(); ++p) {
    float* px = img.data.data() + p * 3;
    auto hsv = rgb_to_hsv(px[0], px[1], px[2]);
    auto rgb = hsv_to_rgb(hsv[0] + offset, hsv[1], hsv[2]);
    for (int c = 0; c < 3; ++c) px[c] = clampf(rgb[c]);
  }
}

}  // namespace

void ColorJitterParams::validate() const {
  auto check_range = [](const std::pair<double, double>& r, const char* name) {
    require(r.first >= 0.0 && r.first <= r.second, ErrorKind::InvalidArgument,
            std::string("color jitter: bad ") + name + " range");
  };
  check_range(brightness, "brightness");
  check_range(contrast, "contrast");
  check_range(saturation, "saturation");
  require(hue >= 0.0 && hue <= 0.5, ErrorKind::InvalidArgument,
          "color jitter: hue half-range must lie in [0, 0.5]");
}

RasterImage color_jitter(const RasterImage& img, const ColorJitterParams& params,
                         Rng& rng) {
  params.validate();
  RasterImage out = img;
  // Draw the op order first, then each factor as its op runs.
  std::vector<int> order{0, 1, 2, 3};
  rng.shuffle(order);
  for (int op : order) {
    switch (op) {
      case 0: apply_brightness(out, rng.uniform(params.brightness.first, params.brightness.second)); break;
      case 1: apply_contrast(out, rng.uniform(params.contrast.first, params.contrast.second)); break;
      case 2: apply_saturation(out, rng.uniform(params.saturation.first, params.saturation.second)); break;
      case 3: apply_hue(out, params.hue == 0.0 ? 0.0 : rng.uniform(-params.hue, params.hue)); break;
    }
  }
  return out;
}

}  // namespace scorpion::augment
