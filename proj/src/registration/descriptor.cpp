#include "scorpion/registration/descriptor.hpp"

#include <bit>
#include <cmath>

#include "scorpion/core/rng.hpp"

namespace scorpion::registration {
namespace {

// The comparison pattern is pseudorandom but fixed for the lifetime of the
// format: offsets in [-13, 13] so any rotation stays inside the patch.
struct TestPair {
  double x1, y1, x2, y2;
};

const std::array<TestPair, 256>& test_pattern() {
  static const std::array<TestPair, 256> pattern = [] {
    std::array<TestPair, 256> p{};
    Rng rng(0x5C09F1A7u);
    auto coord = [&rng] { return static_cast<double>(rng.below(27)) - 13.0; };
    for (auto& t : p) {
      do {
        t = {coord(), coord(), coord(), coord()};
      } while (t.x1 == t.x2 && t.y1 == t.y2);
    }
    return p;
  }();
  return pattern;
}

float sample_bilinear(const std::vector<float>& lum, int w, int h, double x, double y) {
  x = std::clamp(x, 0.0, static_cast<double>(w - 1));
  y = std::clamp(y, 0.0, static_cast<double>(h - 1));
  int x0 = static_cast<int>(x), y0 = static_cast<int>(y);
  int x1 = std::min(x0 + 1, w - 1), y1 = std::min(y0 + 1, h - 1);
  double fx = x - x0, fy = y - y0;
  double top = lum[static_cast<size_t>(y0) * w + x0] * (1 - fx) +
               lum[static_cast<size_t>(y0) * w + x1] * fx;
  double bot = lum[static_cast<size_t>(y1) * w + x0] * (1 - fx) +
               lum[static_cast<size_t>(y1) * w + x1] * fx;
  return static_cast<float>(top * (1 - fy) + bot * fy);
}

}  // namespace

int hamming_distance(const BinaryDescriptor& a, const BinaryDescriptor& b) {
  int d = 0;
  for (int i = 0; i < 4; ++i) d += std::popcount(a[i] ^ b[i]);
  return d;
}

DescriptorSet compute_descriptors(const RasterImage& img,
                                  const std::vector<Keypoint>& keypoints) {
  std::vector<float> lum = luma_plane(img);
  int w = img.width, h = img.height;
  DescriptorSet out;
  const auto& pattern = test_pattern();

  for (size_t i = 0; i < keypoints.size(); ++i) {
    const Keypoint& kp = keypoints[i];
    int cx = static_cast<int>(std::lround(kp.position.x));
    int cy = static_cast<int>(std::lround(kp.position.y));
    if (cx < kPatchRadius || cx >= w - kPatchRadius || cy < kPatchRadius ||
        cy >= h - kPatchRadius)
      continue;  // dropped: rotated pattern would leave the image

    double c = std::cos(kp.orientation), s = std::sin(kp.orientation);
    BinaryDescriptor desc{};
    for (size_t bit = 0; bit < pattern.size(); ++bit) {
      const TestPair& t = pattern[bit];
      double ax = kp.position.x + c * t.x1 - s * t.y1;
      double ay = kp.position.y + s * t.x1 + c * t.y1;
      double bx = kp.position.x + c * t.x2 - s * t.y2;
      double by = kp.position.y + s * t.x2 + c * t.y2;
      if (sample_bilinear(lum, w, h, ax, ay) < sample_bilinear(lum, w, h, bx, by))
        desc[bit >> 6] |= (uint64_t{1} << (bit & 63));
    }
    out.descriptors.push_back(desc);
    out.kept_indices.push_back(i);
  }
  return out;
}

}  // namespace scorpion::registration
