#include "scorpion/registration/warp.hpp"

#include <cmath>

namespace scorpion::registration {

RasterImage warp_affine(const RasterImage& img, const AffineTransform& t,
                        int out_width, int out_height) {
  AffineTransform inv = t.inverse();
  RasterImage out(out_width, out_height);
  int w = img.width, h = img.height;
  for (int y = 0; y < out_height; ++y) {
    for (int x = 0; x < out_width; ++x) {
      Vec2 s = inv.apply({static_cast<double>(x), static_cast<double>(y)});
      float* dst = out.data.data() + (static_cast<size_t>(y) * out_width + x) * 3;
      if (s.x < 0.0 || s.x > w - 1 || s.y < 0.0 || s.y > h - 1) {
        dst[0] = dst[1] = dst[2] = 1.0f;
        continue;
      }
      int x0 = static_cast<int>(s.x), y0 = static_cast<int>(s.y);
      int x1 = std::min(x0 + 1, w - 1), y1 = std::min(y0 + 1, h - 1);
      double fx = s.x - x0, fy = s.y - y0;
      for (int c = 0; c < 3; ++c) {
        double top = img.at(x0, y0, c) * (1 - fx) + img.at(x1, y0, c) * fx;
        double bot = img.at(x0, y1, c) * (1 - fx) + img.at(x1, y1, c) * fx;
        dst[c] = static_cast<float>(top * (1 - fy) + bot * fy);
      }
    }
  }
  return out;
}

RasterImage resize_bilinear(const RasterImage& img, int out_width, int out_height) {
  require(out_width > 0 && out_height > 0, ErrorKind::InvalidArgument,
          "resize target must be positive");
  if (out_width == img.width && out_height == img.height) return img;
  RasterImage out(out_width, out_height);
  double sx = static_cast<double>(img.width) / out_width;
  double sy = static_cast<double>(img.height) / out_height;
  int w = img.width, h = img.height;
  for (int y = 0; y < out_height; ++y) {
    double src_y = std::clamp((y + 0.5) * sy - 0.5, 0.0, static_cast<double>(h - 1));
    int y0 = static_cast<int>(src_y);
    int y1 = std::min(y0 + 1, h - 1);
    double fy = src_y - y0;
    for (int x = 0; x < out_width; ++x) {
      double src_x = std::clamp((x + 0.5) * sx - 0.5, 0.0, static_cast<double>(w - 1));
      int x0 = static_cast<int>(src_x);
      int x1 = std::min(x0 + 1, w - 1);
      double fx = src_x - x0;
      for (int c = 0; c < 3; ++c) {
        double top = img.at(x0, y0, c) * (1 - fx) + img.at(x1, y0, c) * fx;
        double bot = img.at(x0, y1, c) * (1 - fx) + img.at(x1, y1, c) * fx;
        out.at(x, y, c) = static_cast<float>(top * (1 - fy) + bot * fy);
      }
    }
  }
  return out;
}

RasterImage crop(const RasterImage& img, int x, int y, int w, int h) {
  require(x >= 0 && y >= 0 && w > 0 && h > 0 && x + w <= img.width &&
              y + h <= img.height,
          ErrorKind::InvalidArgument, "crop window out of bounds");
  RasterImage out(w, h);
  for (int row = 0; row < h; ++row) {
    const float* src = img.data.data() + (static_cast<size_t>(y + row) * img.width + x) * 3;
    float* dst = out.data.data() + static_cast<size_t>(row) * w * 3;
    std::copy(src, src + static_cast<size_t>(w) * 3, dst);
  }
  return out;
}

}  // namespace scorpion::registration
