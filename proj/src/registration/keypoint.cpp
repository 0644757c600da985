#include "scorpion/registration/keypoint.hpp"

#include <algorithm>
#include <cmath>

namespace scorpion::registration {
namespace {

// Bresenham circle of radius 3, clockwise from 12 o'clock.
constexpr int kCircle[16][2] = {
    {0, -3}, {1, -3}, {2, -2}, {3, -1}, {3, 0},  {3, 1},  {2, 2},  {1, 3},
    {0, 3},  {-1, 3}, {-2, 2}, {-3, 1}, {-3, 0}, {-3, -1}, {-2, -2}, {-1, -3}};

bool segment_test(const std::vector<float>& lum, int w, int x, int y) {
  float center = lum[static_cast<size_t>(y) * w + x];
  float hi = center + static_cast<float>(kFastThreshold);
  float lo = center - static_cast<float>(kFastThreshold);
  // State per circle point: +1 brighter, -1 darker, 0 neither.
  int state[16];
  for (int i = 0; i < 16; ++i) {
    float v = lum[static_cast<size_t>(y + kCircle[i][1]) * w + (x + kCircle[i][0])];
    state[i] = v > hi ? 1 : (v < lo ? -1 : 0);
  }
  for (int target : {1, -1}) {
    int run = 0;
    // Wrap around by scanning twice; a run of kFastArc anywhere qualifies.
    for (int i = 0; i < 32; ++i) {
      if (state[i & 15] == target) {
        if (++run >= kFastArc) return true;
      } else {
        run = 0;
      }
    }
  }
  return false;
}

// Harris response over a 7x7 block of Sobel gradients, k = 0.04.
double harris_response(const std::vector<float>& lum, int w, int h, int x, int y) {
  auto at = [&](int px, int py) {
    px = std::clamp(px, 0, w - 1);
    py = std::clamp(py, 0, h - 1);
    return static_cast<double>(lum[static_cast<size_t>(py) * w + px]);
  };
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (int dy = -3; dy <= 3; ++dy) {
    for (int dx = -3; dx <= 3; ++dx) {
      int px = x + dx, py = y + dy;
      double ix = (at(px + 1, py - 1) + 2.0 * at(px + 1, py) + at(px + 1, py + 1)) -
                  (at(px - 1, py - 1) + 2.0 * at(px - 1, py) + at(px - 1, py + 1));
      double iy = (at(px - 1, py + 1) + 2.0 * at(px, py + 1) + at(px + 1, py + 1)) -
                  (at(px - 1, py - 1) + 2.0 * at(px, py - 1) + at(px + 1, py - 1));
      sxx += ix * ix;
      syy += iy * iy;
      sxy += ix * iy;
    }
  }
  double trace = sxx + syy;
  return sxx * syy - sxy * sxy - 0.04 * trace * trace;
}

// Intensity-centroid orientation over a radius-15 disc, clipped at borders.
double centroid_orientation(const std::vector<float>& lum, int w, int h, int x, int y) {
  constexpr int kRadius = 15;
  double m10 = 0.0, m01 = 0.0;
  for (int dy = -kRadius; dy <= kRadius; ++dy) {
    int py = y + dy;
    if (py < 0 || py >= h) continue;
    for (int dx = -kRadius; dx <= kRadius; ++dx) {
      int px = x + dx;
      if (px < 0 || px >= w) continue;
      if (dx * dx + dy * dy > kRadius * kRadius) continue;
      double v = lum[static_cast<size_t>(py) * w + px];
      m10 += dx * v;
      m01 += dy * v;
    }
  }
  return std::atan2(m01, m10);
}

}  // namespace

std::vector<Keypoint> detect_keypoints(const RasterImage& img, int max_count) {
  require(std::min(img.width, img.height) >= 32, ErrorKind::InvalidArgument,
          "keypoint detection needs min dimension >= 32 px");
  require(max_count > 0, ErrorKind::InvalidArgument, "max_count must be positive");

  std::vector<float> lum = luma_plane(img);
  int w = img.width, h = img.height;

  // Candidates: segment-test corners with their Harris scores. The 4 px
  // margin keeps the Sobel block inside the image.
  struct Candidate {
    int x, y;
    double response;
  };
  std::vector<Candidate> candidates;
  std::vector<double> response_map(static_cast<size_t>(w) * h,
                                   -std::numeric_limits<double>::infinity());
  for (int y = 4; y < h - 4; ++y) {
    for (int x = 4; x < w - 4; ++x) {
      if (!segment_test(lum, w, x, y)) continue;
      double r = harris_response(lum, w, h, x, y);
      if (r <= 0.0) continue;  // edge-like responses are discarded
      candidates.push_back({x, y, r});
      response_map[static_cast<size_t>(y) * w + x] = r;
    }
  }

  // 3x3 non-max suppression; scan-order tie break keeps the result stable.
  std::vector<Keypoint> keypoints;
  for (const auto& c : candidates) {
    bool is_max = true;
    for (int dy = -1; dy <= 1 && is_max; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        double other = response_map[static_cast<size_t>(c.y + dy) * w + (c.x + dx)];
        if (other > c.response ||
            (other == c.response && (dy < 0 || (dy == 0 && dx < 0)))) {
          is_max = false;
          break;
        }
      }
    }
    if (!is_max) continue;
    Keypoint kp;
    kp.position = {static_cast<double>(c.x), static_cast<double>(c.y)};
    kp.response = c.response;
    kp.orientation = centroid_orientation(lum, w, h, c.x, c.y);
    keypoints.push_back(kp);
  }

  std::sort(keypoints.begin(), keypoints.end(), [](const Keypoint& a, const Keypoint& b) {
    if (a.response != b.response) return a.response > b.response;
    if (a.position.y != b.position.y) return a.position.y < b.position.y;
    return a.position.x < b.position.x;
  });
  if (static_cast<int>(keypoints.size()) > max_count) keypoints.resize(max_count);
  return keypoints;
}

}  // namespace scorpion::registration
