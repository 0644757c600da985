#pragma once

#include <unistd.h>

#include <filesystem>
#include <string>

#include "scorpion/core/image.hpp"
#include "scorpion/core/rng.hpp"

namespace scorpion::test {

/// Self-removing temp directory under the system temp root.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("scorpion_" + tag + "_" + std::to_string(++counter) + "_" +
             std::to_string(::getpid()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline RasterImage random_image(int w, int h, Rng& rng) {
  RasterImage img(w, h);
  for (float& v : img.data) v = static_cast<float>(rng.uniform());
  return img;
}

inline RasterImage constant_image(int w, int h, float r, float g, float b) {
  RasterImage img(w, h);
  for (size_t p = 0; p < img.pixel_count(); ++p) {
    img.data[p * 3 + 0] = r;
    img.data[p * 3 + 1] = g;
    img.data[p * 3 + 2] = b;
  }
  return img;
}

/// Smooth blobby texture with high-frequency detail: enough structure for
/// corner detection and FDA content checks.
RasterImage textured_image(int w, int h, Rng& rng);

inline double max_abs_diff(const RasterImage& a, const RasterImage& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.data.size(); ++i)
    m = std::max(m, static_cast<double>(std::abs(a.data[i] - b.data[i])));
  return m;
}

}  // namespace scorpion::test
