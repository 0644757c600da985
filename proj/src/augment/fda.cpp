#include "scorpion/augment/fda.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <vector>

namespace scorpion::augment {
namespace {

// The FFTW planner is not thread-safe; executing distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftBuffers {
  fftw_complex* in;
  fftw_complex* out;
  fftw_plan forward;
  fftw_plan inverse;
  size_t n;

  FftBuffers(int height, int width) : n(static_cast<size_t>(height) * width) {
    in = fftw_alloc_complex(n);
    out = fftw_alloc_complex(n);
    std::lock_guard<std::mutex> lock(planner_mutex());
    forward = fftw_plan_dft_2d(height, width, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    inverse = fftw_plan_dft_2d(height, width, out, in, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~FftBuffers() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(inverse);
    fftw_free(in);
    fftw_free(out);
  }
  FftBuffers(const FftBuffers&) = delete;
  FftBuffers& operator=(const FftBuffers&) = delete;
};

}  // namespace

RasterImage fda_transfer(const RasterImage& source, const RasterImage& target,
                         const FdaParams& params) {
  params.validate();
  require(source.same_size(target), ErrorKind::DimensionMismatch,
          "FDA source and target dimensions differ");
  int w = source.width, h = source.height;
  int radius = static_cast<int>(std::floor(params.beta * std::min(w, h)));

  FftBuffers src_fft(h, w), tgt_fft(h, w);
  RasterImage out(w, h);
  size_t n = src_fft.n;

  // DC-centered frequency offset of row/col index i (maps to (-N/2, N/2]).
  auto centered = [](int i, int size) { return i <= size / 2 ? i : i - size; };

  for (int c = 0; c < 3; ++c) {
    for (size_t i = 0; i < n; ++i) {
      src_fft.in[i][0] = source.data[i * 3 + c];
      src_fft.in[i][1] = 0.0;
      tgt_fft.in[i][0] = target.data[i * 3 + c];
      tgt_fft.in[i][1] = 0.0;
    }
    fftw_execute(src_fft.forward);
    fftw_execute(tgt_fft.forward);

    if (radius >= 1) {
      for (int y = 0; y < h; ++y) {
        int fy = centered(y, h);
        if (std::abs(fy) > radius) continue;
        for (int x = 0; x < w; ++x) {
          int fx = centered(x, w);
          if (std::abs(fx) > radius) continue;
          size_t i = static_cast<size_t>(y) * w + x;
          std::complex<double> s(src_fft.out[i][0], src_fft.out[i][1]);
          std::complex<double> t(tgt_fft.out[i][0], tgt_fft.out[i][1]);
          // Target amplitude, source phase. arg(0) = 0 keeps conjugate
          // symmetry when the source coefficient vanishes.
          std::complex<double> swapped = std::polar(std::abs(t), std::arg(s));
          src_fft.out[i][0] = swapped.real();
          src_fft.out[i][1] = swapped.imag();
        }
      }
    }

    fftw_execute(src_fft.inverse);
    double scale = 1.0 / static_cast<double>(n);
    for (size_t i = 0; i < n; ++i) {
      double v = src_fft.in[i][0] * scale;
      out.data[i * 3 + c] = static_cast<float>(std::min(1.0, std::max(0.0, v)));
    }
  }
  return out;
}

}  // namespace scorpion::augment
