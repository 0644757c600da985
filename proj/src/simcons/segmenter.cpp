#include "scorpion/simcons/segmenter.hpp"

#include <cmath>

namespace scorpion::simcons {
namespace {

constexpr int kMid = Segmenter::kMidChannels;

// Flat layout offsets.
constexpr size_t kW1 = 0;                        // [8][3][3][3]
constexpr size_t kB1 = kW1 + 3 * 3 * 3 * kMid;   // [8]
constexpr size_t kW2 = kB1 + kMid;               // [8][8][3][3]
constexpr size_t kB2 = kW2 + 3 * 3 * kMid * kMid;  // [8]
constexpr size_t kW3 = kB2 + kMid;               // [K][8]
// b3 follows W3.

inline size_t w1_at(int o, int i, int ky, int kx) {
  return kW1 + ((static_cast<size_t>(o) * 3 + i) * 3 + ky) * 3 + kx;
}
inline size_t w2_at(int o, int i, int ky, int kx) {
  return kW2 + ((static_cast<size_t>(o) * kMid + i) * 3 + ky) * 3 + kx;
}

// out[o] = b[o] + sum_i conv3x3(in[i]); zero padding.
void conv3x3_forward(const double* in, int in_ch, int w, int h, const double* params,
                     size_t w_off, size_t b_off, int out_ch, double* out) {
  size_t n = static_cast<size_t>(w) * h;
  for (int o = 0; o < out_ch; ++o) {
    double bias = params[b_off + o];
    double* dst = out + static_cast<size_t>(o) * n;
    for (size_t p = 0; p < n; ++p) dst[p] = bias;
    for (int i = 0; i < in_ch; ++i) {
      const double* src = in + static_cast<size_t>(i) * n;
      for (int ky = 0; ky < 3; ++ky) {
        for (int kx = 0; kx < 3; ++kx) {
          double wgt = params[w_off + ((static_cast<size_t>(o) * in_ch + i) * 3 + ky) * 3 + kx];
          if (wgt == 0.0) continue;
          int dy = ky - 1, dx = kx - 1;
          int y0 = std::max(0, -dy), y1 = std::min(h, h - dy);
          int x0 = std::max(0, -dx), x1 = std::min(w, w - dx);
          for (int y = y0; y < y1; ++y) {
            const double* srow = src + static_cast<size_t>(y + dy) * w + dx;
            double* drow = dst + static_cast<size_t>(y) * w;
            for (int x = x0; x < x1; ++x) drow[x] += wgt * srow[x];
          }
        }
      }
    }
  }
}

// Gradients of conv3x3: accumulate dW/db and (optionally) dIn.
void conv3x3_backward(const double* in, int in_ch, int w, int h, const double* params,
                      size_t w_off, size_t b_off, int out_ch, const double* dout,
                      double* dparams, double* din) {
  size_t n = static_cast<size_t>(w) * h;
  for (int o = 0; o < out_ch; ++o) {
    const double* go = dout + static_cast<size_t>(o) * n;
    double db = 0.0;
    for (size_t p = 0; p < n; ++p) db += go[p];
    dparams[b_off + o] += db;
    for (int i = 0; i < in_ch; ++i) {
      const double* src = in + static_cast<size_t>(i) * n;
      double* dsrc = din ? din + static_cast<size_t>(i) * n : nullptr;
      for (int ky = 0; ky < 3; ++ky) {
        for (int kx = 0; kx < 3; ++kx) {
          size_t widx = w_off + ((static_cast<size_t>(o) * in_ch + i) * 3 + ky) * 3 + kx;
          double wgt = params[widx];
          double dw = 0.0;
          int dy = ky - 1, dx = kx - 1;
          int y0 = std::max(0, -dy), y1 = std::min(h, h - dy);
          int x0 = std::max(0, -dx), x1 = std::min(w, w - dx);
          for (int y = y0; y < y1; ++y) {
            const double* srow = src + static_cast<size_t>(y + dy) * w + dx;
            const double* grow = go + static_cast<size_t>(y) * w;
            for (int x = x0; x < x1; ++x) dw += grow[x] * srow[x];
            if (dsrc) {
              double* drow = dsrc + static_cast<size_t>(y + dy) * w + dx;
              for (int x = x0; x < x1; ++x) drow[x] += wgt * grow[x];
            }
          }
          dparams[widx] += dw;
        }
      }
    }
  }
}

}  // namespace

Segmenter::Segmenter(int num_classes) : num_classes_(num_classes) {
  require(num_classes >= 2, ErrorKind::InvalidArgument,
          "segmenter needs at least 2 classes");
  params_.assign(parameter_count(num_classes), 0.0);
}

void Segmenter::initialize(Rng& rng) {
  double s1 = std::sqrt(6.0 / (3.0 * 9 + kMid * 9));
  double s2 = std::sqrt(6.0 / (kMid * 9 + kMid * 9));
  double s3 = std::sqrt(6.0 / (kMid + num_classes_));
  size_t i = 0;
  for (; i < kB1; ++i) params_[i] = rng.uniform(-s1, s1);
  for (; i < kW2; ++i) params_[i] = 0.0;  // biases
  for (; i < kB2; ++i) params_[i] = rng.uniform(-s2, s2);
  for (; i < kW3; ++i) params_[i] = 0.0;
  for (; i < kW3 + static_cast<size_t>(kMid) * num_classes_; ++i)
    params_[i] = rng.uniform(-s3, s3);
  for (; i < params_.size(); ++i) params_[i] = 0.0;
}

void Segmenter::forward_cached(const RasterImage& img, Activations& act) const {
  require(img.width >= 5 && img.height >= 5, ErrorKind::InvalidArgument,
          "segmenter input must be at least 5x5");
  int w = img.width, h = img.height;
  size_t n = static_cast<size_t>(w) * h;
  act.width = w;
  act.height = h;
  act.input.resize(3 * n);
  for (size_t p = 0; p < n; ++p)
    for (int c = 0; c < 3; ++c) act.input[static_cast<size_t>(c) * n + p] = img.data[p * 3 + c];

  act.hidden1.resize(static_cast<size_t>(kMid) * n);
  conv3x3_forward(act.input.data(), 3, w, h, params_.data(), kW1, kB1, kMid,
                  act.hidden1.data());
  for (double& v : act.hidden1) v = std::tanh(v);

  act.hidden2.resize(static_cast<size_t>(kMid) * n);
  conv3x3_forward(act.hidden1.data(), kMid, w, h, params_.data(), kW2, kB2, kMid,
                  act.hidden2.data());
  for (double& v : act.hidden2) v = std::tanh(v);

  // conv1x1 to K logits, then per-pixel softmax (stored planar).
  int k = num_classes_;
  act.probs.resize(static_cast<size_t>(k) * n);
  const double* w3 = params_.data() + kW3;
  const double* b3 = w3 + static_cast<size_t>(k) * kMid;
  std::vector<double> logits(static_cast<size_t>(k));
  for (size_t p = 0; p < n; ++p) {
    double max_logit = -1e300;
    for (int o = 0; o < k; ++o) {
      double acc = b3[o];
      for (int i = 0; i < kMid; ++i)
        acc += w3[static_cast<size_t>(o) * kMid + i] * act.hidden2[static_cast<size_t>(i) * n + p];
      logits[o] = acc;
      max_logit = std::max(max_logit, acc);
    }
    double sum = 0.0;
    for (int o = 0; o < k; ++o) {
      logits[o] = std::exp(logits[o] - max_logit);
      sum += logits[o];
    }
    for (int o = 0; o < k; ++o) act.probs[static_cast<size_t>(o) * n + p] = logits[o] / sum;
  }
}

ProbMap Segmenter::forward(const RasterImage& img) const {
  Activations act;
  forward_cached(img, act);
  size_t n = static_cast<size_t>(act.width) * act.height;
  ProbMap out(act.width, act.height, num_classes_);
  for (size_t p = 0; p < n; ++p)
    for (int k = 0; k < num_classes_; ++k)
      out.data[p * num_classes_ + k] =
          static_cast<float>(act.probs[static_cast<size_t>(k) * n + p]);
  return out;
}

void Segmenter::backward(const Activations& act, const std::vector<double>& grad_probs,
                         std::vector<double>& param_grads) const {
  int w = act.width, h = act.height, k = num_classes_;
  size_t n = static_cast<size_t>(w) * h;
  require(grad_probs.size() == static_cast<size_t>(k) * n, ErrorKind::DimensionMismatch,
          "grad_probs shape mismatch");
  require(param_grads.size() == params_.size(), ErrorKind::DimensionMismatch,
          "param_grads shape mismatch");

  // Softmax backward: dlogit_o = p_o * (g_o - sum_j g_j p_j).
  std::vector<double> dlogits(static_cast<size_t>(k) * n);
  for (size_t p = 0; p < n; ++p) {
    double dot = 0.0;
    for (int o = 0; o < k; ++o)
      dot += grad_probs[static_cast<size_t>(o) * n + p] * act.probs[static_cast<size_t>(o) * n + p];
    for (int o = 0; o < k; ++o) {
      double po = act.probs[static_cast<size_t>(o) * n + p];
      dlogits[static_cast<size_t>(o) * n + p] =
          po * (grad_probs[static_cast<size_t>(o) * n + p] - dot);
    }
  }

  // conv1x1 backward.
  const double* w3 = params_.data() + kW3;
  double* dw3 = param_grads.data() + kW3;
  double* db3 = dw3 + static_cast<size_t>(k) * kMid;
  std::vector<double> dh2(static_cast<size_t>(kMid) * n, 0.0);
  for (int o = 0; o < k; ++o) {
    const double* gl = dlogits.data() + static_cast<size_t>(o) * n;
    double db = 0.0;
    for (size_t p = 0; p < n; ++p) db += gl[p];
    db3[o] += db;
    for (int i = 0; i < kMid; ++i) {
      const double* h2 = act.hidden2.data() + static_cast<size_t>(i) * n;
      double* dh = dh2.data() + static_cast<size_t>(i) * n;
      double wgt = w3[static_cast<size_t>(o) * kMid + i];
      double dw = 0.0;
      for (size_t p = 0; p < n; ++p) {
        dw += gl[p] * h2[p];
        dh[p] += wgt * gl[p];
      }
      dw3[static_cast<size_t>(o) * kMid + i] += dw;
    }
  }

  // tanh backward through hidden2.
  for (size_t i = 0; i < dh2.size(); ++i) dh2[i] *= 1.0 - act.hidden2[i] * act.hidden2[i];

  std::vector<double> dh1(static_cast<size_t>(kMid) * n, 0.0);
  conv3x3_backward(act.hidden1.data(), kMid, w, h, params_.data(), kW2, kB2, kMid,
                   dh2.data(), param_grads.data(), dh1.data());

  for (size_t i = 0; i < dh1.size(); ++i) dh1[i] *= 1.0 - act.hidden1[i] * act.hidden1[i];

  conv3x3_backward(act.input.data(), 3, w, h, params_.data(), kW1, kB1, kMid,
                   dh1.data(), param_grads.data(), nullptr);
}

}  // namespace scorpion::simcons
