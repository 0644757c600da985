#include "scorpion/simcons/dice_loss.hpp"

namespace scorpion::simcons {

double soft_dice_loss_planar(const double* p, const double* t, int num_classes,
                             size_t n_pixels, double* grad_p, double* grad_t) {
  double dice_sum = 0.0;
  for (int c = 0; c < num_classes; ++c) {
    const double* pc = p + static_cast<size_t>(c) * n_pixels;
    const double* tc = t + static_cast<size_t>(c) * n_pixels;
    double num = kDiceEpsilon, den = kDiceEpsilon;
    for (size_t i = 0; i < n_pixels; ++i) {
      num += 2.0 * pc[i] * tc[i];
      den += pc[i] * pc[i] + tc[i] * tc[i];
    }
    dice_sum += num / den;
    double inv_den2 = 1.0 / (den * den);
    double scale = -1.0 / num_classes;
    if (grad_p) {
      double* gp = grad_p + static_cast<size_t>(c) * n_pixels;
      for (size_t i = 0; i < n_pixels; ++i)
        gp[i] += scale * (2.0 * tc[i] * den - num * 2.0 * pc[i]) * inv_den2;
    }
    if (grad_t) {
      double* gt = grad_t + static_cast<size_t>(c) * n_pixels;
      for (size_t i = 0; i < n_pixels; ++i)
        gt[i] += scale * (2.0 * pc[i] * den - num * 2.0 * tc[i]) * inv_den2;
    }
  }
  return 1.0 - dice_sum / num_classes;
}

namespace {

std::vector<double> planar_of(const ProbMap& p) {
  size_t n = static_cast<size_t>(p.width) * p.height;
  std::vector<double> out(static_cast<size_t>(p.num_classes) * n);
  for (size_t i = 0; i < n; ++i)
    for (int k = 0; k < p.num_classes; ++k)
      out[static_cast<size_t>(k) * n + i] = p.data[i * p.num_classes + k];
  return out;
}

std::vector<double> planar_one_hot(const LabelMask& m) {
  size_t n = m.labels.size();
  std::vector<double> out(static_cast<size_t>(m.num_classes) * n, 0.0);
  for (size_t i = 0; i < n; ++i) out[static_cast<size_t>(m.labels[i]) * n + i] = 1.0;
  return out;
}

std::vector<double> pixel_major_of(const std::vector<double>& planar, int k, size_t n) {
  std::vector<double> out(planar.size());
  for (size_t i = 0; i < n; ++i)
    for (int c = 0; c < k; ++c) out[i * k + c] = planar[static_cast<size_t>(c) * n + i];
  return out;
}

}  // namespace

SoftDiceResult soft_dice_loss(const ProbMap& p, const LabelMask& target) {
  require(p.width == target.width && p.height == target.height &&
              p.num_classes == target.num_classes,
          ErrorKind::DimensionMismatch, "dice loss: map and mask shapes differ");
  size_t n = static_cast<size_t>(p.width) * p.height;
  auto pp = planar_of(p);
  auto tt = planar_one_hot(target);
  std::vector<double> gp(pp.size(), 0.0);
  SoftDiceResult out;
  out.loss = soft_dice_loss_planar(pp.data(), tt.data(), p.num_classes, n, gp.data(), nullptr);
  out.grad_p = pixel_major_of(gp, p.num_classes, n);
  return out;
}

SoftDiceResult soft_dice_loss(const ProbMap& p, const ProbMap& target, bool need_grad_t) {
  require(p.width == target.width && p.height == target.height &&
              p.num_classes == target.num_classes,
          ErrorKind::DimensionMismatch, "dice loss: map shapes differ");
  size_t n = static_cast<size_t>(p.width) * p.height;
  auto pp = planar_of(p);
  auto tt = planar_of(target);
  std::vector<double> gp(pp.size(), 0.0);
  std::vector<double> gt;
  if (need_grad_t) gt.assign(tt.size(), 0.0);
  SoftDiceResult out;
  out.loss = soft_dice_loss_planar(pp.data(), tt.data(), p.num_classes, n, gp.data(),
                                   need_grad_t ? gt.data() : nullptr);
  out.grad_p = pixel_major_of(gp, p.num_classes, n);
  if (need_grad_t) out.grad_t = pixel_major_of(gt, p.num_classes, n);
  return out;
}

}  // namespace scorpion::simcons
