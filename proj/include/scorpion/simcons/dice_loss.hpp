#pragma once

#include <vector>

#include "scorpion/core/image.hpp"

namespace scorpion::simcons {

/// Smoothing constant of the soft Dice loss.
inline constexpr double kDiceEpsilon = 1.0;

/// Soft Dice loss over planar class maps (p, t of K planes, n pixels each):
///   loss = 1 - (1/K) sum_c (2 sum p_c t_c + eps) / (sum p_c^2 + sum t_c^2 + eps)
/// The squared denominator makes the loss of a map against itself exactly
/// zero, which the consistency term relies on. Gradients (accumulated, not
/// assigned) are optional for either argument.
double soft_dice_loss_planar(const double* p, const double* t, int num_classes,
                             size_t n_pixels, double* grad_p, double* grad_t);

struct SoftDiceResult {
  double loss = 0.0;
  std::vector<double> grad_p;  // pixel-major, matching ProbMap layout
  std::vector<double> grad_t;  // filled only for map-vs-map when requested
};

/// ProbMap-vs-mask (the supervised term; the mask is one-hot encoded).
SoftDiceResult soft_dice_loss(const ProbMap& p, const LabelMask& target);

/// ProbMap-vs-ProbMap (the consistency term).
SoftDiceResult soft_dice_loss(const ProbMap& p, const ProbMap& target,
                              bool need_grad_t = false);

}  // namespace scorpion::simcons
