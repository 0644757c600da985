#pragma once

#include "scorpion/augment/style_augmentation.hpp"
#include "scorpion/simcons/segmenter.hpp"

namespace scorpion::simcons {

struct SimConsLossResult {
  double total = 0.0;
  double supervised = 0.0;
  double consistency = 0.0;
  std::vector<double> param_grads;
};

/// Total = supervised(F(x), y) + lambda * consistency(F(x), F(SA(x))), with
/// gradients flowing through both branches of the consistency term. The
/// consistency value is reported even at lambda = 0 (where it contributes
/// no gradient and the style branch is skipped in backprop).
SimConsLossResult simcons_loss(const Segmenter& model, const RasterImage& x,
                               const LabelMask& y,
                               const augment::StyleAugmentation& sa, double lambda,
                               Rng& rng);

}  // namespace scorpion::simcons
