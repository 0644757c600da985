#include "scorpion/simcons/loss.hpp"

#include "scorpion/simcons/dice_loss.hpp"

namespace scorpion::simcons {

SimConsLossResult simcons_loss(const Segmenter& model, const RasterImage& x,
                               const LabelMask& y,
                               const augment::StyleAugmentation& sa, double lambda,
                               Rng& rng) {
  require(lambda >= 0.0, ErrorKind::InvalidArgument, "lambda must be >= 0");
  require(x.width == y.width && x.height == y.height, ErrorKind::DimensionMismatch,
          "image and label dimensions differ");

  int k = model.num_classes();
  size_t n = static_cast<size_t>(x.width) * x.height;

  RasterImage styled = sa.apply(x, rng);

  Segmenter::Activations act_x, act_s;
  model.forward_cached(x, act_x);
  model.forward_cached(styled, act_s);

  // Planar one-hot target.
  std::vector<double> target(static_cast<size_t>(k) * n, 0.0);
  for (size_t i = 0; i < n; ++i)
    target[static_cast<size_t>(y.labels[i]) * n + i] = 1.0;

  std::vector<double> grad_x(static_cast<size_t>(k) * n, 0.0);
  std::vector<double> grad_s(static_cast<size_t>(k) * n, 0.0);

  SimConsLossResult out;
  out.supervised =
      soft_dice_loss_planar(act_x.probs.data(), target.data(), k, n, grad_x.data(), nullptr);

  // Consistency gradients scale by lambda; accumulate them pre-scaled.
  std::vector<double> cons_grad_x(static_cast<size_t>(k) * n, 0.0);
  out.consistency = soft_dice_loss_planar(act_x.probs.data(), act_s.probs.data(), k, n,
                                          cons_grad_x.data(), grad_s.data());
  out.total = out.supervised + lambda * out.consistency;

  out.param_grads.assign(model.parameters().size(), 0.0);
  if (lambda > 0.0) {
    for (size_t i = 0; i < grad_x.size(); ++i) grad_x[i] += lambda * cons_grad_x[i];
    for (double& g : grad_s) g *= lambda;
    model.backward(act_x, grad_x, out.param_grads);
    model.backward(act_s, grad_s, out.param_grads);
  } else {
    model.backward(act_x, grad_x, out.param_grads);
  }
  return out;
}

}  // namespace scorpion::simcons
