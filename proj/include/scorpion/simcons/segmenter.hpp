#pragma once

#include <vector>

#include "scorpion/core/image.hpp"
#include "scorpion/core/rng.hpp"

namespace scorpion::simcons {

/// Fixed tiny per-pixel segmenter: conv3x3 (3->8) + tanh, conv3x3 (8->8) +
/// tanh, conv1x1 (8->K), per-pixel softmax. Stride 1, zero padding, so the
/// output grid equals the input grid. Parameters live in one flat vector
/// with a fixed layout so gradients, Adam state, and the on-disk format all
/// index the same way.
class Segmenter {
 public:
  static constexpr int kMidChannels = 8;

  explicit Segmenter(int num_classes);

  static size_t parameter_count(int num_classes) {
    return 3 * 3 * 3 * kMidChannels + kMidChannels +
           3 * 3 * kMidChannels * kMidChannels + kMidChannels +
           kMidChannels * num_classes + num_classes;
  }

  int num_classes() const { return num_classes_; }
  std::vector<double>& parameters() { return params_; }
  const std::vector<double>& parameters() const { return params_; }

  /// Xavier-uniform init, deterministic in the rng stream.
  void initialize(Rng& rng);

  ProbMap forward(const RasterImage& img) const;

  /// Planar activations kept for backprop: input (3 planes), the two hidden
  /// tanh outputs (8 planes each), and softmax probabilities (K planes).
  struct Activations {
    int width = 0;
    int height = 0;
    std::vector<double> input;
    std::vector<double> hidden1;
    std::vector<double> hidden2;
    std::vector<double> probs;
  };

  void forward_cached(const RasterImage& img, Activations& act) const;

  /// Accumulates parameter gradients for dLoss/dprobs (planar, K planes)
  /// into param_grads (size parameter_count, zeroed by the caller).
  void backward(const Activations& act, const std::vector<double>& grad_probs,
                std::vector<double>& param_grads) const;

 private:
  int num_classes_;
  std::vector<double> params_;
};

}  // namespace scorpion::simcons
