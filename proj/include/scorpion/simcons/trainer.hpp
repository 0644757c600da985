#pragma once

#include <optional>
#include <utility>

#include "scorpion/augment/style_augmentation.hpp"
#include "scorpion/simcons/segmenter.hpp"

namespace scorpion::simcons {

struct TrainingSample {
  RasterImage image;
  LabelMask label;
};

struct SimConsConfig {
  double lambda = 0.0;
  int epochs = 40;
  double learning_rate = 1e-2;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  int batch_size = 4;
  uint64_t seed = 0;
  int num_classes = 3;

  /// Style augmentation. With lambda > 0 it feeds the consistency branch
  /// (the supervised branch sees the original, as in the framework's
  /// dataflow). sa_input_prob > 0 instead applies it to the input as a
  /// plain augmentation — the "SA only" training mode.
  std::optional<augment::StyleAugmentation> sa;
  double sa_input_prob = 0.0;

  /// Photometric / geometric augmentations, each firing with probability
  /// augment_prob per sample per epoch. A zero range or sigma disables.
  bool hflip = true;
  bool vflip = true;
  std::pair<double, double> blur_sigma{0.0, 0.0};
  double noise_sigma = 0.0;
  double augment_prob = 0.5;

  void validate() const;
};

struct EpochStats {
  int epoch = 0;
  double supervised = 0.0;   // mean over samples
  double consistency = 0.0;  // mean over samples
  double val_dice = 0.0;
};

struct TrainResult {
  Segmenter model;  // best checkpoint by validation Dice
  std::vector<EpochStats> history;
  int best_epoch = 0;
  double best_val_dice = 0.0;
};

/// Adam training of the tiny segmenter under the combined loss. Single
/// threaded; bitwise deterministic for a given config (including seed).
/// Aborts with a Divergence error if the loss stops being finite.
TrainResult train(const SimConsConfig& config,
                  const std::vector<TrainingSample>& train_set,
                  const std::vector<TrainingSample>& val_set);

/// Mean macro Dice of the model's hard predictions on a labeled set.
double evaluate_dice(const Segmenter& model, const std::vector<TrainingSample>& set);

}  // namespace scorpion::simcons
