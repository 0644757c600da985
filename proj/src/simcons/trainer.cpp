#include "scorpion/simcons/trainer.hpp"

#include <cmath>

#include "scorpion/metrics/dice.hpp"
#include "scorpion/simcons/loss.hpp"
#include "scorpion/simcons/photometric.hpp"

namespace scorpion::simcons {

void SimConsConfig::validate() const {
  require(lambda >= 0.0, ErrorKind::InvalidArgument, "lambda must be >= 0");
  require(epochs > 0, ErrorKind::InvalidArgument, "epochs must be positive");
  require(learning_rate >= 0.0, ErrorKind::InvalidArgument,
          "learning rate must not be negative");
  require(batch_size > 0, ErrorKind::InvalidArgument, "batch size must be positive");
  require(num_classes >= 2, ErrorKind::InvalidArgument, "need at least 2 classes");
  require(sa_input_prob >= 0.0 && sa_input_prob <= 1.0, ErrorKind::InvalidArgument,
          "sa_input_prob must lie in [0, 1]");
  require(augment_prob >= 0.0 && augment_prob <= 1.0, ErrorKind::InvalidArgument,
          "augment_prob must lie in [0, 1]");
  if (lambda > 0.0 || sa_input_prob > 0.0)
    require(sa.has_value(), ErrorKind::InvalidArgument,
            "SA required when lambda > 0 or sa_input_prob > 0");
}

double evaluate_dice(const Segmenter& model, const std::vector<TrainingSample>& set) {
  require(!set.empty(), ErrorKind::InvalidArgument, "empty evaluation set");
  double sum = 0.0;
  for (const auto& s : set)
    sum += metrics::dice(metrics::hard_mask(model.forward(s.image)), s.label).macro;
  return sum / static_cast<double>(set.size());
}

TrainResult train(const SimConsConfig& config,
                  const std::vector<TrainingSample>& train_set,
                  const std::vector<TrainingSample>& val_set) {
  config.validate();
  require(!train_set.empty() && !val_set.empty(), ErrorKind::InvalidArgument,
          "training needs non-empty train and validation sets");
  for (const auto& s : train_set)
    require(s.image.width == s.label.width && s.image.height == s.label.height &&
                s.label.num_classes == config.num_classes,
            ErrorKind::DimensionMismatch, "training sample shape mismatch");

  Rng init_rng = Rng(config.seed).child(0xA11CE);
  Rng epoch_rng = Rng(config.seed).child(0xB0B);

  Segmenter model(config.num_classes);
  model.initialize(init_rng);
  augment::StyleAugmentation identity = augment::identity_sa();
  const augment::StyleAugmentation& sa = config.sa ? *config.sa : identity;

  size_t n_params = model.parameters().size();
  std::vector<double> adam_m(n_params, 0.0), adam_v(n_params, 0.0);
  std::vector<double> batch_grads(n_params, 0.0);
  int64_t adam_t = 0;

  auto adam_step = [&](int batch_count) {
    ++adam_t;
    double inv = 1.0 / batch_count;
    double bc1 = 1.0 - std::pow(config.adam_beta1, static_cast<double>(adam_t));
    double bc2 = 1.0 - std::pow(config.adam_beta2, static_cast<double>(adam_t));
    std::vector<double>& params = model.parameters();
    for (size_t i = 0; i < n_params; ++i) {
      double g = batch_grads[i] * inv;
      adam_m[i] = config.adam_beta1 * adam_m[i] + (1.0 - config.adam_beta1) * g;
      adam_v[i] = config.adam_beta2 * adam_v[i] + (1.0 - config.adam_beta2) * g * g;
      params[i] -= config.learning_rate * (adam_m[i] / bc1) /
                   (std::sqrt(adam_v[i] / bc2) + config.adam_epsilon);
    }
    std::fill(batch_grads.begin(), batch_grads.end(), 0.0);
  };

  TrainResult result{Segmenter(config.num_classes), {}, 0, -1.0};

  std::vector<size_t> order(train_set.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    epoch_rng.shuffle(order);
    double sup_sum = 0.0, cons_sum = 0.0;
    int in_batch = 0;

    for (size_t idx : order) {
      RasterImage x = train_set[idx].image;
      LabelMask y = train_set[idx].label;

      // Geometric flips apply to image and label identically, before SA.
      if (config.hflip && epoch_rng.uniform() < config.augment_prob) {
        x = hflip(x);
        y = hflip(y);
      }
      if (config.vflip && epoch_rng.uniform() < config.augment_prob) {
        x = vflip(x);
        y = vflip(y);
      }
      // Photometric noise/blur perturb the input of both branches.
      if (config.blur_sigma.second > 0.0 && epoch_rng.uniform() < config.augment_prob)
        x = gaussian_blur(x, epoch_rng.uniform(config.blur_sigma.first,
                                               config.blur_sigma.second));
      if (config.noise_sigma > 0.0 && epoch_rng.uniform() < config.augment_prob)
        x = add_gaussian_noise(x, config.noise_sigma, epoch_rng);
      // SA as plain input augmentation (the "SA only" arm).
      if (config.sa_input_prob > 0.0 && epoch_rng.uniform() < config.sa_input_prob)
        x = sa.apply(x, epoch_rng);

      SimConsLossResult loss =
          simcons_loss(model, x, y, sa, config.lambda, epoch_rng);
      if (!std::isfinite(loss.total))
        fail(ErrorKind::Divergence,
             "non-finite loss at epoch " + std::to_string(epoch));
      sup_sum += loss.supervised;
      cons_sum += loss.consistency;
      for (size_t i = 0; i < n_params; ++i) batch_grads[i] += loss.param_grads[i];
      if (++in_batch == config.batch_size) {
        adam_step(in_batch);
        in_batch = 0;
      }
    }
    if (in_batch > 0) adam_step(in_batch);

    EpochStats stats;
    stats.epoch = epoch;
    stats.supervised = sup_sum / static_cast<double>(train_set.size());
    stats.consistency = cons_sum / static_cast<double>(train_set.size());
    stats.val_dice = evaluate_dice(model, val_set);
    result.history.push_back(stats);

    if (stats.val_dice > result.best_val_dice) {
      result.best_val_dice = stats.val_dice;
      result.best_epoch = epoch;
      result.model = model;
    }
  }
  return result;
}

}  // namespace scorpion::simcons
