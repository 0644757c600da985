#include "scorpion/metrics/dice.hpp"

#include <string>

namespace scorpion::metrics {
namespace {

double macro_of(const std::vector<std::optional<double>>& per_class) {
  double sum = 0.0;
  int defined = 0;
  for (const auto& d : per_class) {
    if (d) {
      sum += *d;
      ++defined;
    }
  }
  return defined == 0 ? 0.0 : sum / defined;
}

}  // namespace

DiceScore dice(const LabelMask& a, const LabelMask& b) {
  require(a.width == b.width && a.height == b.height,
          ErrorKind::DimensionMismatch, "dice: mask dimensions differ");
  require(a.num_classes == b.num_classes, ErrorKind::DimensionMismatch,
          "dice: class counts differ (" + std::to_string(a.num_classes) + " vs " +
              std::to_string(b.num_classes) + ")");
  int k = a.num_classes;
  std::vector<int64_t> support_a(k, 0), support_b(k, 0), inter(k, 0);
  for (size_t i = 0; i < a.labels.size(); ++i) {
    support_a[a.labels[i]]++;
    support_b[b.labels[i]]++;
    if (a.labels[i] == b.labels[i]) inter[a.labels[i]]++;
  }
  DiceScore score;
  score.per_class.resize(k);
  for (int c = 0; c < k; ++c) {
    int64_t denom = support_a[c] + support_b[c];
    if (denom == 0) continue;  // absent from both: undefined
    score.per_class[c] = 2.0 * static_cast<double>(inter[c]) / static_cast<double>(denom);
  }
  score.macro = macro_of(score.per_class);
  return score;
}

LabelMask hard_mask(const ProbMap& p) {
  LabelMask mask(p.width, p.height, p.num_classes);
  size_t n = static_cast<size_t>(p.width) * p.height;
  for (size_t i = 0; i < n; ++i) {
    const float* probs = p.data.data() + i * p.num_classes;
    int best = 0;
    for (int c = 1; c < p.num_classes; ++c)
      if (probs[c] > probs[best]) best = c;
    mask.labels[i] = static_cast<uint8_t>(best);
  }
  return mask;
}

DiceScore soft_dice(const ProbMap& a, const ProbMap& b) {
  require(a.width == b.width && a.height == b.height && a.num_classes == b.num_classes,
          ErrorKind::DimensionMismatch, "soft_dice: map shapes differ");
  int k = a.num_classes;
  size_t n = static_cast<size_t>(a.width) * a.height;
  DiceScore score;
  score.per_class.resize(k);
  for (int c = 0; c < k; ++c) {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double pa = a.data[i * k + c];
      double pb = b.data[i * k + c];
      num += pa * pb;
      den += pa * pa + pb * pb;
    }
    if (den == 0.0) continue;
    score.per_class[c] = 2.0 * num / den;
  }
  score.macro = macro_of(score.per_class);
  return score;
}

}  // namespace scorpion::metrics
