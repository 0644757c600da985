#pragma once

#include <optional>
#include <vector>

#include "scorpion/core/image.hpp"

namespace scorpion::metrics {

/// Per-class Dice with a defined-flag per class. Classes absent from both
/// masks are undefined and excluded from the macro average.
struct DiceScore {
  std::vector<std::optional<double>> per_class;
  double macro = 0.0;
};

/// Hard Dice between label masks: dice_c = 2|a=c ∩ b=c| / (|a=c| + |b=c|).
DiceScore dice(const LabelMask& a, const LabelMask& b);

/// Per-pixel argmax; ties break toward the lowest class index.
LabelMask hard_mask(const ProbMap& p);

/// Soft Dice between probability maps (squared denominators, no smoothing):
/// dice_c = 2 Σ p q / (Σ p² + Σ q²). Optional variant of the protocol.
DiceScore soft_dice(const ProbMap& a, const ProbMap& b);

}  // namespace scorpion::metrics
