#pragma once

#include "scorpion/metrics/consistency.hpp"
#include "scorpion/simcons/benchmark.hpp"

namespace scorpion::simcons {

struct SweepCell {
  double lambda = 0.0;
  uint64_t seed = 0;
  double consistency_avg = 0.0;
  double consistency_min = 0.0;
  double primary_dice = 0.0;
};

struct SweepRow {
  double lambda = 0.0;
  double consistency_avg_mean = 0.0, consistency_avg_std = 0.0;
  double consistency_min_mean = 0.0, consistency_min_std = 0.0;
  double primary_mean = 0.0, primary_std = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;    // one per lambda, input order
  std::vector<SweepCell> cells;  // row-major: lambda index x seed index
};

/// Full train + evaluation per (lambda, seed) cell. Seeds are split from the
/// base config seed and shared across lambdas so columns pair up. Cells may
/// run in parallel; results merge by (lambda, seed) so the output never
/// depends on scheduling.
SweepResult lambda_sweep(const SimConsConfig& base, const std::vector<double>& lambdas,
                         const SyntheticBenchmark& benchmark, int n_seeds, int jobs = 1);

/// Consistency avg/min and primary Dice of one trained model on the
/// benchmark's paired eval set (primary scored over every scanner patch).
SweepCell evaluate_on_benchmark(const Segmenter& model,
                                const SyntheticBenchmark& benchmark);

std::string sweep_to_csv(const SweepResult& result);

}  // namespace scorpion::simcons
