#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "scorpion/core/manifest.hpp"
#include "scorpion/simcons/trainer.hpp"

namespace scorpion::simcons {

/// Fixed label-preserving photometric transform of one virtual scanner:
/// CIELAB channel shifts, an L-contrast factor around the image mean, and
/// pixel noise.
struct ScannerSim {
  std::array<double, 3> lab_shift{0.0, 0.0, 0.0};
  double contrast = 1.0;
  double noise_sigma = 0.0;
};

struct BenchmarkParams {
  uint64_t seed = 1;
  int n_train = 16;
  int n_val = 4;
  int n_eval = 8;
  int scanners = 3;  // >= 2; scanner 0 is the identity reference
  int patch_size = 64;
  int num_classes = 3;
  /// Structure scale: higher packs more, smaller blobs into a patch.
  double tissue_complexity = 1.0;
  /// Std of the per-sample stain jitter (tissue-level style variance).
  double stain_jitter = 5.0;
  /// Scale on the scanner shift magnitudes (kept below the stain jitter so
  /// paired analysis is what exposes the scanner effect).
  double scanner_strength = 1.0;
};

struct PairedEvalSample {
  std::string sample_id;
  std::vector<RasterImage> patches;  // one per scanner, same order as scanners
  LabelMask mask;                    // shared: scanner transforms preserve labels
};

struct SyntheticBenchmark {
  BenchmarkParams params;
  std::vector<ScannerId> scanners;
  std::vector<ScannerSim> sims;              // sims[0] is the identity
  std::vector<TrainingSample> train;         // reference-scanner style
  std::vector<TrainingSample> val;           // same distribution as train
  std::vector<PairedEvalSample> eval;        // paired across all scanners
};

SyntheticBenchmark make_synthetic_benchmark(const BenchmarkParams& params);

RasterImage apply_scanner(const RasterImage& img, const ScannerSim& sim, Rng& rng);

/// Directory layout: train.json / val.json (labeled sets), eval.json (paired
/// manifest with masks), scanners.json (sim parameters), plus image files.
void save_benchmark(const SyntheticBenchmark& bench, const std::filesystem::path& dir);
SyntheticBenchmark load_benchmark(const std::filesystem::path& dir);

}  // namespace scorpion::simcons
