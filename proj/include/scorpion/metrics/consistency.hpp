#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "scorpion/core/image.hpp"
#include "scorpion/core/manifest.hpp"
#include "scorpion/metrics/dice.hpp"

namespace scorpion::metrics {

using Predictor = std::function<ProbMap(const RasterImage&)>;

struct PairScore {
  ScannerId a;
  ScannerId b;
  double score = 0.0;
};

/// Inter-scanner consistency: per unordered scanner pair, the mean (over
/// samples) of the macro Dice between predictions on paired patches, plus
/// the average and minimum over all C(n,2) pair scores.
struct ConsistencyReport {
  std::vector<ScannerId> scanners;
  std::vector<PairScore> pairs;  // upper triangle in scanner-list order
  double avg = 0.0;
  double min = 0.0;

  struct SampleRow {
    std::string sample_id;
    std::vector<double> pair_dice;  // same order as `pairs`
  };
  std::vector<SampleRow> per_sample;

  nlohmann::json to_json() const;
  /// Rows `scannerA,scannerB,score`, one per pair.
  std::string to_csv() const;
};

struct ProtocolOptions {
  bool soft = false;  // soft Dice between probability maps instead of hard masks
  int jobs = 1;
  bool predictor_thread_safe = true;  // when false, forces sequential
};

/// One paired sample already in memory: patches in manifest scanner order.
struct PairedPatches {
  std::string sample_id;
  std::vector<RasterImage> patches;
};

ConsistencyReport consistency_protocol(const std::vector<ScannerId>& scanners,
                                       const std::vector<PairedPatches>& samples,
                                       const Predictor& predictor,
                                       const ProtocolOptions& options = {});

/// Manifest-backed variant; every sample must carry all manifest scanners.
ConsistencyReport consistency_protocol(const DatasetManifest& manifest,
                                       const Predictor& predictor,
                                       const ProtocolOptions& options = {});

/// Mean macro Dice of hard predictions against ground truth.
double primary_dice(const std::vector<RasterImage>& images,
                    const std::vector<LabelMask>& truths,
                    const Predictor& predictor);

/// Manifest variant: scores every (sample, scanner) patch against the
/// sample's shared mask. Samples must carry "mask" entries.
double primary_dice(const DatasetManifest& manifest, int num_classes,
                    const Predictor& predictor);

}  // namespace scorpion::metrics
