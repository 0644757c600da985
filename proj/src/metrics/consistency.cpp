#include "scorpion/metrics/consistency.hpp"

#include <limits>

#include "scorpion/core/fsutil.hpp"
#include "scorpion/core/image_io.hpp"
#include "scorpion/core/parallel.hpp"

namespace scorpion::metrics {

nlohmann::json ConsistencyReport::to_json() const {
  nlohmann::json j;
  j["scanners"] = scanners;
  j["pairs"] = nlohmann::json::array();
  for (const auto& p : pairs)
    j["pairs"].push_back({{"a", p.a}, {"b", p.b}, {"score", p.score}});
  j["avg"] = avg;
  j["min"] = min;
  j["per_sample"] = nlohmann::json::array();
  for (const auto& row : per_sample)
    j["per_sample"].push_back({{"sample_id", row.sample_id}, {"pair_dice", row.pair_dice}});
  return j;
}

std::string ConsistencyReport::to_csv() const {
  std::string csv = "scannerA,scannerB,score\n";
  for (const auto& p : pairs)
    csv += p.a + "," + p.b + "," + format_double(p.score) + "\n";
  return csv;
}

ConsistencyReport consistency_protocol(const std::vector<ScannerId>& scanners,
                                       const std::vector<PairedPatches>& samples,
                                       const Predictor& predictor,
                                       const ProtocolOptions& options) {
  size_t n_scanners = scanners.size();
  require(n_scanners >= 2, ErrorKind::InvalidArgument,
          "consistency protocol needs at least 2 scanners");
  require(!samples.empty(), ErrorKind::InvalidArgument,
          "consistency protocol needs at least 1 sample");
  for (const auto& s : samples)
    require(s.patches.size() == n_scanners, ErrorKind::DimensionMismatch,
            "sample '" + s.sample_id + "' is missing scanner patches");

  ConsistencyReport report;
  report.scanners = scanners;
  for (size_t i = 0; i < n_scanners; ++i)
    for (size_t j = i + 1; j < n_scanners; ++j)
      report.pairs.push_back({scanners[i], scanners[j], 0.0});

  // One prediction per patch, reused across all pairs it participates in.
  int jobs = options.predictor_thread_safe ? options.jobs : 1;
  report.per_sample.resize(samples.size());
  for_each_index(samples.size(), jobs, [&](size_t si) {
    const auto& sample = samples[si];
    std::vector<ProbMap> probs(n_scanners);
    std::vector<LabelMask> masks(n_scanners);
    for (size_t s = 0; s < n_scanners; ++s) {
      probs[s] = predictor(sample.patches[s]);
      require(probs[s].width == sample.patches[s].width &&
                  probs[s].height == sample.patches[s].height,
              ErrorKind::DimensionMismatch,
              "predictor output size mismatch on sample '" + sample.sample_id + "'");
      if (!options.soft) masks[s] = hard_mask(probs[s]);
    }
    ConsistencyReport::SampleRow row;
    row.sample_id = sample.sample_id;
    for (size_t i = 0; i < n_scanners; ++i) {
      for (size_t j = i + 1; j < n_scanners; ++j) {
        DiceScore d = options.soft ? soft_dice(probs[i], probs[j]) : dice(masks[i], masks[j]);
        row.pair_dice.push_back(d.macro);
      }
    }
    report.per_sample[si] = std::move(row);
  });

  // Pair score: per-sample macro Dice averaged with equal sample weight.
  for (size_t p = 0; p < report.pairs.size(); ++p) {
    double sum = 0.0;
    for (const auto& row : report.per_sample) sum += row.pair_dice[p];
    report.pairs[p].score = sum / static_cast<double>(report.per_sample.size());
  }
  double sum = 0.0;
  double min = std::numeric_limits<double>::infinity();
  for (const auto& p : report.pairs) {
    sum += p.score;
    min = std::min(min, p.score);
  }
  report.avg = sum / static_cast<double>(report.pairs.size());
  report.min = min;
  return report;
}

ConsistencyReport consistency_protocol(const DatasetManifest& manifest,
                                       const Predictor& predictor,
                                       const ProtocolOptions& options) {
  std::vector<PairedPatches> samples;
  samples.reserve(manifest.samples.size());
  for (const auto& s : manifest.samples) {
    PairedPatches pp;
    pp.sample_id = s.sample_id;
    for (const auto& scanner : manifest.scanners) {
      auto it = s.patches.find(scanner);
      require(it != s.patches.end(), ErrorKind::SchemaViolation,
              "sample '" + s.sample_id + "' has no patch for scanner '" + scanner + "'");
      pp.patches.push_back(load_image(manifest.resolve(it->second)));
    }
    samples.push_back(std::move(pp));
  }
  return consistency_protocol(manifest.scanners, samples, predictor, options);
}

double primary_dice(const std::vector<RasterImage>& images,
                    const std::vector<LabelMask>& truths,
                    const Predictor& predictor) {
  require(images.size() == truths.size() && !images.empty(),
          ErrorKind::InvalidArgument, "primary_dice: empty or mismatched sets");
  double sum = 0.0;
  for (size_t i = 0; i < images.size(); ++i) {
    ProbMap p = predictor(images[i]);
    sum += dice(hard_mask(p), truths[i]).macro;
  }
  return sum / static_cast<double>(images.size());
}

double primary_dice(const DatasetManifest& manifest, int num_classes,
                    const Predictor& predictor) {
  std::vector<RasterImage> images;
  std::vector<LabelMask> truths;
  for (const auto& s : manifest.samples) {
    require(s.mask.has_value(), ErrorKind::SchemaViolation,
            "sample '" + s.sample_id + "' carries no ground-truth mask");
    LabelMask truth = load_mask(manifest.resolve(*s.mask), num_classes);
    for (const auto& [scanner, rel] : s.patches) {
      images.push_back(load_image(manifest.resolve(rel)));
      truths.push_back(truth);
    }
  }
  return primary_dice(images, truths, predictor);
}

}  // namespace scorpion::metrics
