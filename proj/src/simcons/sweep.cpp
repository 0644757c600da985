#include "scorpion/simcons/sweep.hpp"

#include <cmath>

#include "scorpion/core/fsutil.hpp"
#include "scorpion/core/parallel.hpp"

namespace scorpion::simcons {
namespace {

double sample_std(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

}  // namespace

SweepCell evaluate_on_benchmark(const Segmenter& model,
                                const SyntheticBenchmark& benchmark) {
  metrics::Predictor predictor = [&model](const RasterImage& img) {
    return model.forward(img);
  };

  std::vector<metrics::PairedPatches> paired;
  std::vector<RasterImage> images;
  std::vector<LabelMask> truths;
  for (const auto& s : benchmark.eval) {
    paired.push_back({s.sample_id, s.patches});
    for (const auto& patch : s.patches) {
      images.push_back(patch);
      truths.push_back(s.mask);
    }
  }
  metrics::ConsistencyReport report =
      metrics::consistency_protocol(benchmark.scanners, paired, predictor);

  SweepCell cell;
  cell.consistency_avg = report.avg;
  cell.consistency_min = report.min;
  cell.primary_dice = metrics::primary_dice(images, truths, predictor);
  return cell;
}

SweepResult lambda_sweep(const SimConsConfig& base, const std::vector<double>& lambdas,
                         const SyntheticBenchmark& benchmark, int n_seeds, int jobs) {
  require(!lambdas.empty(), ErrorKind::InvalidArgument, "lambda list is empty");
  require(n_seeds >= 1, ErrorKind::InvalidArgument, "need at least 1 seed");

  SweepResult result;
  result.cells.resize(lambdas.size() * static_cast<size_t>(n_seeds));

  for_each_index(result.cells.size(), jobs, [&](size_t idx) {
    size_t li = idx / static_cast<size_t>(n_seeds);
    size_t si = idx % static_cast<size_t>(n_seeds);
    SimConsConfig config = base;
    config.lambda = lambdas[li];
    // Seeds pair across lambdas: same repeat index, same training stream.
    config.seed = Rng(base.seed).child(si + 1).seed();
    TrainResult trained = train(config, benchmark.train, benchmark.val);
    SweepCell cell = evaluate_on_benchmark(trained.model, benchmark);
    cell.lambda = lambdas[li];
    cell.seed = config.seed;
    result.cells[idx] = cell;
  });

  for (size_t li = 0; li < lambdas.size(); ++li) {
    std::vector<double> avgs, mins, prims;
    for (int si = 0; si < n_seeds; ++si) {
      const SweepCell& c = result.cells[li * static_cast<size_t>(n_seeds) + si];
      avgs.push_back(c.consistency_avg);
      mins.push_back(c.consistency_min);
      prims.push_back(c.primary_dice);
    }
    SweepRow row;
    row.lambda = lambdas[li];
    auto mean = [](const std::vector<double>& xs) {
      double s = 0.0;
      for (double x : xs) s += x;
      return s / static_cast<double>(xs.size());
    };
    row.consistency_avg_mean = mean(avgs);
    row.consistency_avg_std = sample_std(avgs, row.consistency_avg_mean);
    row.consistency_min_mean = mean(mins);
    row.consistency_min_std = sample_std(mins, row.consistency_min_mean);
    row.primary_mean = mean(prims);
    row.primary_std = sample_std(prims, row.primary_mean);
    result.rows.push_back(row);
  }
  return result;
}

std::string sweep_to_csv(const SweepResult& result) {
  std::string csv =
      "lambda,consistency_avg_mean,consistency_avg_std,consistency_min_mean,"
      "consistency_min_std,primary_dice_mean,primary_dice_std\n";
  for (const auto& r : result.rows) {
    csv += format_double(r.lambda) + "," + format_double(r.consistency_avg_mean) + "," +
           format_double(r.consistency_avg_std) + "," +
           format_double(r.consistency_min_mean) + "," +
           format_double(r.consistency_min_std) + "," + format_double(r.primary_mean) +
           "," + format_double(r.primary_std) + "\n";
  }
  return csv;
}

}  // namespace scorpion::simcons
