#include "scorpion/simcons/benchmark.hpp"

#include <cmath>

#include <json.hpp>

#include "scorpion/augment/colorspace.hpp"
#include "scorpion/core/fsutil.hpp"
#include "scorpion/core/image_io.hpp"
#include "scorpion/simcons/photometric.hpp"

namespace scorpion::simcons {
namespace {

using nlohmann::json;

// Class base colors in LAB, roughly H&E-like: light background, pink
// stroma, darker purple nuclei-dense tissue.
constexpr std::array<std::array<double, 3>, 3> kClassLab = {{
    {86.0, 6.0, -4.0},
    {62.0, 24.0, -10.0},
    {42.0, 26.0, -28.0},
}};

// Smooth scalar field: coarse Gaussian grid, bilinearly upsampled.
std::vector<double> smooth_field(int size, int cell, Rng& rng) {
  int grid = size / cell + 2;
  std::vector<double> coarse(static_cast<size_t>(grid) * grid);
  for (double& v : coarse) v = rng.normal();
  std::vector<double> field(static_cast<size_t>(size) * size);
  for (int y = 0; y < size; ++y) {
    double gy = static_cast<double>(y) / cell;
    int y0 = static_cast<int>(gy);
    double fy = gy - y0;
    for (int x = 0; x < size; ++x) {
      double gx = static_cast<double>(x) / cell;
      int x0 = static_cast<int>(gx);
      double fx = gx - x0;
      double top = coarse[static_cast<size_t>(y0) * grid + x0] * (1 - fx) +
                   coarse[static_cast<size_t>(y0) * grid + x0 + 1] * fx;
      double bot = coarse[static_cast<size_t>(y0 + 1) * grid + x0] * (1 - fx) +
                   coarse[static_cast<size_t>(y0 + 1) * grid + x0 + 1] * fx;
      field[static_cast<size_t>(y) * size + x] = top * (1 - fy) + bot * fy;
    }
  }
  return field;
}

TrainingSample generate_tissue(const BenchmarkParams& p, Rng& rng) {
  int size = p.patch_size;
  int cell = std::max(4, static_cast<int>(size / (5.0 * p.tissue_complexity)));
  std::vector<std::vector<double>> fields;
  for (int c = 0; c < p.num_classes; ++c) fields.push_back(smooth_field(size, cell, rng));

  TrainingSample out;
  out.label = LabelMask(size, size, p.num_classes);
  out.image = RasterImage(size, size);

  // Per-sample stain jitter: the tissue-level style variance.
  double jl = rng.normal(0.0, p.stain_jitter);
  double ja = rng.normal(0.0, 0.6 * p.stain_jitter);
  double jb = rng.normal(0.0, 0.6 * p.stain_jitter);

  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      size_t i = static_cast<size_t>(y) * size + x;
      int best = 0;
      for (int c = 1; c < p.num_classes; ++c)
        if (fields[c][i] > fields[best][i]) best = c;
      out.label.labels[i] = static_cast<uint8_t>(best);
      const auto& base = kClassLab[static_cast<size_t>(best) % kClassLab.size()];
      double L = base[0] + jl + 4.0 * fields[best][i] + rng.normal(0.0, 1.2);
      double a = base[1] + ja + 1.5 * fields[best][i] + rng.normal(0.0, 0.8);
      double b = base[2] + jb + rng.normal(0.0, 0.8);
      auto rgb = augment::lab_to_rgb(L, a, b);
      for (int c = 0; c < 3; ++c) out.image.data[i * 3 + c] = static_cast<float>(rgb[c]);
    }
  }
  // Soft tissue edges; labels stay crisp.
  out.image = gaussian_blur(out.image, 0.5);
  return out;
}

}  // namespace

RasterImage apply_scanner(const RasterImage& img, const ScannerSim& sim, Rng& rng) {
  // L contrast pivots on the image's own mean so the transform stays
  // label-preserving (purely photometric).
  std::vector<std::array<double, 3>> lab(img.pixel_count());
  double mean_l = 0.0;
  for (size_t i = 0; i < img.pixel_count(); ++i) {
    lab[i] = augment::rgb_to_lab(img.data[i * 3], img.data[i * 3 + 1], img.data[i * 3 + 2]);
    mean_l += lab[i][0];
  }
  mean_l /= static_cast<double>(img.pixel_count());

  RasterImage out(img.width, img.height);
  for (size_t i = 0; i < img.pixel_count(); ++i) {
    double L = mean_l + sim.contrast * (lab[i][0] - mean_l) + sim.lab_shift[0];
    double a = lab[i][1] + sim.lab_shift[1];
    double b = lab[i][2] + sim.lab_shift[2];
    auto rgb = augment::lab_to_rgb(L, a, b);
    for (int c = 0; c < 3; ++c) out.data[i * 3 + c] = static_cast<float>(rgb[c]);
  }
  if (sim.noise_sigma > 0.0) out = add_gaussian_noise(out, sim.noise_sigma, rng);
  return out;
}

SyntheticBenchmark make_synthetic_benchmark(const BenchmarkParams& params) {
  require(params.scanners >= 2, ErrorKind::InvalidArgument,
          "benchmark needs at least 2 virtual scanners");
  require(params.n_train > 0 && params.n_val > 0 && params.n_eval > 0,
          ErrorKind::InvalidArgument, "benchmark set sizes must be positive");

  SyntheticBenchmark bench;
  bench.params = params;
  Rng rng(params.seed);

  Rng sim_rng = rng.child(1);
  bench.scanners.push_back("S0");
  bench.sims.push_back(ScannerSim{});  // identity reference
  for (int s = 1; s < params.scanners; ++s) {
    bench.scanners.push_back("S" + std::to_string(s));
    ScannerSim sim;
    // Alternating L direction keeps the virtual scanners well apart.
    double sign = (s % 2 == 1) ? 1.0 : -1.0;
    sim.lab_shift[0] = params.scanner_strength * sign * sim_rng.uniform(3.5, 6.5);
    sim.lab_shift[1] = params.scanner_strength * sim_rng.uniform(-4.0, 4.0);
    sim.lab_shift[2] = params.scanner_strength * sim_rng.uniform(-4.0, 4.0);
    sim.contrast = 1.0 + params.scanner_strength * sim_rng.uniform(-0.12, 0.12);
    sim.noise_sigma = sim_rng.uniform(0.004, 0.012);
    bench.sims.push_back(sim);
  }

  Rng train_rng = rng.child(2);
  for (int i = 0; i < params.n_train; ++i)
    bench.train.push_back(generate_tissue(params, train_rng));
  Rng val_rng = rng.child(3);
  for (int i = 0; i < params.n_val; ++i)
    bench.val.push_back(generate_tissue(params, val_rng));

  Rng eval_rng = rng.child(4);
  for (int i = 0; i < params.n_eval; ++i) {
    TrainingSample tissue = generate_tissue(params, eval_rng);
    PairedEvalSample sample;
    char id[32];
    std::snprintf(id, sizeof id, "eval_%03d", i);
    sample.sample_id = id;
    sample.mask = tissue.label;
    for (int s = 0; s < params.scanners; ++s)
      sample.patches.push_back(apply_scanner(tissue.image, bench.sims[s], eval_rng));
    bench.eval.push_back(std::move(sample));
  }
  return bench;
}

void save_benchmark(const SyntheticBenchmark& bench, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "train");
  fs::create_directories(dir / "val");
  fs::create_directories(dir / "eval");

  auto save_labeled = [&](const std::vector<TrainingSample>& set, const std::string& name) {
    LabeledSet manifest;
    manifest.base_dir = dir;
    for (size_t i = 0; i < set.size(); ++i) {
      char id[32];
      std::snprintf(id, sizeof id, "%s_%03zu", name.c_str(), i);
      std::string image_rel = name + "/" + id + ".png";
      std::string mask_rel = name + "/" + id + ".pgm";
      save_image(set[i].image, dir / image_rel);
      save_mask(set[i].label, dir / mask_rel);
      manifest.records.push_back({id, image_rel, mask_rel});
    }
    save_labeled_set(manifest, dir / (name + ".json"));
  };
  save_labeled(bench.train, "train");
  save_labeled(bench.val, "val");

  DatasetManifest eval;
  eval.scanners = bench.scanners;
  eval.patch_size = bench.params.patch_size;
  eval.micron_extent = 0.0;
  for (const auto& sample : bench.eval) {
    PairedSample s;
    s.sample_id = sample.sample_id;
    std::string mask_rel = "eval/" + sample.sample_id + ".pgm";
    save_mask(sample.mask, dir / mask_rel);
    s.mask = mask_rel;
    for (size_t i = 0; i < bench.scanners.size(); ++i) {
      std::string rel = "eval/" + sample.sample_id + "_" + bench.scanners[i] + ".png";
      save_image(sample.patches[i], dir / rel);
      s.patches[bench.scanners[i]] = rel;
    }
    eval.samples.push_back(std::move(s));
  }
  save_manifest(eval, dir / "eval.json");

  json j;
  j["params"] = {{"seed", bench.params.seed},
                 {"n_train", bench.params.n_train},
                 {"n_val", bench.params.n_val},
                 {"n_eval", bench.params.n_eval},
                 {"scanners", bench.params.scanners},
                 {"patch_size", bench.params.patch_size},
                 {"num_classes", bench.params.num_classes},
                 {"tissue_complexity", bench.params.tissue_complexity},
                 {"stain_jitter", bench.params.stain_jitter},
                 {"scanner_strength", bench.params.scanner_strength}};
  j["scanners"] = json::array();
  for (size_t i = 0; i < bench.scanners.size(); ++i) {
    const auto& sim = bench.sims[i];
    j["scanners"].push_back({{"id", bench.scanners[i]},
                             {"lab_shift", sim.lab_shift},
                             {"contrast", sim.contrast},
                             {"noise_sigma", sim.noise_sigma}});
  }
  atomic_write_bytes(dir / "scanners.json", j.dump(2) + "\n");
}

SyntheticBenchmark load_benchmark(const std::filesystem::path& dir) {
  SyntheticBenchmark bench;
  json j = json::parse(read_file_bytes(dir / "scanners.json"));
  const auto& p = j.at("params");
  bench.params.seed = p.at("seed").get<uint64_t>();
  bench.params.n_train = p.at("n_train").get<int>();
  bench.params.n_val = p.at("n_val").get<int>();
  bench.params.n_eval = p.at("n_eval").get<int>();
  bench.params.scanners = p.at("scanners").get<int>();
  bench.params.patch_size = p.at("patch_size").get<int>();
  bench.params.num_classes = p.at("num_classes").get<int>();
  bench.params.tissue_complexity = p.at("tissue_complexity").get<double>();
  bench.params.stain_jitter = p.at("stain_jitter").get<double>();
  bench.params.scanner_strength = p.at("scanner_strength").get<double>();
  for (const auto& js : j.at("scanners")) {
    bench.scanners.push_back(js.at("id").get<std::string>());
    ScannerSim sim;
    auto shift = js.at("lab_shift").get<std::vector<double>>();
    require(shift.size() == 3, ErrorKind::SchemaViolation, "lab_shift must hold 3 values");
    sim.lab_shift = {shift[0], shift[1], shift[2]};
    sim.contrast = js.at("contrast").get<double>();
    sim.noise_sigma = js.at("noise_sigma").get<double>();
    bench.sims.push_back(sim);
  }

  auto load_labeled = [&](const std::string& name) {
    std::vector<TrainingSample> set;
    LabeledSet manifest = load_labeled_set(dir / (name + ".json"));
    for (const auto& r : manifest.records) {
      TrainingSample s;
      s.image = load_image(manifest.base_dir / r.image);
      s.label = load_mask(manifest.base_dir / r.mask, bench.params.num_classes);
      set.push_back(std::move(s));
    }
    return set;
  };
  bench.train = load_labeled("train");
  bench.val = load_labeled("val");

  DatasetManifest eval = load_manifest(dir / "eval.json");
  for (const auto& s : eval.samples) {
    PairedEvalSample sample;
    sample.sample_id = s.sample_id;
    require(s.mask.has_value(), ErrorKind::SchemaViolation,
            "benchmark eval sample '" + s.sample_id + "' has no mask");
    sample.mask = load_mask(eval.resolve(*s.mask), bench.params.num_classes);
    for (const auto& scanner : eval.scanners)
      sample.patches.push_back(load_image(eval.resolve(s.patches.at(scanner))));
    bench.eval.push_back(std::move(sample));
  }
  return bench;
}

}  // namespace scorpion::simcons
