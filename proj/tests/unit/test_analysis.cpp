#include <doctest.h>

#include <cmath>

#include "scorpion/analysis/projection.hpp"
#include "scorpion/analysis/stats.hpp"
#include "scorpion/core/image_io.hpp"
#include "scorpion/core/manifest.hpp"
#include "support/testutil.hpp"

using namespace scorpion;
using namespace scorpion::analysis;

TEST_CASE("patch stats basics") {
  SUBCASE("constant image: means c, stds 0") {
    StatVector s = compute_patch_stats(test::constant_image(4, 4, 0.3f, 0.3f, 0.3f));
    for (int c = 0; c < 3; ++c) {
      CHECK(s[c * 2] == doctest::Approx(0.3).epsilon(1e-6));
      CHECK(s[c * 2 + 1] == doctest::Approx(0.0));
    }
  }
  SUBCASE("0/1 checkerboard channel: mean 0.5, std 0.5") {
    RasterImage img(4, 4);
    for (int y = 0; y < 4; ++y)
      for (int x = 0; x < 4; ++x) img.at(x, y, 0) = float((x + y) % 2);
    StatVector s = compute_patch_stats(img);
    CHECK(s[0] == doctest::Approx(0.5));
    CHECK(s[1] == doctest::Approx(0.5));
  }
  SUBCASE("stats are permutation invariant") {
    Rng rng(1);
    RasterImage img = test::random_image(5, 5, rng);
    StatVector before = compute_patch_stats(img);
    // Reverse the pixel order (a permutation).
    RasterImage perm(5, 5);
    size_t n = img.pixel_count();
    for (size_t p = 0; p < n; ++p)
      for (int c = 0; c < 3; ++c) perm.data[p * 3 + c] = img.data[(n - 1 - p) * 3 + c];
    StatVector after = compute_patch_stats(perm);
    for (int i = 0; i < 6; ++i) CHECK(before[i] == doctest::Approx(after[i]).epsilon(1e-12));
  }
}

namespace {

std::vector<std::pair<std::string, std::vector<RasterImage>>> paired_fixture(
    int n_samples, int n_scanners, Rng& rng) {
  std::vector<std::pair<std::string, std::vector<RasterImage>>> samples;
  for (int i = 0; i < n_samples; ++i) {
    std::vector<RasterImage> patches;
    for (int s = 0; s < n_scanners; ++s) patches.push_back(test::random_image(6, 6, rng));
    samples.emplace_back("s" + std::to_string(i), std::move(patches));
  }
  return samples;
}

}  // namespace

TEST_CASE("unpaired analysis row counts") {
  Rng rng(2);
  std::vector<ScannerId> scanners{"A", "B", "C"};
  auto samples = paired_fixture(4, 3, rng);
  auto rows = unpaired_analysis(scanners, samples);
  CHECK(rows.size() == 12);  // samples x scanners

  auto empty_rows = unpaired_analysis(scanners, {});
  CHECK(empty_rows.empty());
}

TEST_CASE("paired analysis zeroes the reference and captures shifts") {
  std::vector<ScannerId> scanners{"A", "B"};

  SUBCASE("reference rows are exactly zero; identical patches give zero deviation") {
    Rng rng(3);
    RasterImage same = test::random_image(6, 6, rng);
    std::vector<std::pair<std::string, std::vector<RasterImage>>> samples{
        {"s0", {same, same}}};
    auto rows = paired_analysis(scanners, samples, "A");
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows)
      for (double d : r.delta) CHECK(d == 0.0);
  }

  SUBCASE("brightness shift on R shows up as delta r_mean") {
    Rng rng(4);
    RasterImage a = test::random_image(8, 8, rng);
    for (float& v : a.data) v = 0.2f + 0.5f * v;  // keep room for +0.1
    RasterImage b = a;
    for (size_t p = 0; p < b.pixel_count(); ++p) b.data[p * 3] += 0.1f;
    std::vector<std::pair<std::string, std::vector<RasterImage>>> samples{{"s0", {a, b}}};
    auto rows = paired_analysis(scanners, samples, "A");
    const auto& dev_b = rows[1];
    CHECK(dev_b.scanner == "B");
    CHECK(dev_b.delta[0] == doctest::Approx(0.1).epsilon(1e-4));
    CHECK(std::abs(dev_b.delta[1]) < 1e-6);  // std unchanged
    CHECK(std::abs(dev_b.delta[2]) < 1e-6);  // other channels unchanged
  }

  SUBCASE("missing reference is an error") {
    Rng rng(5);
    auto samples = paired_fixture(2, 2, rng);
    CHECK_THROWS_AS(paired_analysis(scanners, samples, "GHOST"), Error);
  }

  SUBCASE("re-referencing deviations to the reference is idempotent") {
    Rng rng(6);
    auto samples = paired_fixture(3, 2, rng);
    auto rows1 = paired_analysis(scanners, samples, "A");
    // Build "images" whose stats equal the deviations is not meaningful;
    // instead verify: deltas of reference-to-itself stay zero after a second
    // pass over the same data (pure function).
    auto rows2 = paired_analysis(scanners, samples, "A");
    REQUIRE(rows1.size() == rows2.size());
    for (size_t i = 0; i < rows1.size(); ++i)
      for (int k = 0; k < 6; ++k) CHECK(rows1[i].delta[k] == rows2[i].delta[k]);
  }
}

TEST_CASE("manifest-backed analysis matches the in-memory path") {
  test::TempDir dir("analysis");
  Rng rng(7);
  DatasetManifest m;
  m.scanners = {"A", "B"};
  m.patch_size = 6;
  m.micron_extent = 800.0;
  std::vector<std::pair<std::string, std::vector<RasterImage>>> samples;
  for (int i = 0; i < 3; ++i) {
    PairedSample s;
    s.sample_id = "s" + std::to_string(i);
    std::vector<RasterImage> patches;
    for (const auto& scanner : m.scanners) {
      // Byte-grid images so disk round trip is exact.
      RasterImage img(6, 6);
      for (float& v : img.data) v = float(rng.below(256)) / 255.0f;
      std::string rel = s.sample_id + "_" + scanner + ".ppm";
      save_image(img, dir / rel);
      s.patches[scanner] = rel;
      patches.push_back(img);
    }
    m.samples.push_back(s);
    samples.emplace_back(s.sample_id, std::move(patches));
  }
  save_manifest(m, dir / "m.json");
  DatasetManifest loaded = load_manifest(dir / "m.json");

  auto disk_rows = unpaired_analysis(loaded);
  auto mem_rows = unpaired_analysis(m.scanners, samples);
  REQUIRE(disk_rows.size() == mem_rows.size());
  for (size_t i = 0; i < disk_rows.size(); ++i)
    for (int k = 0; k < 6; ++k)
      CHECK(disk_rows[i].stats[k] == doctest::Approx(mem_rows[i].stats[k]).epsilon(1e-12));

  std::string csv = stats_to_csv(disk_rows);
  CHECK(csv.find("sample_id,scanner,r_mean") == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);  // header + 6 rows
}

TEST_CASE("PCA projection") {
  SUBCASE("collinear data has a vanishing second coordinate") {
    std::vector<StatVector> rows;
    for (int i = 0; i < 10; ++i) {
      double t = i * 0.1;
      rows.push_back({t, 2 * t, -t, 0.5 * t, t, 0});
    }
    auto pts = project_2d(rows);
    for (const auto& p : pts) CHECK(std::abs(p[1]) < 1e-9);
  }
  SUBCASE("duplicated rows project to duplicated points") {
    Rng rng(8);
    std::vector<StatVector> rows;
    for (int i = 0; i < 6; ++i) {
      StatVector v;
      for (auto& x : v) x = rng.uniform();
      rows.push_back(v);
    }
    std::vector<StatVector> doubled = rows;
    doubled.insert(doubled.end(), rows.begin(), rows.end());
    auto pts = project_2d(doubled);
    for (size_t i = 0; i < rows.size(); ++i) {
      CHECK(pts[i][0] == doctest::Approx(pts[i + rows.size()][0]).epsilon(1e-12));
      CHECK(pts[i][1] == doctest::Approx(pts[i + rows.size()][1]).epsilon(1e-12));
    }
  }
  SUBCASE("PCA beats random 2-D projections at preserving variance") {
    Rng rng(9);
    std::vector<StatVector> rows;
    for (int i = 0; i < 40; ++i) {
      StatVector v;
      for (int k = 0; k < 6; ++k) v[k] = rng.normal(0.0, 1.0 / (k + 1));
      rows.push_back(v);
    }
    auto pts = project_2d(rows);
    double kept_pca = 0.0;
    for (const auto& p : pts) kept_pca += p[0] * p[0] + p[1] * p[1];

    // Any random orthonormal pair keeps no more variance.
    for (int trial = 0; trial < 10; ++trial) {
      StatVector u{}, v{};
      for (int k = 0; k < 6; ++k) {
        u[k] = rng.normal();
        v[k] = rng.normal();
      }
      double nu = 0, uv = 0;
      for (int k = 0; k < 6; ++k) nu += u[k] * u[k];
      for (int k = 0; k < 6; ++k) u[k] /= std::sqrt(nu);
      for (int k = 0; k < 6; ++k) uv += u[k] * v[k];
      for (int k = 0; k < 6; ++k) v[k] -= uv * u[k];
      double nv = 0;
      for (int k = 0; k < 6; ++k) nv += v[k] * v[k];
      for (int k = 0; k < 6; ++k) v[k] /= std::sqrt(nv);

      StatVector mean{};
      for (const auto& r : rows)
        for (int k = 0; k < 6; ++k) mean[k] += r[k] / rows.size();
      double kept = 0.0;
      for (const auto& r : rows) {
        double a = 0, b = 0;
        for (int k = 0; k < 6; ++k) {
          a += (r[k] - mean[k]) * u[k];
          b += (r[k] - mean[k]) * v[k];
        }
        kept += a * a + b * b;
      }
      CHECK(kept <= kept_pca + 1e-9);
    }
  }
  SUBCASE("fewer than 2 rows is an error") {
    CHECK_THROWS_AS(project_2d({StatVector{}}), Error);
  }
}

TEST_CASE("silhouette separability") {
  Rng rng(10);

  SUBCASE("far-separated tight clusters score above 0.9") {
    std::vector<StatVector> pts;
    std::vector<ScannerId> groups;
    for (int i = 0; i < 20; ++i) {
      StatVector a{}, b{};
      for (int k = 0; k < 6; ++k) {
        a[k] = rng.normal(0.0, 0.05);
        b[k] = rng.normal(5.0, 0.05);
      }
      pts.push_back(a);
      groups.push_back("A");
      pts.push_back(b);
      groups.push_back("B");
    }
    CHECK(separability_score(pts, groups) > 0.9);
  }

  SUBCASE("identical distributions score near zero") {
    std::vector<StatVector> pts;
    std::vector<ScannerId> groups;
    for (int i = 0; i < 60; ++i) {
      StatVector v{};
      for (int k = 0; k < 6; ++k) v[k] = rng.normal(0.0, 1.0);
      pts.push_back(v);
      groups.push_back(i % 2 == 0 ? "A" : "B");
    }
    double s = separability_score(pts, groups);
    CHECK(std::abs(s) < 0.1);
  }

  SUBCASE("a single point per scanner is degenerate") {
    std::vector<StatVector> pts{{}, {}};
    std::vector<ScannerId> groups{"A", "B"};
    CHECK_THROWS_AS(separability_score(pts, groups), Error);
  }
}
