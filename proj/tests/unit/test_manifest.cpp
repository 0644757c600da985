#include <doctest.h>

#include <fstream>

#include <json.hpp>

#include "scorpion/core/fsutil.hpp"
#include "scorpion/core/image_io.hpp"
#include "scorpion/core/manifest.hpp"
#include "scorpion/core/rng.hpp"
#include "support/testutil.hpp"

using namespace scorpion;
using test::TempDir;

namespace {

// Writes a manifest with `n_scanners` x `n_samples` tiny patch files on disk.
DatasetManifest make_dataset(const TempDir& dir, int n_scanners, int n_samples) {
  DatasetManifest m;
  for (int s = 0; s < n_scanners; ++s) m.scanners.push_back("S" + std::to_string(s));
  m.patch_size = 4;
  m.micron_extent = 800.0;
  Rng rng(1);
  for (int i = 0; i < n_samples; ++i) {
    PairedSample sample;
    sample.sample_id = "sample_" + std::to_string(i);
    sample.region_origin = {double(i), double(2 * i)};
    for (const auto& scanner : m.scanners) {
      std::string rel = sample.sample_id + "_" + scanner + ".ppm";
      save_image(test::random_image(4, 4, rng), dir / rel);
      sample.patches[scanner] = rel;
    }
    m.samples.push_back(sample);
  }
  return m;
}

}  // namespace

TEST_CASE("manifest save-load is identity on the data model") {
  TempDir dir("mani");
  DatasetManifest m = make_dataset(dir, 3, 4);
  save_manifest(m, dir / "m.json");
  DatasetManifest back = load_manifest(dir / "m.json");
  CHECK(back == m);
}

TEST_CASE("a 5-scanner 480-sample manifest loads 480 paired samples") {
  TempDir dir("big");
  // Patch files reused across samples to keep the fixture light.
  DatasetManifest m;
  m.scanners = {"AT2", "GT450", "DP200", "P1000", "B300"};
  m.patch_size = 8;
  m.micron_extent = 800.0;
  Rng rng(2);
  for (const auto& s : m.scanners)
    save_image(test::random_image(8, 8, rng), dir / (s + ".ppm"));
  for (int i = 0; i < 480; ++i) {
    PairedSample sample;
    sample.sample_id = "r" + std::to_string(i);
    for (const auto& s : m.scanners) sample.patches[s] = s + ".ppm";
    m.samples.push_back(sample);
  }
  save_manifest(m, dir / "m.json");
  DatasetManifest back = load_manifest(dir / "m.json");
  CHECK(back.samples.size() == 480);
  CHECK(back.scanners.size() == 5);
}

TEST_CASE("unknown scanner id in a sample is a schema error") {
  TempDir dir("bad");
  DatasetManifest m = make_dataset(dir, 2, 1);
  save_manifest(m, dir / "m.json");
  std::string text = read_file_bytes(dir / "m.json");
  auto j = nlohmann::json::parse(text);
  j["samples"][0]["patches"]["GHOST"] = j["samples"][0]["patches"]["S0"];
  atomic_write_bytes(dir / "m.json", j.dump());
  try {
    load_manifest(dir / "m.json");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SchemaViolation);
    CHECK(std::string(e.what()).find("GHOST") != std::string::npos);
  }
}

TEST_CASE("empty samples list is a valid manifest") {
  TempDir dir("empty");
  DatasetManifest m;
  m.scanners = {"A", "B"};
  m.patch_size = 16;
  m.micron_extent = 800.0;
  save_manifest(m, dir / "m.json");
  DatasetManifest back = load_manifest(dir / "m.json");
  CHECK(back.samples.empty());
}

TEST_CASE("dimension mismatch inside a sample is rejected") {
  TempDir dir("dims");
  Rng rng(3);
  save_image(test::random_image(4, 4, rng), dir / "a.ppm");
  save_image(test::random_image(5, 4, rng), dir / "b.ppm");
  nlohmann::json j = {
      {"scanners", {"A", "B"}},
      {"patch_size", 4},
      {"micron_extent", 800.0},
      {"samples",
       {{{"sample_id", "s"},
         {"region_origin", {0.0, 0.0}},
         {"patches", {{"A", "a.ppm"}, {"B", "b.ppm"}}}}}}};
  atomic_write_bytes(dir / "m.json", j.dump());
  try {
    load_manifest(dir / "m.json");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("schema errors name the offending field") {
  TempDir dir("field");
  nlohmann::json j = {{"scanners", {"A", "B"}}, {"micron_extent", 1.0}, {"samples", nlohmann::json::array()}};
  atomic_write_bytes(dir / "m.json", j.dump());
  try {
    load_manifest(dir / "m.json");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("patch_size") != std::string::npos);
  }
}

TEST_CASE("labeled set round trip") {
  TempDir dir("lab");
  LabeledSet set;
  set.records = {{"s0", "img0.ppm", "m0.pgm"}, {"s1", "img1.ppm", "m1.pgm"}};
  save_labeled_set(set, dir / "train.json");
  LabeledSet back = load_labeled_set(dir / "train.json");
  REQUIRE(back.records.size() == 2);
  CHECK(back.records[1].sample_id == "s1");
  CHECK(back.records[1].image == "img1.ppm");
  CHECK(back.records[1].mask == "m1.pgm");
}

TEST_CASE("atomic write leaves no file behind on failure") {
  TempDir dir("atomic");
  std::filesystem::path missing_dir = dir / "nonexistent" / "out.txt";
  CHECK_THROWS_AS(atomic_write_bytes(missing_dir, "data"), Error);
  CHECK(!std::filesystem::exists(missing_dir));

  // Success path replaces content wholesale.
  atomic_write_bytes(dir / "f.txt", "first");
  atomic_write_bytes(dir / "f.txt", "second");
  CHECK(read_file_bytes(dir / "f.txt") == "second");
  CHECK(!std::filesystem::exists(dir / "f.txt.tmp"));
}
