#include <doctest.h>

#include "scorpion/metrics/consistency.hpp"
#include "scorpion/metrics/dice.hpp"
#include "support/oracles.hpp"
#include "support/testutil.hpp"

using namespace scorpion;
using namespace scorpion::metrics;

TEST_CASE("identical masks score 1.0 everywhere") {
  Rng rng(1);
  LabelMask m = test::random_mask(8, 8, 3, rng);
  DiceScore d = dice(m, m);
  for (const auto& c : d.per_class)
    if (c) CHECK(*c == 1.0);
  CHECK(d.macro == 1.0);
}

TEST_CASE("binary masks with support 4, 4 and overlap 2 give dice 0.5") {
  LabelMask a(4, 2, 2), b(4, 2, 2);
  // a: class 1 on pixels 0..3; b: class 1 on pixels 2..5 -> overlap {2,3}
  for (int i = 0; i < 4; ++i) a.labels[i] = 1;
  for (int i = 2; i < 6; ++i) b.labels[i] = 1;
  DiceScore d = dice(a, b);
  CHECK(*d.per_class[1] == 0.5);
  auto oracle = test::brute_dice(a, b);
  CHECK(d.macro == oracle.macro);
}

TEST_CASE("class absent from both masks is excluded from the macro") {
  LabelMask a(2, 2, 3), b(2, 2, 3);
  a.labels = {0, 0, 1, 1};
  b.labels = {0, 1, 1, 0};
  DiceScore d = dice(a, b);
  CHECK(!d.per_class[2].has_value());
  // class 0: |a|=2,|b|=2,inter=1 -> 0.5 ; class 1: same -> 0.5
  CHECK(d.macro == doctest::Approx(0.5));
}

TEST_CASE("dice matches the brute-force oracle on fuzzed masks") {
  Rng rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    int w = 1 + rng.below(16);
    int h = 1 + rng.below(16);
    int k = 2 + rng.below(3);
    LabelMask a = test::random_mask(w, h, k, rng);
    LabelMask b = test::random_mask(w, h, k, rng);
    DiceScore d = dice(a, b);
    auto oracle = test::brute_dice(a, b);
    REQUIRE(d.per_class.size() == oracle.per_class.size());
    for (size_t c = 0; c < d.per_class.size(); ++c) {
      REQUIRE(d.per_class[c].has_value() == oracle.per_class[c].has_value());
      if (d.per_class[c]) REQUIRE(*d.per_class[c] == *oracle.per_class[c]);
    }
    REQUIRE(d.macro == oracle.macro);
  }
}

TEST_CASE("dice is symmetric") {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    LabelMask a = test::random_mask(7, 5, 3, rng);
    LabelMask b = test::random_mask(7, 5, 3, rng);
    DiceScore ab = dice(a, b);
    DiceScore ba = dice(b, a);
    CHECK(ab.macro == ba.macro);
  }
}

TEST_CASE("dice rejects shape and K mismatches") {
  LabelMask a(4, 4, 3), b(4, 5, 3), c(4, 4, 2);
  CHECK_THROWS_AS(dice(a, b), Error);
  CHECK_THROWS_AS(dice(a, c), Error);
}

TEST_CASE("hard_mask takes the argmax with low-index tie breaking") {
  SUBCASE("one-hot maps decode to the encoded mask") {
    Rng rng(3);
    LabelMask m = test::random_mask(6, 4, 3, rng);
    CHECK(hard_mask(one_hot(m)).labels == m.labels);
  }
  SUBCASE("uniform probabilities pick class 0") {
    ProbMap p(3, 3, 4);
    for (float& v : p.data) v = 0.25f;
    LabelMask m = hard_mask(p);
    for (uint8_t v : m.labels) CHECK(v == 0);
  }
  SUBCASE("0.49 vs 0.51 picks class 1") {
    ProbMap p(2, 2, 2);
    for (size_t i = 0; i < 4; ++i) {
      p.data[i * 2 + 0] = 0.49f;
      p.data[i * 2 + 1] = 0.51f;
    }
    for (uint8_t v : hard_mask(p).labels) CHECK(v == 1);
  }
}

namespace {

Predictor constant_predictor(int k) {
  return [k](const RasterImage& img) {
    ProbMap p(img.width, img.height, k);
    for (size_t i = 0; i < static_cast<size_t>(img.width) * img.height; ++i) {
      p.data[i * k] = 1.0f;
      for (int c = 1; c < k; ++c) p.data[i * k + c] = 0.0f;
    }
    return p;
  };
}

std::vector<PairedPatches> make_paired(int n_samples, int n_scanners, int size, Rng& rng) {
  std::vector<PairedPatches> out;
  for (int i = 0; i < n_samples; ++i) {
    PairedPatches pp;
    pp.sample_id = "s" + std::to_string(i);
    for (int s = 0; s < n_scanners; ++s)
      pp.patches.push_back(test::random_image(size, size, rng));
    out.push_back(std::move(pp));
  }
  return out;
}

}  // namespace

TEST_CASE("5 scanners produce exactly 10 pair scores") {
  Rng rng(5);
  std::vector<ScannerId> scanners{"AT2", "GT450", "DP200", "P1000", "B300"};
  auto samples = make_paired(2, 5, 8, rng);
  ConsistencyReport r = consistency_protocol(scanners, samples, constant_predictor(3));
  CHECK(r.pairs.size() == 10);
  CHECK(r.avg == 1.0);
  CHECK(r.min == 1.0);
}

TEST_CASE("hand-built predictions with dice 0.5 give avg == min == 0.5") {
  // 2 scanners, 1 sample; prediction depends on the patch content so the two
  // scanners receive different masks with known overlap.
  std::vector<ScannerId> scanners{"A", "B"};
  PairedPatches pp;
  pp.sample_id = "s";
  RasterImage xa(4, 2, 0.0f);
  RasterImage xb(4, 2, 1.0f);
  pp.patches = {xa, xb};
  // Predictor: black image -> class 1 on pixels 0..3; white -> class 1 on 2..5.
  Predictor pred = [](const RasterImage& img) {
    ProbMap p(img.width, img.height, 2);
    bool white = img.data[0] > 0.5f;
    for (int i = 0; i < 8; ++i) {
      bool one = white ? (i >= 2 && i < 6) : (i < 4);
      p.data[i * 2 + (one ? 1 : 0)] = 1.0f;
    }
    return p;
  };
  ConsistencyReport r = consistency_protocol(scanners, {pp}, pred);
  CHECK(r.pairs.size() == 1);
  CHECK(r.avg == doctest::Approx(0.5));
  CHECK(r.min == doctest::Approx(0.5));
}

TEST_CASE("min <= avg on fuzzed reports and scanner order does not matter") {
  Rng rng(9);
  for (int trial = 0; trial < 25; ++trial) {
    int n_scanners = 2 + rng.below(4);
    std::vector<ScannerId> scanners;
    for (int s = 0; s < n_scanners; ++s) scanners.push_back("S" + std::to_string(s));
    auto samples = make_paired(1 + rng.below(3), n_scanners, 6, rng);
    uint64_t pseed = rng.next_u64();
    Predictor noisy = [pseed](const RasterImage& img) {
      // Deterministic pseudo-random prediction keyed by image content.
      ProbMap p(img.width, img.height, 3);
      uint64_t h = pseed;
      for (float v : img.data) h = h * 31 + static_cast<uint64_t>(v * 255.0f);
      Rng r(h);
      for (size_t i = 0; i < static_cast<size_t>(img.width) * img.height; ++i) {
        int c = r.below(3);
        p.data[i * 3 + c] = 1.0f;
      }
      return p;
    };
    ConsistencyReport r = consistency_protocol(scanners, samples, noisy);
    REQUIRE(r.min <= r.avg + 1e-12);
    REQUIRE(r.avg <= 1.0 + 1e-12);

    // Permuting scanners (and patches in lockstep) leaves aggregates unchanged.
    std::vector<size_t> perm(n_scanners);
    for (int i = 0; i < n_scanners; ++i) perm[i] = i;
    rng.shuffle(perm);
    std::vector<ScannerId> scanners2;
    for (size_t i : perm) scanners2.push_back(scanners[i]);
    auto samples2 = samples;
    for (auto& s : samples2) {
      std::vector<RasterImage> reordered;
      for (size_t i : perm) reordered.push_back(s.patches[i]);
      s.patches = std::move(reordered);
    }
    ConsistencyReport r2 = consistency_protocol(scanners2, samples2, noisy);
    REQUIRE(r2.avg == doctest::Approx(r.avg).epsilon(1e-12));
    REQUIRE(r2.min == doctest::Approx(r.min).epsilon(1e-12));
  }
}

TEST_CASE("parallel protocol matches sequential bit for bit") {
  Rng rng(21);
  std::vector<ScannerId> scanners{"A", "B", "C"};
  auto samples = make_paired(6, 3, 8, rng);
  Predictor pred = [](const RasterImage& img) {
    ProbMap p(img.width, img.height, 2);
    for (size_t i = 0; i < static_cast<size_t>(img.width) * img.height; ++i) {
      float v = img.data[i * 3];
      p.data[i * 2 + (v > 0.5f ? 1 : 0)] = 1.0f;
    }
    return p;
  };
  ConsistencyReport seq = consistency_protocol(scanners, samples, pred, {.jobs = 1});
  ConsistencyReport par = consistency_protocol(scanners, samples, pred, {.jobs = 4});
  CHECK(seq.avg == par.avg);
  CHECK(seq.min == par.min);
  for (size_t i = 0; i < seq.pairs.size(); ++i)
    CHECK(seq.pairs[i].score == par.pairs[i].score);
}

TEST_CASE("missing patch is an error") {
  std::vector<ScannerId> scanners{"A", "B"};
  PairedPatches pp;
  pp.sample_id = "s";
  pp.patches = {RasterImage(4, 4)};
  CHECK_THROWS_AS(consistency_protocol(scanners, {pp}, constant_predictor(2)), Error);
}

TEST_CASE("primary dice is 1 on ground truth and 0 on its complement") {
  Rng rng(33);
  std::vector<RasterImage> images;
  std::vector<LabelMask> truths;
  for (int i = 0; i < 3; ++i) {
    images.push_back(test::random_image(6, 6, rng));
    truths.push_back(test::random_mask(6, 6, 2, rng));
  }
  size_t call_idx = 0;
  Predictor oracle_pred = [&](const RasterImage&) { return one_hot(truths[call_idx++]); };
  CHECK(primary_dice(images, truths, oracle_pred) == 1.0);

  call_idx = 0;
  Predictor complement = [&](const RasterImage&) {
    LabelMask flipped = truths[call_idx++];
    for (auto& v : flipped.labels) v = static_cast<uint8_t>(1 - v);
    return one_hot(flipped);
  };
  CHECK(primary_dice(images, truths, complement) == 0.0);
}

TEST_CASE("primary dice matches pixel counting on a known confusion") {
  // Truth: half class 0, half class 1. Prediction: all class 1.
  LabelMask truth(4, 2, 2);
  for (int i = 4; i < 8; ++i) truth.labels[i] = 1;
  RasterImage img(4, 2);
  Predictor all_one = [](const RasterImage& im) {
    ProbMap p(im.width, im.height, 2);
    for (size_t i = 0; i < static_cast<size_t>(im.width) * im.height; ++i)
      p.data[i * 2 + 1] = 1.0f;
    return p;
  };
  // class 0: inter 0, supports 4+0 -> 0 ; class 1: inter 4, supports 4+8 -> 2/3
  double expected = (0.0 + 2.0 / 3.0) / 2.0;
  CHECK(primary_dice({img}, {truth}, all_one) == doctest::Approx(expected));
}
