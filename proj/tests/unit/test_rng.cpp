#include <doctest.h>

#include "scorpion/core/rng.hpp"

using scorpion::Rng;

TEST_CASE("equal seeds produce equal draw sequences") {
  Rng a(12345), b(12345);
  for (int i = 0; i < 10000; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("different seeds diverge") {
  Rng a(1), b(2);
  int same = 0;
  for (int i = 0; i < 1000; ++i) same += (a.next_u32() == b.next_u32());
  CHECK(same < 5);
}

TEST_CASE("uniform stays in [0,1) and covers the range") {
  Rng rng(7);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 20000; ++i) {
    double v = rng.uniform();
    REQUIRE(v >= 0.0);
    REQUIRE(v < 1.0);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo < 0.01);
  CHECK(hi > 0.99);
}

TEST_CASE("below is bounded and roughly uniform") {
  Rng rng(99);
  int counts[10] = {0};
  for (int i = 0; i < 100000; ++i) {
    uint32_t v = rng.below(10);
    REQUIRE(v < 10);
    counts[v]++;
  }
  for (int c : counts) CHECK(std::abs(c - 10000) < 600);
}

TEST_CASE("child streams are independent of the parent and each other") {
  Rng parent(42);
  Rng c0 = parent.child(1);
  Rng c1 = parent.child(2);
  int same = 0;
  for (int i = 0; i < 1000; ++i) same += (c0.next_u32() == c1.next_u32());
  CHECK(same < 5);

  // Splitting is a pure function of (seed, index).
  Rng again = Rng(42).child(1);
  Rng c0b = parent.child(1);
  for (int i = 0; i < 100; ++i) REQUIRE(again.next_u32() == c0b.next_u32());
}

TEST_CASE("normal has sane first moments") {
  Rng rng(5);
  double sum = 0.0, sq = 0.0;
  const int n = 50000;
  for (int i = 0; i < n; ++i) {
    double v = rng.normal(2.0, 3.0);
    sum += v;
    sq += v * v;
  }
  double mean = sum / n;
  double var = sq / n - mean * mean;
  CHECK(mean == doctest::Approx(2.0).epsilon(0.05));
  CHECK(var == doctest::Approx(9.0).epsilon(0.05));
}

TEST_CASE("shuffle is a permutation and seed-stable") {
  Rng rng(11);
  std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  rng.shuffle(v);
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});

  Rng rng2(11);
  std::vector<int> w{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  rng2.shuffle(w);
  CHECK(v == w);
}
