#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "levypf/rng.hpp"

using namespace levypf;

TEST_CASE("rng is deterministic under its seed") {
  Rng a(42), b(42);
  for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng c(42), d(43);
  bool all_equal = true;
  for (int i = 0; i < 8; ++i) all_equal = all_equal && (c.next_u64() == d.next_u64());
  CHECK_FALSE(all_equal);
}

TEST_CASE("uniform01 stays in [0,1) with the right mean") {
  Rng rng(7);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  const double se = 1.0 / std::sqrt(12.0 * n);
  CHECK(std::fabs(sum / n - 0.5) < 4.0 * se);
}

TEST_CASE("uniform01_open avoids both endpoints") {
  Rng rng(8);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01_open();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("exponential draws are positive with mean 1/rate") {
  Rng rng(9);
  const int n = 100000;
  const double rate = 2.0;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = rng.exponential(rate);
    REQUIRE(e > 0.0);
    sum += e;
  }
  const double se = (1.0 / rate) / std::sqrt(static_cast<double>(n));
  CHECK(std::fabs(sum / n - 1.0 / rate) < 4.0 * se);
}

TEST_CASE("normal draws have the right first two moments") {
  Rng rng(10);
  const int n = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::fabs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::fabs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("stream keys separate purpose, level, step, and particle") {
  std::set<std::uint64_t> keys;
  int count = 0;
  for (auto p : {Purpose::init, Purpose::propagate, Purpose::resample}) {
    for (std::uint64_t level = 0; level < 4; ++level)
      for (std::uint64_t step = 0; step < 4; ++step)
        for (std::uint64_t particle = 0; particle < 4; ++particle) {
          keys.insert(stream_key(p, level, step, particle));
          ++count;
        }
  }
  CHECK(static_cast<int>(keys.size()) == count);
}

TEST_CASE("stream factory reproduces streams and separates particles") {
  const StreamFactory f{derive_run_seed(1, 0, 0)};
  Rng a = f.make(Purpose::propagate, 2, 3, 4);
  Rng b = f.make(Purpose::propagate, 2, 3, 4);
  for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng c = f.make(Purpose::propagate, 2, 3, 5);
  Rng d = f.make(Purpose::propagate, 2, 3, 4);
  CHECK(c.next_u64() != d.next_u64());
}

TEST_CASE("run seeds separate replicates and experiments") {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t master : {1ULL, 2ULL})
    for (std::uint64_t rep = 0; rep < 4; ++rep)
      for (std::uint64_t exp = 0; exp < 4; ++exp) seeds.insert(derive_run_seed(master, rep, exp));
  CHECK(seeds.size() == 2 * 4 * 4);
}
