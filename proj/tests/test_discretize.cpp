#include <cmath>
#include <vector>

#include "doctest.h"
#include "levypf/discretize.hpp"
#include "levypf/stats.hpp"

using namespace levypf;

namespace {

const StableMeasure kSym{1.0, 0.5, 1.0, false};
const LevyModel kPureJump{kSym, 0.0, 0.0};

}  // namespace

TEST_CASE("refine_grid with no jumps is the uniform ladder capped at 1") {
  const JumpSkeleton s = refine_grid({}, {}, 0.5);
  REQUIRE(s.size() == 2);
  CHECK(s.times[0] == 0.5);
  CHECK(s.times[1] == 1.0);
  CHECK(s.heights[0] == 0.0);
  CHECK(s.heights[1] == 0.0);

  const JumpSkeleton whole = refine_grid({}, {}, 1.0);
  REQUIRE(whole.size() == 1);
  CHECK(whole.times[0] == 1.0);
}

TEST_CASE("refine_grid hand trace with one jump") {
  const JumpSkeleton s = refine_grid({0.3}, {-0.5}, 0.5);
  REQUIRE(s.size() == 3);
  CHECK(s.times[0] == 0.3);
  CHECK(s.times[1] == 0.8);
  CHECK(s.times[2] == 1.0);
  CHECK(s.heights[0] == -0.5);
  CHECK(s.heights[1] == 0.0);
  CHECK(s.heights[2] == 0.0);
}

TEST_CASE("skeleton invariants hold across levels and seeds") {
  for (int level : {0, 1, 2, 4}) {
    const LevelParams lp = make_level_params(kSym, level, 2);
    for (int seed = 0; seed < 200; ++seed) {
      Rng rng(1000 + 31 * seed + level);
      const JumpSkeleton s = generate_skeleton(lp, kPureJump, rng);
      REQUIRE(s.size() >= 1);
      REQUIRE(s.times.back() == 1.0);
      double prev = 0.0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        REQUIRE(s.times[i] > prev);
        REQUIRE(s.times[i] - prev <= lp.h * (1.0 + 1e-9) + 1e-12);
        if (s.heights[i] != 0.0) {
          REQUIRE(std::fabs(s.heights[i]) >= lp.delta);
          REQUIRE(std::fabs(s.heights[i]) <= kSym.xstar);
        }
        prev = s.times[i];
      }
    }
  }
}

TEST_CASE("jump count matches the arrival rate") {
  const LevelParams lp = make_level_params(kSym, 2, 2);  // lambda = 4
  const int reps = 4000;
  double count = 0.0;
  for (int seed = 0; seed < reps; ++seed) {
    Rng rng(5000 + seed);
    const JumpSkeleton s = generate_skeleton(lp, kPureJump, rng);
    for (double x : s.heights) count += (x != 0.0) ? 1.0 : 0.0;
  }
  const double mean = count / reps;
  // Arrivals on [0,1) are Poisson(4); se = sqrt(lambda / reps).
  CHECK(std::fabs(mean - 4.0) < 4.0 * std::sqrt(4.0 / reps));
}

TEST_CASE("euler step arithmetic") {
  LevelParams lp = make_level_params(kSym, 0, 2);
  const LevyModel model{kSym, 0.0, 0.0};
  SdeSpec spec;

  spec.coeff = linear_coefficient(0.0);
  CHECK(euler_step(1.7, 0.0, 0.5, 0.25, lp, model, spec) == 1.7);

  spec.coeff = constant_coefficient(1.0);
  CHECK(euler_step(1.0, 0.0, 0.2, 0.5, lp, model, spec) == 1.2);

  spec.coeff = linear_coefficient(1.0);
  CHECK(euler_step(1.0, 0.0, 0.25, 0.5, lp, model, spec) == 1.25);

  const LevyModel drifted{kSym, 0.0, 2.0};
  spec.coeff = constant_coefficient(1.0);
  // dt contribution only: y + (b - F0) dt = 1 + 2 * 0.5.
  CHECK(euler_step(1.0, 0.0, 0.0, 0.5, lp, drifted, spec) == 2.0);
}

TEST_CASE("drift-only propagation compounds like a product") {
  const LevyModel drifted{kSym, 0.0, 1.0};
  SdeSpec spec;
  spec.coeff = linear_coefficient(1.0);
  spec.y0 = 1.0;

  for (int m : {2, 4}) {
    LevelParams lp = make_level_params(kSym, m, 2);
    const JumpSkeleton grid = refine_grid({}, {}, lp.h);
    Rng rng(1);  // unused: sigma = 0
    const StepResult r = propagate_skeleton(spec.y0, grid, lp, drifted, spec, rng);
    const double n = std::ldexp(1.0, m);
    CHECK(r.y == doctest::Approx(std::pow(1.0 + lp.h, n)).epsilon(1e-12));
    CHECK(r.substeps == static_cast<std::uint64_t>(n));
  }
}

TEST_CASE("additive dynamics telescope to the jump sum") {
  // a == 1, b = 0, symmetric measure (F0 = 0): Y_1 = y0 + sum of heights.
  const LevelParams lp = make_level_params(kSym, 3, 2);
  SdeSpec spec;
  spec.coeff = constant_coefficient(1.0);
  spec.y0 = 0.5;

  for (int seed = 0; seed < 100; ++seed) {
    Rng skel_rng(9000 + seed);
    const JumpSkeleton s = generate_skeleton(lp, kPureJump, skel_rng);
    double want = spec.y0;
    for (double x : s.heights) {
      if (x != 0.0) want += x;
    }
    Rng rng(9000 + seed);
    const StepResult r = propagate_q(spec.y0, lp, kPureJump, spec, rng);
    CHECK(r.y == want);
    CHECK(r.substeps == s.size());
  }
}

TEST_CASE("one-step mean is preserved for the driftless linear model") {
  const LevelParams lp = make_level_params(kSym, 2, 2);
  SdeSpec spec;
  spec.coeff = linear_coefficient(1.0);
  spec.y0 = 1.0;

  const int n = 20000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    Rng rng(40000 + i);
    const double y = propagate_q(spec.y0, lp, kPureJump, spec, rng).y;
    sum += y;
    sum2 += y * y;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::fabs(mean - 1.0) < 4.0 * std::sqrt(var / n));
}

TEST_CASE("streamed propagation equals the materialized skeleton bitwise") {
  SdeSpec spec;
  spec.coeff = linear_coefficient(1.0);
  spec.y0 = 1.0;

  for (int level : {0, 2, 4}) {
    const LevelParams lp = make_level_params(kSym, level, 2);
    for (int seed = 0; seed < 200; ++seed) {
      Rng a(77000 + seed), b(77000 + seed);
      const JumpSkeleton s = generate_skeleton(lp, kPureJump, a);
      Rng unused(0);
      const StepResult mat = propagate_skeleton(spec.y0, s, lp, kPureJump, spec, unused);
      const StepResult stream = propagate_q(spec.y0, lp, kPureJump, spec, b);
      CHECK(stream.y == mat.y);
      CHECK(stream.substeps == mat.substeps);
    }
  }
}

TEST_CASE("diffusion path reproduces the skeleton propagation") {
  const LevyModel with_noise{kSym, 0.5, 0.1};
  SdeSpec spec;
  spec.coeff = linear_coefficient(1.0);
  spec.y0 = 1.0;
  const LevelParams lp = make_level_params(kSym, 2, 2);

  for (int seed = 0; seed < 100; ++seed) {
    Rng a(88000 + seed), b(88000 + seed);
    const JumpSkeleton s = generate_skeleton(lp, with_noise, a);
    const StepResult mat = propagate_skeleton(spec.y0, s, lp, with_noise, spec, a);
    const StepResult stream = propagate_q(spec.y0, lp, with_noise, spec, b);
    CHECK(stream.y == mat.y);
    CHECK(stream.substeps == mat.substeps);
  }
}

TEST_CASE("propagation is deterministic under the stream seed") {
  const LevelParams lp = make_level_params(kSym, 3, 2);
  SdeSpec spec;
  spec.coeff = linear_coefficient(1.0);
  spec.y0 = 2.0;
  Rng a(123), b(123);
  CHECK(propagate_q(spec.y0, lp, kPureJump, spec, a).y ==
        propagate_q(spec.y0, lp, kPureJump, spec, b).y);
}
