#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "levypf/models.hpp"
#include "levypf/smc.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace levypf;

namespace {

const StableMeasure kSym{1.0, 0.5, 1.0, false};
const LevyModel kPureJump{kSym, 0.0, 0.0};

// Plain Monte Carlo dressed as a Feynman-Kac model: uniform potential over
// the level-2 kernel with a(y) = y.
FeynmanKacModel uniform_model(int horizon, int level = 2) {
  const LevelParams lp = make_level_params(kSym, level, 2);
  FeynmanKacModel fk;
  fk.level = level;
  fk.horizon = horizon;
  fk.y0 = 1.0;
  fk.kernel = [lp](double y, Rng& rng, std::uint64_t& substeps) {
    SdeSpec spec;
    spec.coeff = linear_coefficient(1.0);
    spec.y0 = y;
    const StepResult r = propagate_q(y, lp, kPureJump, spec, rng);
    substeps += r.substeps;
    return r.y;
  };
  fk.potential = [](int, double, double) { return 1.0; };
  return fk;
}

}  // namespace

TEST_CASE("reweight normalizes and reports the log factor") {
  std::vector<double> w = {0.5, 0.5};
  const std::vector<double> g = {2.0, 6.0};
  const double log_factor = reweight(w, g, 3, "single");
  CHECK(w[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(w[1] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(log_factor == doctest::Approx(std::log(4.0)).epsilon(1e-15));
}

TEST_CASE("uniform potential leaves weights unchanged") {
  std::vector<double> w = {0.25, 0.25, 0.5};
  const std::vector<double> g = {1.0, 1.0, 1.0};
  const double log_factor = reweight(w, g);
  CHECK(w[0] == 0.25);
  CHECK(w[1] == 0.25);
  CHECK(w[2] == 0.5);
  CHECK(log_factor == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("a zero likelihood zeroes that particle") {
  std::vector<double> w = {0.5, 0.5};
  const std::vector<double> g = {0.0, 1.0};
  reweight(w, g);
  CHECK(w[0] == 0.0);
  CHECK(w[1] == 1.0);
}

TEST_CASE("degenerate weights raise a typed error naming the step") {
  std::vector<double> w = {0.5, 0.5};
  const std::vector<double> g = {0.0, 0.0};
  try {
    reweight(w, g, 7, "single");
    FAIL("expected DegeneracyError");
  } catch (const DegeneracyError& e) {
    CHECK(e.step() == 7);
    CHECK(std::string(e.what()).find("7") != std::string::npos);
  }

  std::vector<double> w2 = {1.0};
  CHECK_THROWS_AS(reweight(w2, {-1.0}), std::invalid_argument);
}

TEST_CASE("effective sample size") {
  std::vector<double> uniform(100, 0.01);
  CHECK(ess(uniform) == doctest::Approx(100.0).epsilon(1e-12));

  std::vector<double> point = {1.0, 0.0, 0.0};
  CHECK(ess(point) == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<double> mixed = {0.5, 0.25, 0.25};
  CHECK(ess(mixed) == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("multinomial resampling follows the weights") {
  Rng rng(2024);

  std::vector<double> point = {0.0, 1.0, 0.0};
  const auto idx = multinomial_resample(point, 50, rng);
  for (auto i : idx) CHECK(i == 1);

  std::vector<double> w = {0.2, 0.5, 0.3};
  const std::size_t n = 100000;
  std::vector<int> counts(3, 0);
  const auto idx2 = multinomial_resample(w, n, rng);
  for (auto i : idx2) {
    REQUIRE(i < 3);
    ++counts[i];
  }
  for (int j = 0; j < 3; ++j) {
    const double p = w[j];
    const double se = std::sqrt(p * (1.0 - p) / n);
    CHECK(std::fabs(counts[j] / static_cast<double>(n) - p) < 4.0 * se);
  }
}

TEST_CASE("uniform-potential filter is exact and never resamples") {
  FeynmanKacModel fk = uniform_model(4);
  PfOptions opt;
  opt.particles = 64;
  const StreamFactory streams{derive_run_seed(5, 0, 1)};
  const PfReport rep = run_pf(fk, opt, streams, {[](double) { return 1.0; }});

  REQUIRE(rep.step_estimates.size() == 4);
  for (const auto& row : rep.step_estimates) CHECK(row[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.log_nc == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rep.resample_count == 0);
  CHECK(rep.kernel_draws == 4 * 64);
  CHECK(rep.substeps > 0);
}

TEST_CASE("one-step filter with uniform potential is plain Monte Carlo") {
  FeynmanKacModel fk = uniform_model(1);
  PfOptions opt;
  opt.particles = 64;
  const StreamFactory streams{derive_run_seed(6, 0, 1)};
  const PfReport rep = run_pf(fk, opt, streams, {[](double y) { return y; }});

  // Recompute the Monte Carlo mean with the same per-particle streams.
  const LevelParams lp = make_level_params(kSym, 2, 2);
  double acc = 0.0;
  for (int i = 0; i < opt.particles; ++i) {
    Rng rng = streams.make(Purpose::propagate, fk.level, 1, i);
    SdeSpec spec;
    spec.coeff = linear_coefficient(1.0);
    spec.y0 = 1.0;
    acc += propagate_q(1.0, lp, kPureJump, spec, rng).y;
  }
  CHECK(rep.step_estimates[0][0] == doctest::Approx(acc / opt.particles).epsilon(1e-13));
}

TEST_CASE("log normalizing constant is the sum of its factors") {
  FilterProblem prob;
  prob.observations = {1.2, 0.8, 1.5, 0.9, 1.1};
  const FeynmanKacModel fk =
      make_filter_model(kPureJump, linear_coefficient(1.0), 1.0, prob, 2, 2);

  PfOptions opt;
  opt.particles = 256;
  opt.ess_threshold = 1.0;  // resample every step
  const StreamFactory streams{derive_run_seed(7, 0, 1)};
  const PfReport rep = run_pf(fk, opt, streams, {[](double y) { return y; }});

  double sum = 0.0;
  for (double f : rep.log_nc_factors) sum += f;
  CHECK(rep.log_nc == doctest::Approx(sum).epsilon(1e-13));
  REQUIRE(rep.log_nc_factors.size() == prob.observations.size());
  CHECK(rep.resample_count == static_cast<int>(prob.observations.size()) - 1);
  CHECK(std::isfinite(rep.log_nc));
}

TEST_CASE("filter runs are deterministic under the master seed") {
  FilterProblem prob;
  prob.observations = {1.0, 1.3, 0.7};
  const FeynmanKacModel fk =
      make_filter_model(kPureJump, linear_coefficient(1.0), 1.0, prob, 3, 2);
  PfOptions opt;
  opt.particles = 128;
  const StreamFactory streams{derive_run_seed(8, 0, 1)};

  const PfReport a = run_pf(fk, opt, streams, {[](double y) { return y; }});
  const PfReport b = run_pf(fk, opt, streams, {[](double y) { return y; }});
  CHECK(a.log_nc == b.log_nc);
  REQUIRE(a.final_states.size() == b.final_states.size());
  for (std::size_t i = 0; i < a.final_states.size(); ++i) {
    CHECK(a.final_states[i] == b.final_states[i]);
    CHECK(a.final_weights[i] == b.final_weights[i]);
  }
  CHECK(a.step_estimates == b.step_estimates);
}

#ifdef _OPENMP
TEST_CASE("filter output does not depend on the thread count") {
  FilterProblem prob;
  prob.observations = {1.1, 0.9, 1.2, 1.0};
  const FeynmanKacModel fk =
      make_filter_model(kPureJump, linear_coefficient(1.0), 1.0, prob, 3, 2);
  PfOptions opt;
  opt.particles = 128;
  const StreamFactory streams{derive_run_seed(9, 0, 1)};

  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const PfReport serial = run_pf(fk, opt, streams, {[](double y) { return y; }});
  omp_set_num_threads(4);
  const PfReport parallel = run_pf(fk, opt, streams, {[](double y) { return y; }});
  omp_set_num_threads(saved);

  CHECK(serial.log_nc == parallel.log_nc);
  CHECK(serial.step_estimates == parallel.step_estimates);
  CHECK(serial.final_states == parallel.final_states);
}
#endif

TEST_CASE("weights stay normalized and estimates skip zero-weight particles") {
  // A potential that kills half the state space; survivors carry the mass.
  FeynmanKacModel fk = uniform_model(3);
  fk.potential = [](int, double, double y) { return y > 1.0 ? 1.0 : 0.0; };
  PfOptions opt;
  opt.particles = 512;
  const StreamFactory streams{derive_run_seed(10, 0, 1)};
  const PfReport rep =
      run_pf(fk, opt, streams, {[](double y) { return y > 1.0 ? 0.0 : 1.0; }});

  // Every terminal estimate of 1{y <= 1} under the survivor law must be 0.
  for (const auto& row : rep.step_estimates) CHECK(row[0] == 0.0);
  double total = 0.0;
  for (double w : rep.final_weights) total += w;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("an impossible observation degenerates with the right step") {
  FeynmanKacModel fk = uniform_model(5);
  fk.potential = [](int k, double, double) { return k == 3 ? 0.0 : 1.0; };
  PfOptions opt;
  opt.particles = 32;
  const StreamFactory streams{derive_run_seed(11, 0, 1)};
  try {
    run_pf(fk, opt, streams, {[](double y) { return y; }});
    FAIL("expected DegeneracyError");
  } catch (const DegeneracyError& e) {
    CHECK(e.step() == 3);
  }
}
