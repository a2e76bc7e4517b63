#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "levypf/bench.hpp"

// Compares the OpenMP-parallel propagation loops against a forced single
// thread.  The per-particle RNG streams make both produce bitwise-identical
// output, so the single-thread run doubles as a serial reference; this tool
// times both and verifies the equality.  With --check it runs a smaller
// workload and exits nonzero on any mismatch (used as a ctest entry).

using namespace levypf;

namespace {

double wall_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

void set_threads(int n) {
#ifdef _OPENMP
  omp_set_num_threads(n);
#else
  (void)n;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

struct BatchResult {
  std::vector<double> states;
  double seconds = 0.0;
};

// Raw kernel batch: every particle advanced once through the jump-adapted
// Euler kernel with its own stream, as the filter propagation step does.
BatchResult kernel_batch(int particles, int level, bool parallel) {
  const StableMeasure nu{1.0, 0.5, 1.0, false};
  const LevyModel model{nu, 0.0, 0.0};
  const LevelParams lp = make_level_params(nu, level, 2);
  SdeSpec spec;
  spec.coeff = linear_coefficient(1.0);
  spec.y0 = 1.0;
  const StreamFactory streams{derive_run_seed(11, 0, 1)};

  BatchResult out;
  out.states.assign(particles, 0.0);
  const double t0 = wall_seconds();
  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < particles; ++i) {
      Rng rng = streams.make(Purpose::propagate, level, 0, i);
      out.states[i] = propagate_q(1.0, lp, model, spec, rng).y;
    }
  } else {
    for (int i = 0; i < particles; ++i) {
      Rng rng = streams.make(Purpose::propagate, level, 0, i);
      out.states[i] = propagate_q(1.0, lp, model, spec, rng).y;
    }
  }
  out.seconds = wall_seconds() - t0;
  return out;
}

struct FilterResult {
  PfReport single;
  LevelReport coupled;
  double seconds = 0.0;
};

// Full filter pass: the single-level and coupled drivers share the same
// observation record; both use the library's parallel loops, throttled by
// the active thread count.
FilterResult filter_pass(int particles, int level, int horizon, int threads) {
  const StableMeasure nu{1.0, 0.5, 1.0, false};
  const LevyModel model{nu, 0.0, 0.0};
  FilterProblem prob;
  prob.obs_variance = 1.0;
  const StreamFactory data_streams{derive_run_seed(11, 0, 2)};
  prob.observations =
      generate_observations(model, linear_coefficient(1.0), 1.0, horizon, level + 2, 1.0,
                            data_streams, 2);
  const MlModelFamily fam = filter_family(model, linear_coefficient(1.0), 1.0, prob, 2);
  const std::vector<TestFn> fs = {[](double y) { return y; }};

  PfOptions opt;
  opt.particles = particles;
  opt.ess_threshold = 0.5;

  set_threads(threads);
  FilterResult out;
  const double t0 = wall_seconds();
  const StreamFactory pf_streams{derive_run_seed(11, 0, 3)};
  out.single = run_pf(fam.single(level), opt, pf_streams, fs);
  const StreamFactory ml_streams{derive_run_seed(11, 0, 4)};
  out.coupled = run_coupled_pf(fam.coupled(level), opt, ml_streams, fs);
  out.seconds = wall_seconds() - t0;
  return out;
}

bool same(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool same(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same(a[i], b[i])) return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP propagation benchmark"};
  bool check = false;
  int particles = 200000;
  int level = 4;
  int horizon = 5;
  int threads = max_threads();
  app.add_flag("--check", check, "small consistency run; nonzero exit on mismatch");
  app.add_option("--particles", particles, "batch size");
  app.add_option("--level", level, "discretization level");
  app.add_option("--horizon", horizon, "filter steps for the full-filter pass");
  app.add_option("--threads", threads, "parallel thread count to compare against 1");
  CLI11_PARSE(app, argc, argv);

  if (check) {
    particles = std::min(particles, 20000);
    horizon = std::min(horizon, 4);
  }
#ifndef _OPENMP
  std::printf("built without OpenMP; comparing two serial runs\n");
#endif
  std::printf("threads: 1 vs %d, particles: %d, level: %d\n", threads, particles, level);

  int mismatches = 0;

  set_threads(1);
  const BatchResult serial = kernel_batch(particles, level, false);
  set_threads(threads);
  const BatchResult parallel = kernel_batch(particles, level, true);
  if (!same(serial.states, parallel.states)) {
    ++mismatches;
    std::printf("kernel batch: MISMATCH\n");
  } else {
    std::printf("kernel batch: identical states; serial %.3f s, parallel %.3f s (x%.2f)\n",
                serial.seconds, parallel.seconds,
                parallel.seconds > 0 ? serial.seconds / parallel.seconds : 0.0);
  }

  const FilterResult f1 = filter_pass(particles / 10, level, horizon, 1);
  const FilterResult fp = filter_pass(particles / 10, level, horizon, threads);
  const bool filter_ok = f1.single.log_nc == fp.single.log_nc &&
                         same(f1.single.final_states, fp.single.final_states) &&
                         same(f1.single.final_weights, fp.single.final_weights) &&
                         same(f1.single.step_estimates, fp.single.step_estimates);
  const bool coupled_ok = f1.coupled.log_nc_fine == fp.coupled.log_nc_fine &&
                          f1.coupled.log_nc_coarse == fp.coupled.log_nc_coarse &&
                          same(f1.coupled.fine_estimates, fp.coupled.fine_estimates) &&
                          same(f1.coupled.coarse_estimates, fp.coupled.coarse_estimates);
  if (!filter_ok) {
    ++mismatches;
    std::printf("single-level filter: MISMATCH\n");
  }
  if (!coupled_ok) {
    ++mismatches;
    std::printf("coupled filter: MISMATCH\n");
  }
  if (filter_ok && coupled_ok)
    std::printf("filters: identical reports; serial %.3f s, parallel %.3f s (x%.2f)\n",
                f1.seconds, fp.seconds, fp.seconds > 0 ? f1.seconds / fp.seconds : 0.0);

  if (mismatches == 0) {
    std::printf("parallel consistency: OK\n");
  } else {
    std::printf("parallel consistency: %d mismatch(es)\n", mismatches);
  }
  return mismatches;
}
