#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "levypf/models.hpp"
#include "levypf/stats.hpp"

// Experiment harness: weak/strong rate estimation from coupled draws,
// MSE-versus-cost sweeps comparing the single-level and multilevel filters,
// simulated reference solutions, total-variation decay checks, and report
// writing.  Costs are counted in Euler sub-steps, not wall time.

namespace levypf {

struct RateFit {
  std::vector<int> levels;  // fitted levels (1-based, fine level of each pair)
  std::vector<double> weak_means, weak_ses;      // E[Y^l - Y^{l-1}] per level
  std::vector<double> strong_means, strong_ses;  // E[(Y^l - Y^{l-1})^2] per level
  double alpha_hat = 0.0;  // weak-rate exponent in h
  double beta_hat = 0.0;   // strong-rate exponent in h
  std::vector<int> excluded_levels;  // weak means indistinguishable from 0 at 2 s.e.
  bool weak_fit_all = false;  // true: too few levels survived, weak fit used all levels
  std::string warning;
};

// Coupled draws (propagate_m from y0) at levels 1..max_level, `samples` per
// level; least-squares slopes of log2 |weak mean| and log2 strong mean
// against log2 h_l.  Levels whose weak mean is within 2 s.e. of 0 are
// excluded from the weak fit; if fewer than 3 survive, the fit falls back to
// all levels and the result measures the Monte Carlo noise floor (which
// decays like h^{beta/2} at fixed sample size), flagged in `warning`.
RateFit estimate_rates(const LevyModel& model, const Coefficient& coeff, double y0,
                       int max_level, int samples, const StreamFactory& streams, int s0 = 2);

struct Reference {
  double value = 0.0;
  double se = 0.0;
  int level = 0;
  int particles = 0;     // per replicate
  int replicates = 0;
  std::uint64_t cost = 0;  // total Euler sub-steps across replicates
};

// Single-level filter reference: `replicates` independent runs at the given
// level, each with `particles` particles, averaged; the estimand is the
// terminal-step estimate of fs[fn_index], NC-weighted when `unnormalized`.
Reference reference_solution(const MlModelFamily& family, int level, int particles,
                             int replicates, double ess_threshold, std::uint64_t master_seed,
                             std::uint64_t experiment, const std::vector<TestFn>& fs,
                             std::size_t fn_index, bool unnormalized);

struct SweepConfig {
  std::vector<double> epsilons;
  int replicates = 50;
  double ess_threshold = 0.5;
  MlConfig ml;                 // epsilon is overwritten per grid point
  double pf_c_samples = 1.0;   // single-level particle count: ceil(c * eps^-2)
  std::uint64_t master_seed = 1;
  std::uint64_t experiment_pf = 1;
  std::uint64_t experiment_ml = 2;
  std::size_t fn_index = 0;
  bool unnormalized = false;
};

struct SweepPoint {
  double epsilon = 0.0;
  int max_level = 0;
  int particles0 = 0;  // PF: N; MLPF: N_0
  std::vector<double> estimates;       // one per replicate
  std::vector<std::uint64_t> costs;    // one per replicate
  double mean_cost = 0.0;
  double mse = 0.0;  // against the sweep reference
};

struct SweepReport {
  std::vector<SweepPoint> pf;
  std::vector<SweepPoint> mlpf;
  LineFit pf_fit;    // log10 MSE on log10 cost
  LineFit mlpf_fit;
  Reference reference;
};

// Runs the full grid for both estimator families against one reference.
SweepReport mse_vs_cost(const MlModelFamily& family, const SweepConfig& cfg,
                        const Reference& reference, const std::vector<TestFn>& fs);

struct TvRate {
  std::vector<int> levels;
  std::vector<double> tv;        // histogram TV between levels l and l-1
  std::vector<double> debiased;  // tv minus a same-law split noise floor (>= 0)
  std::vector<int> fitted_levels;  // levels whose signal clears the noise floor
  double slope = 0.0;              // log2 debiased TV vs log2 h over fitted_levels
  std::string warning;             // set when too few levels were resolvable
};

// Empirical decay of the distance between one-step laws at adjacent levels.
TvRate estimate_tv_rate(const LevyModel& model, const Coefficient& coeff, double y0,
                        int min_level, int max_level, int samples, int bins,
                        const StreamFactory& streams, int s0 = 2);

// Report files (delimited text with '#' provenance/header lines).
void write_rate_file(const std::string& path, const RateFit& fit,
                     const std::string& config_block);
void write_sweep_files(const std::string& points_path, const std::string& summary_path,
                       const SweepReport& report, const std::string& config_block);

}  // namespace levypf
