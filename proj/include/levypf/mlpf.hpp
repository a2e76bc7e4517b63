#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "levypf/smc.hpp"

// Multilevel particle filter: a plain filter at level 0 plus, per level
// l >= 1, a coupled filter whose pairs evolve under the coupled kernel and
// resample through a maximal coupling of the two weight vectors.  Filter
// estimates and normalizing constants telescope across levels.

namespace levypf {

struct MlConfig {
  double epsilon = 0.125;  // target RMSE
  double alpha = 1.5;      // weak rate exponent (in powers of h)
  double beta = 3.0;       // strong/coupling rate exponent
  double gamma = 1.0;      // cost growth exponent
  int s0 = 2;              // level step ratio: h_l = s0^-l
  double c_level = 1.0;    // scales the level cutoff
  double c_samples = 1.0;  // scales every particle count
};

struct Allocation {
  int max_level = 0;                // L; levels run are 0..L
  std::vector<int> particles;      // N_l for l = 0..L, each >= 2
  std::string cost_case;           // predicted cost scaling in epsilon
  std::string warning;             // empty when the request was regular
};

Allocation allocate_levels(const MlConfig& cfg);

// Coupled transition kernel: advances a fine/coarse pair in place with the
// supplied stream; adds Euler sub-steps of both legs to `substeps`.
using CoupledTransitionFn =
    std::function<void(double& y_fine, double& y_coarse, Rng& rng, std::uint64_t& substeps)>;

struct CoupledFkModel {
  CoupledTransitionFn kernel;
  PotentialFn potential;
  int horizon = 0;
  double y0 = 1.0;
  int level = 1;  // fine level l; the coarse leg is l-1
};

// One index pair per draw from the maximal coupling of two normalized weight
// vectors: with probability sum_i min(wf_i, wc_i) both branches share an
// index drawn from the overlap, otherwise the branches draw independently
// from their residuals.  Marginals are exactly wf and wc.
struct CoupledIndices {
  std::vector<std::uint32_t> fine;
  std::vector<std::uint32_t> coarse;
  std::size_t common = 0;  // draws where both branches shared an index
};

CoupledIndices coupled_resample(const std::vector<double>& weights_fine,
                                const std::vector<double>& weights_coarse, std::size_t count,
                                Rng& rng);

struct LevelReport {
  int level = 1;
  std::vector<std::vector<double>> fine_estimates;    // [step][fn]
  std::vector<std::vector<double>> coarse_estimates;  // [step][fn]
  std::vector<double> log_nc_factors_fine;
  std::vector<double> log_nc_factors_coarse;
  double log_nc_fine = 0.0;
  double log_nc_coarse = 0.0;
  std::uint64_t substeps = 0;
  std::uint64_t kernel_draws = 0;
  int resample_count = 0;
};

// Runs the coupled filter for one level pair.  Resamples (coupled) when the
// smaller of the two effective sample sizes drops below threshold * N.
LevelReport run_coupled_pf(const CoupledFkModel& fk, const PfOptions& opt,
                           const StreamFactory& streams, const std::vector<TestFn>& fs);

// Telescoped filter estimates: base + sum_l (fine_l - coarse_l), per step and
// test function.
std::vector<std::vector<double>> ml_filter_estimate(const PfReport& base,
                                                    const std::vector<LevelReport>& levels);

struct MlNcEstimate {
  double value = 0.0;  // telescoped normalizing constant; can be <= 0
  bool nonpositive = false;
  std::vector<double> level_contributions;  // [0] = base NC, [l] = fine_l - coarse_l
};

MlNcEstimate ml_nc_estimate(const PfReport& base, const std::vector<LevelReport>& levels);

// Telescoped unnormalized estimator zeta(f): per level, the NC estimate times
// the self-normalized terminal-step estimate of test function `fn_index`.
// This is the quantity priced in the barrier experiment (f = payoff / final
// annealing factor).
MlNcEstimate ml_unnormalized_estimate(const PfReport& base,
                                      const std::vector<LevelReport>& levels,
                                      std::size_t fn_index);

// Provides the per-level models the multilevel driver runs.
struct MlModelFamily {
  std::function<FeynmanKacModel(int level)> single;   // kernel Q^l (used at level 0)
  std::function<CoupledFkModel(int level)> coupled;   // kernel M^l, l >= 1
};

struct MlpfResult {
  Allocation alloc;
  PfReport base;
  std::vector<LevelReport> levels;
  std::vector<std::vector<double>> estimates;  // [step][fn]
  MlNcEstimate nc;
  std::uint64_t substeps = 0;
  std::uint64_t kernel_draws = 0;
};

MlpfResult run_mlpf(const MlModelFamily& family, const MlConfig& cfg, double ess_threshold,
                    const StreamFactory& streams, const std::vector<TestFn>& fs);

// Same driver with the level/particle allocation supplied directly.
MlpfResult run_mlpf_alloc(const MlModelFamily& family, const Allocation& alloc,
                          double ess_threshold, const StreamFactory& streams,
                          const std::vector<TestFn>& fs);

}  // namespace levypf
