#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "levypf/rng.hpp"

// Particle filter over a Feynman-Kac model: mutate through a transition
// kernel, reweight by a potential, resample (multinomial) when the effective
// sample size drops below a threshold fraction.  The running normalizing
// constant is accumulated in log space.

namespace levypf {

// Transition kernel: maps the previous state to the next using the supplied
// stream; adds the Euler sub-steps consumed to `substeps`.
using TransitionFn = std::function<double(double y_prev, Rng& rng, std::uint64_t& substeps)>;

// Potential G_k evaluated on a transition (y_{k-1} -> y_k).
using PotentialFn = std::function<double(int k, double y_prev, double y)>;

// Test function evaluated under the filter.
using TestFn = std::function<double(double y)>;

struct FeynmanKacModel {
  TransitionFn kernel;
  PotentialFn potential;
  int horizon = 0;   // number of observation times n
  double y0 = 1.0;   // deterministic state at time 0
  int level = 0;     // used only to key random streams
};

// All weights vanished (or went non-finite) during a reweight.
class DegeneracyError : public std::runtime_error {
 public:
  DegeneracyError(int step, const std::string& where)
      : std::runtime_error("particle weights degenerate at step " + std::to_string(step) +
                           " (" + where + ")"),
        step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

// Multiplies weights by likelihood values and renormalizes in place.
// Returns log(sum_i w_i * g_i), the running normalizing-constant factor.
// Throws DegeneracyError when the total is zero or non-finite.
double reweight(std::vector<double>& weights, const std::vector<double>& likelihoods,
                int step = 0, const std::string& where = "single");

// Effective sample size 1 / sum w_i^2 of normalized weights.
double ess(const std::vector<double>& weights);

// Draws `count` indices i.i.d. from the normalized weights.
std::vector<std::uint32_t> multinomial_resample(const std::vector<double>& weights,
                                                std::size_t count, Rng& rng);

struct PfOptions {
  int particles = 100;
  double ess_threshold = 0.5;  // resample when ESS < threshold * N; 1 = always
};

struct PfReport {
  // step_estimates[k-1][j]: filter estimate of fs[j] at observation time k.
  std::vector<std::vector<double>> step_estimates;
  std::vector<double> log_nc_factors;  // one per observation time
  double log_nc = 0.0;
  std::vector<double> final_states;
  std::vector<double> final_weights;
  std::uint64_t substeps = 0;      // Euler sub-intervals over all particles/steps
  std::uint64_t kernel_draws = 0;  // particle transitions performed
  int resample_count = 0;
};

PfReport run_pf(const FeynmanKacModel& fk, const PfOptions& opt, const StreamFactory& streams,
                const std::vector<TestFn>& fs);

}  // namespace levypf
