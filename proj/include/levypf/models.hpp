#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "levypf/couple.hpp"
#include "levypf/mlpf.hpp"

// Concrete experiment setups: the scalar SDE a(y) = y driven by the
// truncated-stable process, Gaussian observation potentials for filtering,
// the annealed knock-out barrier potential sequence, registered test
// functions, and data loading.

namespace levypf {

// Input-data problems (bad file, bad line, degenerate series).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

struct FilterProblem {
  std::vector<double> observations;  // z_1..z_n
  double obs_variance = 1.0;
};

// Observation density value: N(y, variance) evaluated at z.
double gaussian_potential(double z, double y, double variance = 1.0);

// Reads one numeric value per line ('#' comments and blank lines skipped; an
// optional non-numeric header line is tolerated) and rescales the series to
// unit sample variance without centering it.
FilterProblem load_returns(const std::string& path);

struct BarrierProblem {
  double strike = 1.25;
  double lower = 0.0;
  double upper = 5.0;
  int horizon = 100;
  // 0 means the exact annealing factor |y - strike|^kappa; a positive value
  // replaces |y - strike| by max(|y - strike|, smooth_floor).
  double smooth_floor = 0.0;

  double kappa(int k) const { return static_cast<double>(k) / static_cast<double>(horizon); }
  double annealed(int k, double y) const;  // |y - strike|^kappa(k), floored if configured
};

// Annealed knock-out potential: (annealed(k, y) / annealed(k-1, y_prev)) on
// [lower, upper], 0 outside.  A vanishing denominator (particle exactly at
// the strike) yields weight 0.
double barrier_potential(int k, double y_prev, double y, const BarrierProblem& prob);

// Terminal payoff max{y - strike, 0} and the importance correction
// f/annealed(n, .) = 1{y > strike} (0 at y == strike).
double barrier_payoff(double y, double strike);
double barrier_correction(double y, double strike);

struct NamedTestFn {
  std::string name;
  TestFn fn;
  bool bounded;  // false marks functions outside the boundedness assumptions
};

// Test functions selectable from the CLI: identity, square, exp (unbounded),
// and exp clipped to |y| < 10.
const std::vector<NamedTestFn>& test_function_registry();
const NamedTestFn* find_test_function(const std::string& name);

// --- Kernel and Feynman-Kac model builders -------------------------------

FeynmanKacModel make_filter_model(const LevyModel& model, const Coefficient& coeff, double y0,
                                  const FilterProblem& prob, int level, int s0 = 2);
CoupledFkModel make_coupled_filter_model(const LevyModel& model, const Coefficient& coeff,
                                         double y0, const FilterProblem& prob, int level,
                                         int s0 = 2);
FeynmanKacModel make_barrier_model(const LevyModel& model, const Coefficient& coeff, double y0,
                                   const BarrierProblem& prob, int level, int s0 = 2);
CoupledFkModel make_coupled_barrier_model(const LevyModel& model, const Coefficient& coeff,
                                          double y0, const BarrierProblem& prob, int level,
                                          int s0 = 2);

MlModelFamily filter_family(const LevyModel& model, const Coefficient& coeff, double y0,
                            const FilterProblem& prob, int s0 = 2);
MlModelFamily barrier_family(const LevyModel& model, const Coefficient& coeff, double y0,
                             const BarrierProblem& prob, int s0 = 2);

// Simulates a latent path at the given level and adds N(0, obs_variance)
// noise, producing synthetic observations z_1..z_n.
std::vector<double> generate_observations(const LevyModel& model, const Coefficient& coeff,
                                          double y0, int n, int level, double obs_variance,
                                          const StreamFactory& streams, int s0 = 2);

}  // namespace levypf
