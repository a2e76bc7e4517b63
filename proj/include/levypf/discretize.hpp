#pragma once

#include <cstdint>
#include <vector>

#include "levypf/levy_measure.hpp"
#include "levypf/rng.hpp"

// Single-level discretization of the Levy-driven SDE on one unit time
// interval: jump-time generation with small-jump truncation, grid refinement
// so no gap exceeds h_l, and the Euler recursion defining the transition
// kernel Q^l.

namespace levypf {

// Refined time grid on (0,1] with the jump height carried at each grid time
// (0 at refinement-only times and at the capped terminal time 1).
struct JumpSkeleton {
  std::vector<double> times;    // strictly increasing, last element exactly 1
  std::vector<double> heights;  // aligned with times

  std::size_t size() const { return times.size(); }
};

// SDE coefficient a(.).  The two builtin kinds cover every model in the
// experiments (a(y) = scale*y and a == scale) without an indirect call in the
// innermost loop; `custom` admits arbitrary test coefficients.
struct Coefficient {
  enum Kind { linear, constant, custom } kind = linear;
  double scale = 1.0;
  double (*fn)(double) = nullptr;

  double operator()(double y) const {
    switch (kind) {
      case linear: return scale * y;
      case constant: return scale;
      default: return fn(y);
    }
  }
};

inline Coefficient linear_coefficient(double scale = 1.0) { return {Coefficient::linear, scale, nullptr}; }
inline Coefficient constant_coefficient(double value) { return {Coefficient::constant, value, nullptr}; }

// Scalar SDE dY = a(Y-) dX with known initial state.
struct SdeSpec {
  Coefficient coeff;
  double y0 = 1.0;
};

struct StepResult {
  double y = 0.0;
  std::uint64_t substeps = 0;  // Euler sub-intervals consumed (cost unit)
};

// Refines a strictly increasing jump-time list (all in (0,1)) so consecutive
// gaps never exceed h, carrying heights at jump times and 0 elsewhere, and
// terminating with the capped time 1 (height 0).
JumpSkeleton refine_grid(const std::vector<double>& jump_times,
                         const std::vector<double>& jump_heights, double h);

// Jump times are a Poisson(lambda_l) arrival stream capped at time 1 (the cap
// carries height 0), heights are i.i.d. from the restricted measure, and the
// grid is refined so consecutive gaps never exceed h_l.  Each arrival draws
// its inter-arrival time and then its height, in that order.
JumpSkeleton generate_skeleton(const LevelParams& lp, const LevyModel& model, Rng& rng);

// One Euler sub-step: y + a(y) * (sqrt(sigma) dW + dL + (b - F0) dt).
double euler_step(double y, double dW, double dL, double dt, const LevelParams& lp,
                  const LevyModel& model, const SdeSpec& spec);

// Iterates euler_step over an existing skeleton.  Brownian increments are
// N(0, dt) per sub-interval, drawn here in time order when sigma > 0; pass
// the same rng state that generated the skeleton to reproduce propagate_q.
StepResult propagate_skeleton(double y0, const JumpSkeleton& skel, const LevelParams& lp,
                              const LevyModel& model, const SdeSpec& spec, Rng& rng);

// Unit-time transition kernel Q^l: draws a skeleton and runs the Euler
// recursion, returning the time-1 state and the sub-step count.  For
// sigma == 0 the skeleton is streamed without being materialized; the result
// is bitwise identical to generate_skeleton + propagate_skeleton.
StepResult propagate_q(double y0, const LevelParams& lp, const LevyModel& model,
                       const SdeSpec& spec, Rng& rng);

}  // namespace levypf
