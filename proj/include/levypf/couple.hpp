#pragma once

#include <cstdint>

#include "levypf/discretize.hpp"

// Coupled fine/coarse kernel M^l: one fine jump stream drives both
// resolutions.  Coarse jumps are the fine jumps with magnitude >= delta_{l-1}
// (thinning, so the coarse marginal is exactly the level-(l-1) kernel), time
// grids are refined jointly, and both Euler recursions share the Brownian
// increments (coarse increments are sums of fine ones).

namespace levypf {

struct CoupledSkeleton {
  JumpSkeleton fine;    // merged grid: fine refinement united with the coarse grid
  JumpSkeleton coarse;  // coarse jumps refined with h_{l-1}; times subset of fine.times
  std::vector<double> brownian;  // N(0, dt) per fine sub-interval; empty when sigma == 0
};

struct CoupledResult {
  double y_fine = 0.0;
  double y_coarse = 0.0;
  std::uint64_t substeps_fine = 0;
  std::uint64_t substeps_coarse = 0;
};

// Throws std::invalid_argument unless lp_fine is exactly one level above
// lp_coarse with consistent thresholds.
void check_level_pair(const LevelParams& lp_fine, const LevelParams& lp_coarse);

CoupledSkeleton generate_coupled_skeleton(const LevelParams& lp_fine,
                                          const LevelParams& lp_coarse,
                                          const LevyModel& model, Rng& rng);

// Runs both Euler recursions over a materialized coupled skeleton.
CoupledResult propagate_coupled_skeleton(double y_fine, double y_coarse,
                                         const CoupledSkeleton& skel,
                                         const LevelParams& lp_fine,
                                         const LevelParams& lp_coarse,
                                         const LevyModel& model, const SdeSpec& spec);

// Coupled unit-time transition: returns (Y_1^{l,l}, Y_1^{l,l-1}) and per-leg
// sub-step counts.  For sigma == 0 the coupled skeleton is streamed without
// materialization; bitwise identical to the skeleton-based path.
CoupledResult propagate_m(double y_fine, double y_coarse, const LevelParams& lp_fine,
                          const LevelParams& lp_coarse, const LevyModel& model,
                          const SdeSpec& spec, Rng& rng);

}  // namespace levypf
