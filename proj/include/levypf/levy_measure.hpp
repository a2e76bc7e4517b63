#pragma once

#include <functional>

#include "levypf/rng.hpp"

// Truncated stable Levy measure and the per-level quantities derived from it:
// tail mass, jump threshold, small-jump variance, drift compensator, and
// inverse-CDF jump sampling.

namespace levypf {

// Levy measure with density c|x|^{-1-phi} on [-x*,0) u (0,x*] (or on (0,x*]
// only for the one-sided variant, which exists to exercise nonzero drift
// compensators in tests).  Infinite total mass, finite second moment.
struct StableMeasure {
  double c = 1.0;      // intensity scale, > 0
  double phi = 0.5;    // stability index, in (0,2)
  double xstar = 1.0;  // truncation radius, > 0
  bool one_sided = false;
};

// Throws std::invalid_argument when parameter constraints are violated.
void validate(const StableMeasure& m);

// Levy triplet: measure plus diffusion coefficient and drift.
struct LevyModel {
  StableMeasure measure;
  double sigma = 0.0;  // diffusion coefficient, >= 0
  double drift = 0.0;  // drift b
};

void validate(const LevyModel& model);

// nu(B_delta^c): mass of jumps with magnitude in [delta, x*].
// Domain: 0 < delta <= x*.
double tail_mass(const StableMeasure& m, double delta);

// Solves tail_mass(m, delta) = 1/h for delta (closed form).
double jump_threshold(const StableMeasure& m, double h);

// sigma^2(delta) = integral of |x|^2 over the ball B_delta.  Domain [0, x*].
double small_jump_variance(const StableMeasure& m, double delta);

// F0 = integral of x over B_delta^c; exactly 0 for the symmetric measure.
double drift_compensator(const StableMeasure& m, double delta);

// Inverse CDF of the jump magnitude under the normalized restriction of the
// measure to B_delta^c: r(u) = (delta^-phi - u(delta^-phi - x*^-phi))^(-1/phi).
double jump_magnitude_icdf(const StableMeasure& m, double delta, double u);

// One draw from mu = nu restricted to B_delta^c, normalized.  Magnitude via
// the inverse CDF; sign +/-1 with probability 1/2 each (always + when
// one-sided).  Requires delta < x*.
double sample_jump(const StableMeasure& m, double delta, Rng& rng);

// Non-parametric jump measure described by callbacks, for measures without
// closed forms.  Only the monotone tail is needed to invert for the level's
// jump threshold.
struct GenericMeasure {
  double xstar = 1.0;
  std::function<double(double)> tail_mass;           // nu(B_delta^c)
  std::function<double(double)> tail_first_moment;   // integral of x over B_delta^c
  std::function<double(double)> ball_second_moment;  // integral of x^2 over B_delta
};

// Bisection fallback on the monotone tail, bracket (0, x*], absolute
// tolerance 1e-12 on delta.
double jump_threshold(const GenericMeasure& m, double h);

// Per-level discretization parameters.  Construct via make_level_params so
// the invariants (lambda = 1/h, tail_mass(delta) = lambda) hold; the *_pow
// fields cache the sampler's inverse-CDF endpoints.
struct LevelParams {
  int level = 0;
  double h = 1.0;       // step size h_l = s0^-l
  double delta = 0.0;   // jump threshold delta_l
  double lambda = 1.0;  // jump rate = 1/h
  double f0 = 0.0;      // drift compensator F0^l

  // cached sampler state
  double delta_pow = 0.0;  // delta^-phi
  double xstar_pow = 0.0;  // x*^-phi
  double phi = 0.5;
  bool half_index = true;  // phi == 0.5 closed-form shortcut
  bool one_sided = false;
};

LevelParams make_level_params(const StableMeasure& m, int level, int s0 = 2);

// Draw a jump height using the parameters cached in LevelParams; identical in
// law (and in draws consumed) to sample_jump(m, lp.delta, rng).
inline double draw_jump(const LevelParams& lp, Rng& rng) {
  const std::uint64_t raw = rng.next_u64();
  const double u = static_cast<double>(raw >> 11) * 0x1.0p-53;
  const double t = lp.delta_pow - u * (lp.delta_pow - lp.xstar_pow);
  double mag;
  if (lp.half_index) {
    mag = 1.0 / (t * t);  // phi = 1/2: t^(-1/phi) = t^-2
  } else {
    mag = std::pow(t, -1.0 / lp.phi);
  }
  if (lp.one_sided) return mag;
  return (raw & 1u) ? mag : -mag;
}

}  // namespace levypf
