#include "levypf/discretize.hpp"

#include <cmath>

namespace levypf {

JumpSkeleton refine_grid(const std::vector<double>& jump_times,
                         const std::vector<double>& jump_heights, double h) {
  // Advance by at most h from the last refined time, stopping at the next
  // original jump time (or the cap at 1) when it comes first.
  JumpSkeleton skel;
  skel.times.reserve(jump_times.size() * 2 + 4);
  skel.heights.reserve(jump_times.size() * 2 + 4);
  double prev = 0.0;
  std::size_t j = 0;
  for (;;) {
    const double cand = prev + h;
    const double next_jump = (j < jump_times.size()) ? jump_times[j] : 1.0;
    if (cand < next_jump) {
      skel.times.push_back(cand);
      skel.heights.push_back(0.0);
      prev = cand;
    } else {
      skel.times.push_back(next_jump);
      if (j < jump_times.size()) {
        skel.heights.push_back(jump_heights[j]);
        ++j;
      } else {
        skel.heights.push_back(0.0);  // terminal cap
      }
      prev = next_jump;
      if (next_jump == 1.0) break;
    }
  }
  return skel;
}

JumpSkeleton generate_skeleton(const LevelParams& lp, const LevyModel& model, Rng& rng) {
  (void)model;  // jump draws run off the parameters cached in lp
  // Arrivals: T_j = min(1, T_{j-1} + Exp(lambda)); each genuine arrival
  // (strictly before 1) immediately draws its height.
  std::vector<double> jump_times;
  std::vector<double> jump_heights;
  double t = 0.0;
  for (;;) {
    const double xi = rng.exponential(lp.lambda);
    const double next = t + xi;
    if (next >= 1.0) break;  // capped arrival at 1, height 0
    jump_times.push_back(next);
    jump_heights.push_back(draw_jump(lp, rng));
    t = next;
  }
  return refine_grid(jump_times, jump_heights, lp.h);
}

double euler_step(double y, double dW, double dL, double dt, const LevelParams& lp,
                  const LevyModel& model, const SdeSpec& spec) {
  const double increment = std::sqrt(model.sigma) * dW + dL + (model.drift - lp.f0) * dt;
  return y + spec.coeff(y) * increment;
}

StepResult propagate_skeleton(double y0, const JumpSkeleton& skel, const LevelParams& lp,
                              const LevyModel& model, const SdeSpec& spec, Rng& rng) {
  StepResult out;
  out.y = y0;
  const bool with_noise = model.sigma > 0.0;
  double prev = 0.0;
  for (std::size_t m = 0; m < skel.size(); ++m) {
    const double dt = skel.times[m] - prev;
    const double dW = with_noise ? rng.normal() * std::sqrt(dt) : 0.0;
    out.y = euler_step(out.y, dW, skel.heights[m], dt, lp, model, spec);
    prev = skel.times[m];
    ++out.substeps;
  }
  return out;
}

StepResult propagate_q(double y0, const LevelParams& lp, const LevyModel& model,
                       const SdeSpec& spec, Rng& rng) {
  if (model.sigma > 0.0) {
    // Brownian increments are drawn after all jump draws, in time order, so
    // the materialized path is the reference draw order.
    const JumpSkeleton skel = generate_skeleton(lp, model, rng);
    return propagate_skeleton(y0, skel, lp, model, spec, rng);
  }

  // sigma == 0: stream the skeleton.  Same draw order as generate_skeleton
  // (inter-arrival, then height, per arrival), same refinement arithmetic,
  // no allocation.
  StepResult out;
  out.y = y0;
  const double drift_rate = model.drift - lp.f0;
  const bool driftless = (drift_rate == 0.0);

  double prev = 0.0;       // last refined grid time
  double t_arrival = 0.0;  // last arrival time
  double next_jump = 0.0;
  double next_height = 0.0;
  bool capped = false;

  // pull the first arrival
  {
    const double xi = rng.exponential(lp.lambda);
    const double next = t_arrival + xi;
    if (next >= 1.0) {
      next_jump = 1.0;
      capped = true;
    } else {
      next_jump = next;
      next_height = draw_jump(lp, rng);
      t_arrival = next;
    }
  }

  for (;;) {
    const double cand = prev + lp.h;
    if (cand < next_jump) {
      // refinement-only sub-interval: dL = 0, dt = cand - prev
      if (!driftless) out.y += spec.coeff(out.y) * (drift_rate * (cand - prev));
      prev = cand;
      ++out.substeps;
      continue;
    }
    // jump (or terminal) sub-interval
    const double dL = capped ? 0.0 : next_height;
    if (driftless) {
      if (dL != 0.0) out.y += spec.coeff(out.y) * dL;
    } else {
      out.y += spec.coeff(out.y) * (dL + drift_rate * (next_jump - prev));
    }
    prev = next_jump;
    ++out.substeps;
    if (capped) break;

    const double xi = rng.exponential(lp.lambda);
    const double next = t_arrival + xi;
    if (next >= 1.0) {
      next_jump = 1.0;
      capped = true;
    } else {
      next_jump = next;
      next_height = draw_jump(lp, rng);
      t_arrival = next;
    }
  }
  return out;
}

}  // namespace levypf
