#include "levypf/couple.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace levypf {

void check_level_pair(const LevelParams& lp_fine, const LevelParams& lp_coarse) {
  if (lp_fine.level != lp_coarse.level + 1) {
    throw std::invalid_argument("coupled kernel: fine level must be coarse level + 1 (got " +
                                std::to_string(lp_fine.level) + " over " +
                                std::to_string(lp_coarse.level) + ")");
  }
  if (!(lp_fine.h < lp_coarse.h) || !(lp_fine.delta < lp_coarse.delta)) {
    throw std::invalid_argument(
        "coupled kernel: fine step and truncation must be strictly smaller than coarse");
  }
}

CoupledSkeleton generate_coupled_skeleton(const LevelParams& lp_fine,
                                          const LevelParams& lp_coarse,
                                          const LevyModel& model, Rng& rng) {
  check_level_pair(lp_fine, lp_coarse);
  (void)model;

  // Fine arrival stream: inter-arrival time then height, per arrival.
  std::vector<double> jump_times;
  std::vector<double> jump_heights;
  double t = 0.0;
  for (;;) {
    const double xi = rng.exponential(lp_fine.lambda);
    const double next = t + xi;
    if (next >= 1.0) break;
    jump_times.push_back(next);
    jump_heights.push_back(draw_jump(lp_fine, rng));
    t = next;
  }

  // Coarse jumps: the fine jumps large enough to survive the coarser
  // truncation.  Thinning a Poisson stream this way reproduces the
  // level-(l-1) jump law exactly.
  std::vector<double> coarse_times;
  std::vector<double> coarse_heights;
  for (std::size_t i = 0; i < jump_times.size(); ++i) {
    if (std::fabs(jump_heights[i]) >= lp_coarse.delta) {
      coarse_times.push_back(jump_times[i]);
      coarse_heights.push_back(jump_heights[i]);
    }
  }

  CoupledSkeleton skel;
  skel.coarse = refine_grid(coarse_times, coarse_heights, lp_coarse.h);
  const JumpSkeleton fine_base = refine_grid(jump_times, jump_heights, lp_fine.h);

  // Final fine grid: union of the fine refinement with the coarse grid, so
  // every coarse sub-interval is a whole number of fine sub-intervals.
  skel.fine.times.reserve(fine_base.size() + skel.coarse.size());
  skel.fine.heights.reserve(fine_base.size() + skel.coarse.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fine_base.size() || j < skel.coarse.size()) {
    const double tf = (i < fine_base.size()) ? fine_base.times[i] : 2.0;
    const double tc = (j < skel.coarse.size()) ? skel.coarse.times[j] : 2.0;
    if (tf < tc) {
      skel.fine.times.push_back(tf);
      skel.fine.heights.push_back(fine_base.heights[i]);
      ++i;
    } else if (tc < tf) {
      skel.fine.times.push_back(tc);
      skel.fine.heights.push_back(0.0);
      ++j;
    } else {
      skel.fine.times.push_back(tf);
      skel.fine.heights.push_back(fine_base.heights[i]);
      ++i;
      ++j;
    }
  }

  if (model.sigma > 0.0) {
    // Shared Brownian increments, one per final fine sub-interval, drawn in
    // time order after all jump draws.  Coarse increments are sums of these.
    skel.brownian.reserve(skel.fine.size());
    double prev = 0.0;
    for (std::size_t m = 0; m < skel.fine.size(); ++m) {
      const double dt = skel.fine.times[m] - prev;
      skel.brownian.push_back(rng.normal() * std::sqrt(dt));
      prev = skel.fine.times[m];
    }
  }
  return skel;
}

CoupledResult propagate_coupled_skeleton(double y_fine, double y_coarse,
                                         const CoupledSkeleton& skel,
                                         const LevelParams& lp_fine,
                                         const LevelParams& lp_coarse,
                                         const LevyModel& model, const SdeSpec& spec) {
  CoupledResult out;
  out.y_fine = y_fine;
  out.y_coarse = y_coarse;
  const bool with_noise = !skel.brownian.empty();

  double prev = 0.0;         // last fine grid time
  double prev_c = 0.0;       // last coarse grid time
  double dw_sum = 0.0;       // Brownian increment accumulated since prev_c
  std::size_t cidx = 0;
  for (std::size_t m = 0; m < skel.fine.size(); ++m) {
    const double tm = skel.fine.times[m];
    const double dt = tm - prev;
    const double dw = with_noise ? skel.brownian[m] : 0.0;
    out.y_fine = euler_step(out.y_fine, dw, skel.fine.heights[m], dt, lp_fine, model, spec);
    ++out.substeps_fine;
    dw_sum += dw;
    if (cidx < skel.coarse.size() && skel.coarse.times[cidx] == tm) {
      out.y_coarse = euler_step(out.y_coarse, dw_sum, skel.coarse.heights[cidx], tm - prev_c,
                                lp_coarse, model, spec);
      ++out.substeps_coarse;
      prev_c = tm;
      dw_sum = 0.0;
      ++cidx;
    }
    prev = tm;
  }
  return out;
}

CoupledResult propagate_m(double y_fine, double y_coarse, const LevelParams& lp_fine,
                          const LevelParams& lp_coarse, const LevyModel& model,
                          const SdeSpec& spec, Rng& rng) {
  if (model.sigma > 0.0) {
    const CoupledSkeleton skel = generate_coupled_skeleton(lp_fine, lp_coarse, model, rng);
    return propagate_coupled_skeleton(y_fine, y_coarse, skel, lp_fine, lp_coarse, model, spec);
  }
  check_level_pair(lp_fine, lp_coarse);

  // sigma == 0: stream both grids in merged time order without materializing
  // them.  Draw order and refinement arithmetic match the skeleton builder,
  // so results are bitwise identical to the materialized path.
  CoupledResult out;
  out.y_fine = y_fine;
  out.y_coarse = y_coarse;
  const double drift_f = model.drift - lp_fine.f0;
  const double drift_c = model.drift - lp_coarse.f0;
  const bool driftless_f = (drift_f == 0.0);
  const bool driftless_c = (drift_c == 0.0);

  double prev_m = 0.0;     // last merged grid time (fine Euler base)
  double prev_f = 0.0;     // last fine-refinement time (fine ladder anchor)
  double prev_c = 0.0;     // last coarse grid time (ladder anchor + Euler base)
  double t_arrival = 0.0;  // last arrival time
  double next_jump = 0.0;
  double next_height = 0.0;
  bool capped = false;

  {
    const double xi = rng.exponential(lp_fine.lambda);
    const double next = t_arrival + xi;
    if (next >= 1.0) {
      next_jump = 1.0;
      capped = true;
    } else {
      next_jump = next;
      next_height = draw_jump(lp_fine, rng);
      t_arrival = next;
    }
  }

  for (;;) {
    const double fine_cand = prev_f + lp_fine.h;
    const bool fine_is_jump = !(fine_cand < next_jump);
    const double fine_next = fine_is_jump ? next_jump : fine_cand;
    const double coarse_cand = prev_c + lp_coarse.h;

    if (coarse_cand < fine_next) {
      // Coarse ladder time falling between fine-refinement points: a merged
      // grid point for the fine recursion, a boundary for the coarse one.
      if (!driftless_f) out.y_fine += spec.coeff(out.y_fine) * (drift_f * (coarse_cand - prev_m));
      if (!driftless_c) {
        out.y_coarse += spec.coeff(out.y_coarse) * (drift_c * (coarse_cand - prev_c));
      }
      prev_m = coarse_cand;
      prev_c = coarse_cand;
      ++out.substeps_fine;
      ++out.substeps_coarse;
      continue;
    }

    // Fine-refinement point: ladder time, jump, or the terminal cap.
    const double tm = fine_next;
    const bool terminal = fine_is_jump && capped;
    const double dl = (fine_is_jump && !capped) ? next_height : 0.0;
    const bool big = std::fabs(dl) >= lp_coarse.delta;

    if (driftless_f) {
      if (dl != 0.0) out.y_fine += spec.coeff(out.y_fine) * dl;
    } else {
      out.y_fine += spec.coeff(out.y_fine) * (dl + drift_f * (tm - prev_m));
    }
    ++out.substeps_fine;

    if (coarse_cand == tm || big || terminal) {
      const double dl_c = big ? dl : 0.0;
      if (driftless_c) {
        if (dl_c != 0.0) out.y_coarse += spec.coeff(out.y_coarse) * dl_c;
      } else {
        out.y_coarse += spec.coeff(out.y_coarse) * (dl_c + drift_c * (tm - prev_c));
      }
      ++out.substeps_coarse;
      prev_c = tm;
    }
    prev_m = tm;
    prev_f = tm;
    if (terminal) break;

    if (fine_is_jump) {
      const double xi = rng.exponential(lp_fine.lambda);
      const double next = t_arrival + xi;
      if (next >= 1.0) {
        next_jump = 1.0;
        capped = true;
      } else {
        next_jump = next;
        next_height = draw_jump(lp_fine, rng);
        t_arrival = next;
      }
    }
  }
  return out;
}

}  // namespace levypf
