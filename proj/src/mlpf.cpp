#include "levypf/mlpf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace levypf {

Allocation allocate_levels(const MlConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("allocation: epsilon must be positive");
  if (cfg.s0 < 2) throw std::invalid_argument("allocation: step ratio must be at least 2");
  if (!(cfg.alpha > 0.0) || !(cfg.beta > 0.0) || !(cfg.gamma > 0.0)) {
    throw std::invalid_argument("allocation: rate exponents must be positive");
  }

  Allocation out;
  const double log_s0 = std::log(static_cast<double>(cfg.s0));
  const double raw = cfg.c_level * (-std::log(cfg.epsilon)) / (cfg.alpha * log_s0);
  int max_level = static_cast<int>(std::ceil(raw));
  if (max_level < 0) {
    max_level = 0;
    out.warning = "target accuracy coarser than level 0; running a single level";
  }
  out.max_level = max_level;

  // Particle inflation factor by the usual three regimes of the variance sum.
  double k_eps = 1.0;
  if (cfg.beta == cfg.gamma) {
    k_eps = static_cast<double>(std::max(max_level, 1));
  } else if (cfg.beta < cfg.gamma) {
    const double h_max = std::pow(static_cast<double>(cfg.s0), -max_level);
    k_eps = std::pow(h_max, (cfg.beta - cfg.gamma) / 2.0);
  }

  const double eps2 = cfg.epsilon * cfg.epsilon;
  out.particles.reserve(static_cast<std::size_t>(max_level) + 1);
  for (int l = 0; l <= max_level; ++l) {
    const double h_l = std::pow(static_cast<double>(cfg.s0), -l);
    const double raw_n =
        cfg.c_samples / eps2 * std::pow(h_l, (cfg.beta + cfg.gamma) / 2.0) * k_eps;
    int n_l = static_cast<int>(std::ceil(raw_n));
    if (n_l < 2) n_l = 2;
    out.particles.push_back(n_l);
  }

  if (cfg.beta > 2.0 * cfg.gamma) {
    out.cost_case = "eps^-2";
  } else if (cfg.beta == 2.0 * cfg.gamma) {
    out.cost_case = "eps^-2 * log(eps)^2";
  } else {
    out.cost_case = "eps^-(2 + (2*gamma - beta)/beta)";
  }
  return out;
}

CoupledIndices coupled_resample(const std::vector<double>& weights_fine,
                                const std::vector<double>& weights_coarse, std::size_t count,
                                Rng& rng) {
  const std::size_t n = weights_fine.size();
  if (weights_coarse.size() != n) {
    throw std::invalid_argument("coupled_resample: weight size mismatch");
  }

  // Overlap and residuals of the maximal coupling.  Residual components are
  // clamped at zero so floating-point cancellation cannot produce negative
  // probabilities.
  std::vector<double> cum_min(n);
  std::vector<double> cum_res_f(n);
  std::vector<double> cum_res_c(n);
  double overlap = 0.0;
  double res_f = 0.0;
  double res_c = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double m = std::min(weights_fine[i], weights_coarse[i]);
    overlap += m;
    cum_min[i] = overlap;
    res_f += std::max(weights_fine[i] - m, 0.0);
    res_c += std::max(weights_coarse[i] - m, 0.0);
    cum_res_f[i] = res_f;
    cum_res_c[i] = res_c;
  }
  const bool residuals_usable = res_f > 0.0 && res_c > 0.0;

  const auto pick = [](const std::vector<double>& cum, double u) {
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    if (it == cum.end()) --it;
    return static_cast<std::uint32_t>(it - cum.begin());
  };

  CoupledIndices out;
  out.fine.resize(count);
  out.coarse.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double u = rng.uniform01();
    if (u < overlap || !residuals_usable) {
      const std::uint32_t idx = pick(cum_min, rng.uniform01() * overlap);
      out.fine[i] = idx;
      out.coarse[i] = idx;
      ++out.common;
    } else {
      out.fine[i] = pick(cum_res_f, rng.uniform01() * res_f);
      out.coarse[i] = pick(cum_res_c, rng.uniform01() * res_c);
    }
  }
  return out;
}

LevelReport run_coupled_pf(const CoupledFkModel& fk, const PfOptions& opt,
                           const StreamFactory& streams, const std::vector<TestFn>& fs) {
  if (fk.horizon <= 0) throw std::invalid_argument("run_coupled_pf: horizon must be positive");
  if (opt.particles < 1) throw std::invalid_argument("run_coupled_pf: need at least one particle");
  if (fk.level < 1) throw std::invalid_argument("run_coupled_pf: level must be at least 1");
  const int n = fk.horizon;
  const std::size_t N = static_cast<std::size_t>(opt.particles);

  LevelReport report;
  report.level = fk.level;

  std::vector<double> prev_f(N, fk.y0), prev_c(N, fk.y0);
  std::vector<double> cur_f(N, 0.0), cur_c(N, 0.0);
  std::vector<double> wf(N, 1.0 / static_cast<double>(N));
  std::vector<double> wc(N, 1.0 / static_cast<double>(N));
  std::vector<double> gf(N, 0.0), gc(N, 0.0);

  for (int k = 1; k <= n; ++k) {
    std::uint64_t substep_total = 0;
    const int count = static_cast<int>(N);
#pragma omp parallel for schedule(static) reduction(+ : substep_total)
    for (int i = 0; i < count; ++i) {
      const std::size_t ii = static_cast<std::size_t>(i);
      Rng rng = streams.make(Purpose::propagate, fk.level, static_cast<std::uint64_t>(k),
                             static_cast<std::uint64_t>(i));
      std::uint64_t sub = 0;
      double yf = prev_f[ii];
      double yc = prev_c[ii];
      fk.kernel(yf, yc, rng, sub);
      cur_f[ii] = yf;
      cur_c[ii] = yc;
      substep_total += sub;
    }
    report.substeps += substep_total;
    report.kernel_draws += N;

    for (std::size_t i = 0; i < N; ++i) {
      gf[i] = fk.potential(k, prev_f[i], cur_f[i]);
      gc[i] = fk.potential(k, prev_c[i], cur_c[i]);
    }
    const double factor_f = reweight(wf, gf, k, "fine");
    const double factor_c = reweight(wc, gc, k, "coarse");
    report.log_nc_factors_fine.push_back(factor_f);
    report.log_nc_factors_coarse.push_back(factor_c);
    report.log_nc_fine += factor_f;
    report.log_nc_coarse += factor_c;

    std::vector<double> est_f(fs.size(), 0.0), est_c(fs.size(), 0.0);
    for (std::size_t j = 0; j < fs.size(); ++j) {
      double acc_f = 0.0, acc_c = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        if (wf[i] != 0.0) acc_f += wf[i] * fs[j](cur_f[i]);
        if (wc[i] != 0.0) acc_c += wc[i] * fs[j](cur_c[i]);
      }
      est_f[j] = acc_f;
      est_c[j] = acc_c;
    }
    report.fine_estimates.push_back(std::move(est_f));
    report.coarse_estimates.push_back(std::move(est_c));

    const double ess_min = std::min(ess(wf), ess(wc));
    if (k < n && ess_min < opt.ess_threshold * static_cast<double>(N)) {
      Rng rng = streams.make(Purpose::resample, fk.level, static_cast<std::uint64_t>(k), 0);
      const CoupledIndices idx = coupled_resample(wf, wc, N, rng);
      for (std::size_t i = 0; i < N; ++i) {
        prev_f[i] = cur_f[idx.fine[i]];
        prev_c[i] = cur_c[idx.coarse[i]];
      }
      std::fill(wf.begin(), wf.end(), 1.0 / static_cast<double>(N));
      std::fill(wc.begin(), wc.end(), 1.0 / static_cast<double>(N));
      ++report.resample_count;
    } else {
      prev_f.swap(cur_f);
      prev_c.swap(cur_c);
    }
  }
  return report;
}

std::vector<std::vector<double>> ml_filter_estimate(const PfReport& base,
                                                    const std::vector<LevelReport>& levels) {
  std::vector<std::vector<double>> out = base.step_estimates;
  for (const LevelReport& lev : levels) {
    if (lev.fine_estimates.size() != out.size()) {
      throw std::invalid_argument("ml_filter_estimate: step count mismatch across levels");
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (lev.fine_estimates[k].size() != out[k].size()) {
        throw std::invalid_argument("ml_filter_estimate: test function count mismatch");
      }
      for (std::size_t j = 0; j < out[k].size(); ++j) {
        out[k][j] += lev.fine_estimates[k][j] - lev.coarse_estimates[k][j];
      }
    }
  }
  return out;
}

MlNcEstimate ml_nc_estimate(const PfReport& base, const std::vector<LevelReport>& levels) {
  MlNcEstimate out;
  out.level_contributions.push_back(std::exp(base.log_nc));
  out.value = out.level_contributions[0];
  for (const LevelReport& lev : levels) {
    const double diff = std::exp(lev.log_nc_fine) - std::exp(lev.log_nc_coarse);
    out.level_contributions.push_back(diff);
    out.value += diff;
  }
  out.nonpositive = !(out.value > 0.0);
  return out;
}

MlNcEstimate ml_unnormalized_estimate(const PfReport& base,
                                      const std::vector<LevelReport>& levels,
                                      std::size_t fn_index) {
  if (base.step_estimates.empty() || fn_index >= base.step_estimates.back().size()) {
    throw std::invalid_argument("ml_unnormalized_estimate: test function index out of range");
  }
  MlNcEstimate out;
  const std::size_t last = base.step_estimates.size() - 1;
  out.level_contributions.push_back(std::exp(base.log_nc) * base.step_estimates[last][fn_index]);
  out.value = out.level_contributions[0];
  for (const LevelReport& lev : levels) {
    const double diff = std::exp(lev.log_nc_fine) * lev.fine_estimates[last][fn_index] -
                        std::exp(lev.log_nc_coarse) * lev.coarse_estimates[last][fn_index];
    out.level_contributions.push_back(diff);
    out.value += diff;
  }
  out.nonpositive = !(out.value > 0.0);
  return out;
}

MlpfResult run_mlpf(const MlModelFamily& family, const MlConfig& cfg, double ess_threshold,
                    const StreamFactory& streams, const std::vector<TestFn>& fs) {
  return run_mlpf_alloc(family, allocate_levels(cfg), ess_threshold, streams, fs);
}

MlpfResult run_mlpf_alloc(const MlModelFamily& family, const Allocation& alloc,
                          double ess_threshold, const StreamFactory& streams,
                          const std::vector<TestFn>& fs) {
  if (alloc.particles.size() != static_cast<std::size_t>(alloc.max_level) + 1) {
    throw std::invalid_argument("run_mlpf: need one particle count per level 0..L");
  }
  MlpfResult out;
  out.alloc = alloc;

  PfOptions base_opt;
  base_opt.particles = out.alloc.particles[0];
  base_opt.ess_threshold = ess_threshold;
  out.base = run_pf(family.single(0), base_opt, streams, fs);
  out.substeps = out.base.substeps;
  out.kernel_draws = out.base.kernel_draws;

  out.levels.reserve(static_cast<std::size_t>(out.alloc.max_level));
  for (int l = 1; l <= out.alloc.max_level; ++l) {
    PfOptions opt;
    opt.particles = out.alloc.particles[static_cast<std::size_t>(l)];
    opt.ess_threshold = ess_threshold;
    out.levels.push_back(run_coupled_pf(family.coupled(l), opt, streams, fs));
    out.substeps += out.levels.back().substeps;
    out.kernel_draws += out.levels.back().kernel_draws;
  }

  out.estimates = ml_filter_estimate(out.base, out.levels);
  out.nc = ml_nc_estimate(out.base, out.levels);
  return out;
}

}  // namespace levypf
