#include "levypf/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace levypf {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double terminal_estimate(const PfReport& rep, std::size_t fn_index, bool unnormalized) {
  const double est = rep.step_estimates.back()[fn_index];
  return unnormalized ? std::exp(rep.log_nc) * est : est;
}

}  // namespace

RateFit estimate_rates(const LevyModel& model, const Coefficient& coeff, double y0,
                       int max_level, int samples, const StreamFactory& streams, int s0) {
  if (max_level < 4) {
    throw std::invalid_argument("rate estimation: at least 4 levels required for a fit");
  }
  if (samples < 16) throw std::invalid_argument("rate estimation: too few samples");

  SdeSpec spec;
  spec.coeff = coeff;
  spec.y0 = y0;

  RateFit fit;
  // Differences are stored and summed in index order so results do not
  // depend on the thread count.
  std::vector<double> diffs(static_cast<std::size_t>(samples), 0.0);
  for (int l = 1; l <= max_level; ++l) {
    const LevelParams lp_fine = make_level_params(model.measure, l, s0);
    const LevelParams lp_coarse = make_level_params(model.measure, l - 1, s0);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < samples; ++i) {
      Rng rng = streams.make(Purpose::oracle, l, 0, static_cast<std::uint64_t>(i));
      const CoupledResult r = propagate_m(y0, y0, lp_fine, lp_coarse, model, spec, rng);
      diffs[static_cast<std::size_t>(i)] = r.y_fine - r.y_coarse;
    }
    double s1 = 0.0, s2 = 0.0, s4 = 0.0;
    for (const double d : diffs) {
      s1 += d;
      s2 += d * d;
      s4 += d * d * d * d;
    }
    const double m = static_cast<double>(samples);
    const double weak = s1 / m;
    const double strong = s2 / m;
    const double weak_var = std::max(0.0, (s2 - m * weak * weak) / (m - 1.0));
    const double strong_var = std::max(0.0, (s4 - m * strong * strong) / (m - 1.0));
    fit.levels.push_back(l);
    fit.weak_means.push_back(weak);
    fit.weak_ses.push_back(std::sqrt(weak_var / m));
    fit.strong_means.push_back(strong);
    fit.strong_ses.push_back(std::sqrt(strong_var / m));
  }

  // Strong fit uses every level; the means are positive by construction.
  std::vector<double> xs, ys;
  const double log2_s0 = std::log2(static_cast<double>(s0));
  for (std::size_t i = 0; i < fit.levels.size(); ++i) {
    xs.push_back(-static_cast<double>(fit.levels[i]) * log2_s0);  // log2 h_l
    ys.push_back(std::log2(fit.strong_means[i]));
  }
  fit.beta_hat = fit_line(xs, ys).slope;

  // Weak fit: drop levels whose mean is indistinguishable from 0.
  std::vector<double> wxs, wys;
  for (std::size_t i = 0; i < fit.levels.size(); ++i) {
    const double m = std::fabs(fit.weak_means[i]);
    if (m == 0.0 || m < 2.0 * fit.weak_ses[i]) {
      fit.excluded_levels.push_back(fit.levels[i]);
      continue;
    }
    wxs.push_back(xs[i]);
    wys.push_back(std::log2(m));
  }
  if (wxs.size() < 3) {
    fit.weak_fit_all = true;
    fit.warning =
        "weak means are dominated by Monte Carlo noise at this sample size; "
        "the weak fit uses all levels and tracks the noise floor (~ h^{beta/2})";
    wxs.clear();
    wys.clear();
    for (std::size_t i = 0; i < fit.levels.size(); ++i) {
      const double m = std::fabs(fit.weak_means[i]);
      if (m == 0.0) continue;  // log undefined; skip (essentially impossible)
      wxs.push_back(xs[i]);
      wys.push_back(std::log2(m));
    }
  }
  fit.alpha_hat = fit_line(wxs, wys).slope;
  return fit;
}

Reference reference_solution(const MlModelFamily& family, int level, int particles,
                             int replicates, double ess_threshold, std::uint64_t master_seed,
                             std::uint64_t experiment, const std::vector<TestFn>& fs,
                             std::size_t fn_index, bool unnormalized) {
  if (replicates < 2) throw std::invalid_argument("reference: need at least 2 replicates");
  Reference ref;
  ref.level = level;
  ref.particles = particles;
  ref.replicates = replicates;

  const FeynmanKacModel fk = family.single(level);
  PfOptions opt;
  opt.particles = particles;
  opt.ess_threshold = ess_threshold;

  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(replicates));
  for (int r = 0; r < replicates; ++r) {
    const StreamFactory sf{derive_run_seed(master_seed, static_cast<std::uint64_t>(r),
                                           experiment)};
    const PfReport rep = run_pf(fk, opt, sf, fs);
    values.push_back(terminal_estimate(rep, fn_index, unnormalized));
    ref.cost += rep.substeps;
  }
  const MeanSe ms = mean_se(values);
  ref.value = ms.mean;
  ref.se = ms.se;
  return ref;
}

SweepReport mse_vs_cost(const MlModelFamily& family, const SweepConfig& cfg,
                        const Reference& reference, const std::vector<TestFn>& fs) {
  if (cfg.epsilons.empty()) throw std::invalid_argument("sweep: epsilon grid is empty");
  if (cfg.replicates < 2) throw std::invalid_argument("sweep: need at least 2 replicates");
  if (cfg.fn_index >= fs.size()) throw std::invalid_argument("sweep: test function index");

  SweepReport report;
  report.reference = reference;

  for (std::size_t p = 0; p < cfg.epsilons.size(); ++p) {
    const double eps = cfg.epsilons[p];
    MlConfig mc = cfg.ml;
    mc.epsilon = eps;
    const Allocation alloc = allocate_levels(mc);

    // Single-level arm: level L(eps), N = ceil(c * eps^-2).
    SweepPoint pf_pt;
    pf_pt.epsilon = eps;
    pf_pt.max_level = alloc.max_level;
    pf_pt.particles0 =
        std::max(2, static_cast<int>(std::ceil(cfg.pf_c_samples / (eps * eps))));
    {
      const FeynmanKacModel fk = family.single(alloc.max_level);
      PfOptions opt;
      opt.particles = pf_pt.particles0;
      opt.ess_threshold = cfg.ess_threshold;
      for (int r = 0; r < cfg.replicates; ++r) {
        // experiment ids keep every (arm, grid point) pair on disjoint streams
        const StreamFactory sf{derive_run_seed(
            cfg.master_seed, static_cast<std::uint64_t>(r),
            cfg.experiment_pf * 1000 + static_cast<std::uint64_t>(p))};
        const PfReport rep = run_pf(fk, opt, sf, fs);
        pf_pt.estimates.push_back(terminal_estimate(rep, cfg.fn_index, cfg.unnormalized));
        pf_pt.costs.push_back(rep.substeps);
      }
    }

    // Multilevel arm: allocated levels and particle counts.
    SweepPoint ml_pt;
    ml_pt.epsilon = eps;
    ml_pt.max_level = alloc.max_level;
    ml_pt.particles0 = alloc.particles[0];
    for (int r = 0; r < cfg.replicates; ++r) {
      const StreamFactory sf{derive_run_seed(
          cfg.master_seed, static_cast<std::uint64_t>(r),
          cfg.experiment_ml * 1000 + static_cast<std::uint64_t>(p))};
      const MlpfResult res = run_mlpf(family, mc, cfg.ess_threshold, sf, fs);
      double est;
      if (cfg.unnormalized) {
        est = ml_unnormalized_estimate(res.base, res.levels, cfg.fn_index).value;
      } else {
        est = res.estimates.back()[cfg.fn_index];
      }
      ml_pt.estimates.push_back(est);
      ml_pt.costs.push_back(res.substeps);
    }

    for (SweepPoint* pt : {&pf_pt, &ml_pt}) {
      double cost_acc = 0.0;
      double mse_acc = 0.0;
      for (std::size_t r = 0; r < pt->estimates.size(); ++r) {
        cost_acc += static_cast<double>(pt->costs[r]);
        const double e = pt->estimates[r] - reference.value;
        mse_acc += e * e;
      }
      pt->mean_cost = cost_acc / static_cast<double>(pt->estimates.size());
      pt->mse = mse_acc / static_cast<double>(pt->estimates.size());
    }
    report.pf.push_back(std::move(pf_pt));
    report.mlpf.push_back(std::move(ml_pt));
  }

  const auto fit_points = [](const std::vector<SweepPoint>& pts) {
    std::vector<double> xs, ys;
    for (const SweepPoint& pt : pts) {
      if (pt.mse > 0.0 && pt.mean_cost > 0.0) {
        xs.push_back(std::log10(pt.mean_cost));
        ys.push_back(std::log10(pt.mse));
      }
    }
    return xs.size() >= 2 ? fit_line(xs, ys) : LineFit{};
  };
  report.pf_fit = fit_points(report.pf);
  report.mlpf_fit = fit_points(report.mlpf);
  return report;
}

TvRate estimate_tv_rate(const LevyModel& model, const Coefficient& coeff, double y0,
                        int min_level, int max_level, int samples, int bins,
                        const StreamFactory& streams, int s0) {
  if (min_level < 1 || max_level <= min_level) {
    throw std::invalid_argument("tv rate: need levels 1 <= min < max");
  }
  SdeSpec spec;
  spec.coeff = coeff;
  spec.y0 = y0;

  // One-step samples per level; level l's sample doubles as the coarse side
  // of the (l+1, l) comparison.
  std::vector<std::vector<double>> per_level;
  for (int l = min_level - 1; l <= max_level; ++l) {
    const LevelParams lp = make_level_params(model.measure, l, s0);
    std::vector<double> ys(static_cast<std::size_t>(samples), 0.0);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < samples; ++i) {
      Rng rng = streams.make(Purpose::oracle, l, 1, static_cast<std::uint64_t>(i));
      ys[static_cast<std::size_t>(i)] = propagate_q(y0, lp, model, spec, rng).y;
    }
    per_level.push_back(std::move(ys));
  }

  TvRate out;
  std::vector<double> xs, lys;
  const double log2_s0 = std::log2(static_cast<double>(s0));
  for (int l = min_level; l <= max_level; ++l) {
    const std::vector<double>& fine = per_level[static_cast<std::size_t>(l - min_level + 1)];
    const std::vector<double>& coarse = per_level[static_cast<std::size_t>(l - min_level)];
    const double tv = histogram_tv(fine, coarse, bins);
    // Noise floor: TV between two halves of the same-law fine sample.
    const std::size_t half = fine.size() / 2;
    const std::vector<double> a(fine.begin(), fine.begin() + static_cast<std::ptrdiff_t>(half));
    const std::vector<double> b(fine.begin() + static_cast<std::ptrdiff_t>(half), fine.end());
    const double floor_tv = histogram_tv(a, b, bins);
    const double debiased = std::max(tv - floor_tv, 0.0);
    out.levels.push_back(l);
    out.tv.push_back(tv);
    out.debiased.push_back(debiased);
    // Levels whose distance is buried in histogram noise carry no slope
    // information and would wreck a log fit; only clearly resolved levels
    // enter the regression.
    if (tv > 2.0 * floor_tv && debiased > 0.0) {
      out.fitted_levels.push_back(l);
      xs.push_back(-static_cast<double>(l) * log2_s0);
      lys.push_back(std::log2(debiased));
    }
  }
  if (xs.size() >= 2) {
    out.slope = fit_line(xs, lys).slope;
  } else {
    out.warning =
        "law distances are below the histogram noise floor at this sample size; "
        "no decay rate fitted";
  }
  return out;
}

void write_rate_file(const std::string& path, const RateFit& fit,
                     const std::string& config_block) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report file: " + path);
  out << config_block;
  out << "# columns: level weak_mean weak_se strong_mean strong_se in_weak_fit\n";
  for (std::size_t i = 0; i < fit.levels.size(); ++i) {
    const bool excluded =
        std::find(fit.excluded_levels.begin(), fit.excluded_levels.end(), fit.levels[i]) !=
        fit.excluded_levels.end();
    out << fit.levels[i] << ' ' << fmt(fit.weak_means[i]) << ' ' << fmt(fit.weak_ses[i]) << ' '
        << fmt(fit.strong_means[i]) << ' ' << fmt(fit.strong_ses[i]) << ' '
        << (excluded && !fit.weak_fit_all ? 0 : 1) << '\n';
  }
  out << "# alpha_hat = " << fmt(fit.alpha_hat) << "\n";
  out << "# beta_hat = " << fmt(fit.beta_hat) << "\n";
  if (!fit.warning.empty()) out << "# warning: " << fit.warning << "\n";
}

void write_sweep_files(const std::string& points_path, const std::string& summary_path,
                       const SweepReport& report, const std::string& config_block) {
  {
    std::ofstream out(points_path);
    if (!out) throw std::runtime_error("cannot write report file: " + points_path);
    out << config_block;
    out << "# columns: estimator epsilon level particles0 replicate estimate cost\n";
    const auto dump = [&out](const char* name, const std::vector<SweepPoint>& pts) {
      for (const SweepPoint& pt : pts) {
        for (std::size_t r = 0; r < pt.estimates.size(); ++r) {
          out << name << ' ' << fmt(pt.epsilon) << ' ' << pt.max_level << ' ' << pt.particles0
              << ' ' << r << ' ' << fmt(pt.estimates[r]) << ' ' << pt.costs[r] << '\n';
        }
      }
    };
    dump("pf", report.pf);
    dump("mlpf", report.mlpf);
  }
  {
    std::ofstream out(summary_path);
    if (!out) throw std::runtime_error("cannot write report file: " + summary_path);
    out << config_block;
    out << "# columns: estimator epsilon level mean_cost mse log10_cost log10_mse\n";
    const auto dump = [&out](const char* name, const std::vector<SweepPoint>& pts) {
      for (const SweepPoint& pt : pts) {
        out << name << ' ' << fmt(pt.epsilon) << ' ' << pt.max_level << ' '
            << fmt(pt.mean_cost) << ' ' << fmt(pt.mse) << ' ' << fmt(std::log10(pt.mean_cost))
            << ' ' << fmt(pt.mse > 0 ? std::log10(pt.mse) : 0.0) << '\n';
      }
    };
    dump("pf", report.pf);
    dump("mlpf", report.mlpf);
    out << "# pf_slope = " << fmt(report.pf_fit.slope) << "\n";
    out << "# mlpf_slope = " << fmt(report.mlpf_fit.slope) << "\n";
    out << "# reference = " << fmt(report.reference.value) << "\n";
    out << "# reference_se = " << fmt(report.reference.se) << "\n";
  }
}

}  // namespace levypf
