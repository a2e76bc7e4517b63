#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "levypf/bench.hpp"
#include "levypf/config.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

// Command-line front end.  Four subcommands:
//   rates    weak/strong convergence rates from coupled level-pair samples
//   filter   particle filter (single-level or multilevel) on an observation series
//   barrier  knock-out barrier option price via the annealed potential sequence
//   sweep    MSE-versus-cost comparison of the two estimators on synthetic data
//
// Exit codes: 0 success, 1 configuration error, 2 data error, 3 particle
// degeneracy.

namespace {

using namespace levypf;

// Experiment indices keep the RNG streams of unrelated commands disjoint
// even under one master seed.
constexpr std::uint64_t kExpRates = 900;
constexpr std::uint64_t kExpFilter = 910;
constexpr std::uint64_t kExpBarrier = 920;
constexpr std::uint64_t kExpSweepData = 930;
constexpr std::uint64_t kExpSweepRef = 940;
constexpr std::uint64_t kExpSweepPf = 950;
constexpr std::uint64_t kExpSweepMl = 960;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

LevyModel build_model(const RunConfig& cfg) {
  LevyModel model;
  model.measure = StableMeasure{cfg.c, cfg.phi, cfg.xstar, cfg.one_sided};
  model.sigma = cfg.sigma;
  model.drift = cfg.drift;
  validate(model);
  return model;
}

Coefficient build_coeff(const RunConfig& cfg) {
  return cfg.constant_coeff ? constant_coefficient(cfg.coeff_scale)
                            : linear_coefficient(cfg.coeff_scale);
}

MlConfig build_ml_config(const RunConfig& cfg, double epsilon) {
  MlConfig mc;
  mc.epsilon = epsilon;
  mc.alpha = cfg.alpha;
  mc.beta = cfg.beta;
  mc.gamma = cfg.gamma;
  mc.s0 = cfg.s0;
  mc.c_level = cfg.c_level;
  mc.c_samples = cfg.c_samples;
  return mc;
}

// The accuracy that makes allocate_levels pick exactly `level`:
// eps = s0^(-alpha * level / c_level), so ceil(c_level * -ln(eps) / (alpha ln s0))
// lands on `level` without rounding slack.
double epsilon_for_level(const RunConfig& cfg, int level) {
  return std::pow(static_cast<double>(cfg.s0), -cfg.alpha * level / cfg.c_level);
}

void apply_threads(const RunConfig& cfg) {
#ifdef _OPENMP
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#else
  (void)cfg;
#endif
}

void check_common(const RunConfig& cfg) {
  if (!(cfg.ess_threshold > 0.0 && cfg.ess_threshold <= 1.0))
    throw ConfigError("ess_threshold must be in (0, 1]");
  if (cfg.threads < 0) throw ConfigError("threads must be >= 0");
  if (cfg.estimator != "pf" && cfg.estimator != "mlpf")
    throw ConfigError("unknown estimator '" + cfg.estimator + "'; expected pf or mlpf");
}

std::ofstream open_report(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/" + name;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path);
  return out;
}

// Replaces every potential with 1, turning the filter into plain Monte Carlo
// for validation runs.
MlModelFamily with_uniform_potential(MlModelFamily family) {
  auto single = family.single;
  family.single = [single](int level) {
    FeynmanKacModel fk = single(level);
    fk.potential = [](int, double, double) { return 1.0; };
    return fk;
  };
  auto coupled = family.coupled;
  family.coupled = [coupled](int level) {
    CoupledFkModel fk = coupled(level);
    fk.potential = [](int, double, double) { return 1.0; };
    return fk;
  };
  return family;
}

Allocation resolve_allocation(const RunConfig& cfg, double epsilon) {
  Allocation alloc = allocate_levels(build_ml_config(cfg, epsilon));
  if (!cfg.particles.empty()) {
    if (static_cast<int>(cfg.particles.size()) != alloc.max_level + 1)
      throw ConfigError("--particles needs one entry per level (" +
                        std::to_string(alloc.max_level + 1) + " here), got " +
                        std::to_string(cfg.particles.size()));
    for (int n : cfg.particles)
      if (n < 2) throw ConfigError("--particles entries must be >= 2");
    alloc.particles = cfg.particles;
  }
  return alloc;
}

int default_pf_particles(const RunConfig& cfg, double epsilon) {
  const double raw = cfg.pf_c_samples / (epsilon * epsilon);
  const double n = std::ceil(raw);
  return std::max(100, n > 2e9 ? 2000000000 : static_cast<int>(n));
}

// ---------------------------------------------------------------------------

int cmd_rates(RunConfig cfg) {
  const int levels = cfg.levels < 0 ? 8 : cfg.levels;
  if (levels < 4) throw ConfigError("rates: at least 4 levels required");
  if (cfg.samples < 16) throw ConfigError("rates: at least 16 samples required");
  cfg.levels = levels;
  check_common(cfg);
  apply_threads(cfg);

  const LevyModel model = build_model(cfg);
  const Coefficient coeff = build_coeff(cfg);
  const StreamFactory streams{derive_run_seed(cfg.seed, 0, kExpRates)};

  const RateFit fit =
      estimate_rates(model, coeff, cfg.y0, levels, cfg.samples, streams, cfg.s0);

  std::filesystem::create_directories(cfg.out_dir);
  const std::string path = cfg.out_dir + "/rates.txt";
  write_rate_file(path, fit, provenance_block(cfg));

  std::printf("levels 1..%d, %d coupled samples per level\n", levels, cfg.samples);
  for (std::size_t i = 0; i < fit.levels.size(); ++i) {
    std::printf("  level %d: weak %.6g (se %.3g)%s  strong %.6g (se %.3g)\n", fit.levels[i],
                fit.weak_means[i], fit.weak_ses[i],
                std::find(fit.excluded_levels.begin(), fit.excluded_levels.end(),
                          fit.levels[i]) != fit.excluded_levels.end()
                    ? " [excluded from weak fit]"
                    : "",
                fit.strong_means[i], fit.strong_ses[i]);
  }
  std::printf("alpha_hat = %.6g\nbeta_hat = %.6g\n", fit.alpha_hat, fit.beta_hat);
  if (!fit.warning.empty()) std::printf("warning: %s\n", fit.warning.c_str());
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

int cmd_filter(RunConfig cfg) {
  check_common(cfg);
  apply_threads(cfg);

  FilterProblem prob;
  if (!cfg.data_path.empty()) {
    prob = load_returns(cfg.data_path);
  } else if (cfg.uniform_potential) {
    if (cfg.horizon < 1) throw ConfigError("filter: horizon must be >= 1");
    prob.observations.assign(static_cast<std::size_t>(cfg.horizon), 0.0);
  } else {
    throw ConfigError("filter: --data is required (or --uniform-potential for a dry run)");
  }
  cfg.horizon = static_cast<int>(prob.observations.size());

  const LevyModel model = build_model(cfg);
  const Coefficient coeff = build_coeff(cfg);

  MlModelFamily family = filter_family(model, coeff, cfg.y0, prob, cfg.s0);
  if (cfg.uniform_potential) family = with_uniform_potential(family);

  std::vector<TestFn> fs = {find_test_function("exp")->fn, find_test_function("exp_clipped")->fn};

  if (cfg.epsilons.empty()) throw ConfigError("filter: epsilon list is empty");
  const double epsilon =
      cfg.levels >= 0 ? epsilon_for_level(cfg, cfg.levels) : cfg.epsilons[0];
  const StreamFactory streams{derive_run_seed(cfg.seed, 0, kExpFilter)};

  std::vector<std::vector<double>> estimates;
  std::string nc_lines;
  std::uint64_t cost = 0;
  int resamples = 0;

  if (cfg.estimator == "pf") {
    const Allocation probe = allocate_levels(build_ml_config(cfg, epsilon));
    const int level = cfg.levels >= 0 ? cfg.levels : probe.max_level;
    int n = cfg.particles.empty() ? default_pf_particles(cfg, epsilon) : cfg.particles[0];
    if (n < 2) throw ConfigError("--particles entries must be >= 2");
    cfg.levels = level;
    cfg.particles = {n};

    PfOptions opt;
    opt.particles = n;
    opt.ess_threshold = cfg.ess_threshold;
    const PfReport rep = run_pf(family.single(level), opt, streams, fs);

    estimates = rep.step_estimates;
    cost = rep.substeps;
    resamples = rep.resample_count;
    nc_lines += "# log_nc = " + fmt17(rep.log_nc) + "\n";
    std::printf("single-level filter: level %d, %d particles, %zu steps\n", level, n,
                prob.observations.size());
    std::printf("log normalizing constant = %.10g\n", rep.log_nc);
  } else {
    const Allocation alloc = resolve_allocation(cfg, epsilon);
    cfg.levels = alloc.max_level;
    cfg.particles = alloc.particles;
    if (!alloc.warning.empty()) std::printf("note: %s\n", alloc.warning.c_str());

    const MlpfResult res = run_mlpf_alloc(family, alloc, cfg.ess_threshold, streams, fs);

    estimates = res.estimates;
    cost = res.substeps;
    for (const LevelReport& lr : res.levels) resamples += lr.resample_count;
    resamples += res.base.resample_count;

    nc_lines += "# nc = " + fmt17(res.nc.value) + "\n";
    for (std::size_t l = 0; l < res.nc.level_contributions.size(); ++l)
      nc_lines += "# nc_contribution_" + std::to_string(l) + " = " +
                  fmt17(res.nc.level_contributions[l]) + "\n";
    std::printf("multilevel filter: levels 0..%d, particles", alloc.max_level);
    for (int n : alloc.particles) std::printf(" %d", n);
    std::printf(", %zu steps\n", prob.observations.size());
    std::printf("normalizing constant = %.10g\n", res.nc.value);
    if (res.nc.nonpositive)
      std::printf("warning: the telescoped normalizing constant is not positive; "
                  "increase c_samples or reduce the level count\n");
  }

  std::ofstream out = open_report(cfg.out_dir, "filter.txt");
  out << provenance_block(cfg);
  out << nc_lines;
  out << "# columns: step exp exp_clipped\n";
  for (std::size_t k = 0; k < estimates.size(); ++k)
    out << (k + 1) << " " << fmt17(estimates[k][0]) << " " << fmt17(estimates[k][1]) << "\n";
  out.close();

  const std::size_t last = estimates.size() - 1;
  std::printf("terminal estimates: exp %.10g, exp_clipped %.10g\n", estimates[last][0],
              estimates[last][1]);
  std::printf("cost %llu substeps, %d resampling passes\n",
              static_cast<unsigned long long>(cost), resamples);
  std::printf("wrote %s/filter.txt\n", cfg.out_dir.c_str());
  return 0;
}

int cmd_barrier(RunConfig cfg) {
  check_common(cfg);
  apply_threads(cfg);
  if (cfg.upper <= cfg.lower) throw ConfigError("barrier: upper must exceed lower");
  if (cfg.barrier_horizon < 1) throw ConfigError("barrier: horizon must be >= 1");

  const LevyModel model = build_model(cfg);
  const Coefficient coeff = build_coeff(cfg);
  BarrierProblem prob;
  prob.strike = cfg.strike;
  prob.lower = cfg.lower;
  prob.upper = cfg.upper;
  prob.horizon = cfg.barrier_horizon;
  prob.smooth_floor = cfg.smooth_floor;

  const MlModelFamily family = barrier_family(model, coeff, cfg.y0, prob, cfg.s0);
  const double strike = cfg.strike;
  std::vector<TestFn> fs = {[strike](double y) { return barrier_correction(y, strike); }};

  const int level = cfg.levels < 0 ? 4 : cfg.levels;
  cfg.levels = level;
  const double epsilon = epsilon_for_level(cfg, level);
  const StreamFactory streams{derive_run_seed(cfg.seed, 0, kExpBarrier)};

  double value = 0.0;
  bool nonpositive = false;
  std::vector<double> contributions;
  std::uint64_t cost = 0;

  if (cfg.estimator == "pf") {
    int n = cfg.particles.empty() ? default_pf_particles(cfg, epsilon) : cfg.particles[0];
    if (n < 2) throw ConfigError("--particles entries must be >= 2");
    cfg.particles = {n};

    PfOptions opt;
    opt.particles = n;
    opt.ess_threshold = cfg.ess_threshold;
    const PfReport rep = run_pf(family.single(level), opt, streams, fs);

    value = std::exp(rep.log_nc) * rep.step_estimates.back()[0];
    nonpositive = !(value > 0.0);
    contributions = {value};
    cost = rep.substeps;
    std::printf("single-level barrier price: level %d, %d particles\n", level, n);
  } else {
    const Allocation alloc = resolve_allocation(cfg, epsilon);
    cfg.particles = alloc.particles;
    if (!alloc.warning.empty()) std::printf("note: %s\n", alloc.warning.c_str());

    const MlpfResult res = run_mlpf_alloc(family, alloc, cfg.ess_threshold, streams, fs);
    const MlNcEstimate z = ml_unnormalized_estimate(res.base, res.levels, 0);

    value = z.value;
    nonpositive = z.nonpositive;
    contributions = z.level_contributions;
    cost = res.substeps;
    std::printf("multilevel barrier price: levels 0..%d, particles", alloc.max_level);
    for (int n : alloc.particles) std::printf(" %d", n);
    std::printf("\n");
  }

  std::ofstream out = open_report(cfg.out_dir, "barrier.txt");
  out << provenance_block(cfg);
  out << "# columns: level contribution\n";
  for (std::size_t l = 0; l < contributions.size(); ++l)
    out << l << " " << fmt17(contributions[l]) << "\n";
  out << "# value = " << fmt17(value) << "\n";
  out << "# cost_substeps = " << cost << "\n";
  out.close();

  for (std::size_t l = 0; l < contributions.size(); ++l)
    std::printf("  level %zu contribution: %.10g\n", l, contributions[l]);
  std::printf("price = %.10g (cost %llu substeps)\n", value,
              static_cast<unsigned long long>(cost));
  if (nonpositive)
    std::printf("warning: estimate is not positive; the telescoped estimator is signed and "
                "this run's level corrections overwhelmed the base term\n");
  std::printf("wrote %s/barrier.txt\n", cfg.out_dir.c_str());
  return 0;
}

int cmd_sweep(RunConfig cfg) {
  check_common(cfg);
  apply_threads(cfg);
  if (cfg.epsilons.empty()) throw ConfigError("sweep: epsilon list is empty");
  if (cfg.horizon < 1) throw ConfigError("sweep: horizon must be >= 1");
  if (cfg.replicates < 2) throw ConfigError("sweep: at least 2 replicates required");

  const NamedTestFn* named = find_test_function(cfg.test_function);
  if (named == nullptr) {
    std::string names;
    for (const NamedTestFn& f : test_function_registry())
      names += (names.empty() ? "" : ", ") + f.name;
    throw ConfigError("unknown test function '" + cfg.test_function + "'; available: " + names);
  }
  if (!named->bounded)
    std::printf("note: test function '%s' is unbounded; estimates may be heavy-tailed\n",
                named->name.c_str());

  const LevyModel model = build_model(cfg);
  const Coefficient coeff = build_coeff(cfg);

  int max_level = 0;
  for (double eps : cfg.epsilons) {
    const Allocation alloc = allocate_levels(build_ml_config(cfg, eps));
    max_level = std::max(max_level, alloc.max_level);
  }
  const int data_level = max_level + 3;
  const int ref_level = cfg.ref_level < 0 ? max_level + 3 : cfg.ref_level;
  const int ref_particles = cfg.ref_particles < 0 ? 100000 : cfg.ref_particles;
  cfg.ref_level = ref_level;
  cfg.ref_particles = ref_particles;

  const StreamFactory data_streams{derive_run_seed(cfg.seed, 0, kExpSweepData)};
  FilterProblem prob;
  prob.observations = generate_observations(model, coeff, cfg.y0, cfg.horizon, data_level, 1.0,
                                            data_streams, cfg.s0);
  const MlModelFamily family = filter_family(model, coeff, cfg.y0, prob, cfg.s0);
  std::vector<TestFn> fs = {named->fn};

  std::printf("synthetic observations: %d steps simulated at level %d\n", cfg.horizon,
              data_level);
  std::printf("reference: level %d, %d particles x %d replicates\n", ref_level, ref_particles,
              cfg.ref_replicates);

  const Reference ref =
      reference_solution(family, ref_level, ref_particles, cfg.ref_replicates,
                         cfg.ess_threshold, cfg.seed, kExpSweepRef, fs, 0, false);
  std::printf("reference value = %.10g (se %.3g)\n", ref.value, ref.se);

  SweepConfig sc;
  sc.epsilons = cfg.epsilons;
  sc.replicates = cfg.replicates;
  sc.ess_threshold = cfg.ess_threshold;
  sc.ml = build_ml_config(cfg, cfg.epsilons[0]);
  sc.pf_c_samples = cfg.pf_c_samples;
  sc.master_seed = cfg.seed;
  sc.experiment_pf = kExpSweepPf;
  sc.experiment_ml = kExpSweepMl;
  sc.fn_index = 0;
  sc.unnormalized = false;

  const SweepReport report = mse_vs_cost(family, sc, ref, fs);

  std::filesystem::create_directories(cfg.out_dir);
  const std::string points_path = cfg.out_dir + "/sweep_points.txt";
  const std::string summary_path = cfg.out_dir + "/sweep_summary.txt";
  write_sweep_files(points_path, summary_path, report, provenance_block(cfg));

  auto print_points = [](const char* name, const std::vector<SweepPoint>& pts) {
    std::printf("%s:\n", name);
    for (const SweepPoint& p : pts)
      std::printf("  eps %-10.6g level %d N0 %-8d cost %.4g mse %.4g\n", p.epsilon,
                  p.max_level, p.particles0, p.mean_cost, p.mse);
  };
  print_points("single-level filter", report.pf);
  print_points("multilevel filter", report.mlpf);
  std::printf("pf slope (log10 mse vs log10 cost) = %.4f\n", report.pf_fit.slope);
  std::printf("mlpf slope (log10 mse vs log10 cost) = %.4f\n", report.mlpf_fit.slope);
  std::printf("wrote %s and %s\n", points_path.c_str(), summary_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;

  // --config is honored before the regular flags so explicit flags override
  // file values.
  try {
    std::string config_path;
    for (int i = 1; i < argc; ++i) {
      const std::string arg = argv[i];
      if (arg == "--config" && i + 1 < argc)
        config_path = argv[i + 1];
      else if (arg.rfind("--config=", 0) == 0)
        config_path = arg.substr(9);
    }
    if (!config_path.empty()) cfg = parse_config_file(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  CLI::App app{"multilevel particle filters for SDEs driven by pure-jump processes"};
  app.require_subcommand(1);
  std::string config_path_sink;  // consumed by the pre-pass above

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path_sink, "key = value config file; flags override it");
    cmd->add_option("--seed", cfg.seed, "master RNG seed");
    cmd->add_option("--threads", cfg.threads, "worker thread count (0 = runtime default)");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--c", cfg.c, "jump measure intensity scale");
    cmd->add_option("--phi", cfg.phi, "jump activity index, in (0,2)");
    cmd->add_option("--xstar", cfg.xstar, "jump truncation radius");
    cmd->add_flag("--one-sided", cfg.one_sided, "positive jumps only");
    cmd->add_option("--sigma", cfg.sigma, "diffusion coefficient");
    cmd->add_option("--drift", cfg.drift, "drift");
    cmd->add_option("--y0", cfg.y0, "initial state");
    cmd->add_option("--coeff-scale", cfg.coeff_scale, "coefficient scale in a(y) = scale*y");
    cmd->add_flag("--constant-coeff", cfg.constant_coeff, "use a(y) = scale instead");
    cmd->add_option("--s0", cfg.s0, "level step ratio (h_l = s0^-l)");
  };
  auto add_allocation = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", cfg.alpha, "weak rate exponent");
    cmd->add_option("--beta", cfg.beta, "strong rate exponent");
    cmd->add_option("--gamma", cfg.gamma, "cost growth exponent");
    cmd->add_option("--c-level", cfg.c_level, "level cutoff scale");
    cmd->add_option("--c-samples", cfg.c_samples, "particle count scale");
    cmd->add_option("--ess-threshold", cfg.ess_threshold,
                    "resample when ESS < threshold * N, in (0,1]");
  };

  CLI::App* rates = app.add_subcommand(
      "rates", "estimate weak/strong convergence rates from coupled level pairs");
  add_common(rates);
  rates->add_option("--levels", cfg.levels, "finest level of the fit (>= 4, default 8)");
  rates->add_option("--samples", cfg.samples, "coupled samples per level");

  CLI::App* filter =
      app.add_subcommand("filter", "run a particle filter on an observation series");
  add_common(filter);
  add_allocation(filter);
  filter->add_option("--data", cfg.data_path, "observation file, one value per line");
  filter->add_option("--estimator", cfg.estimator, "pf or mlpf");
  filter->add_option("--levels", cfg.levels, "discretization level (overrides --epsilon)");
  filter->add_option("--epsilon", cfg.epsilons, "target accuracy")->delimiter(',');
  filter->add_option("--particles", cfg.particles, "particle count (pf: one entry; mlpf: per level)")
      ->delimiter(',');
  filter->add_flag("--uniform-potential", cfg.uniform_potential,
                   "replace every potential with 1 (validation mode)");
  filter->add_option("--horizon", cfg.horizon,
                     "step count for --uniform-potential runs without data");

  CLI::App* barrier =
      app.add_subcommand("barrier", "price a knock-out barrier option by annealed filtering");
  add_common(barrier);
  add_allocation(barrier);
  barrier->add_option("--estimator", cfg.estimator, "pf or mlpf");
  barrier->add_option("--levels", cfg.levels, "discretization level (default 4)");
  barrier->add_option("--particles", cfg.particles,
                      "particle count (pf: one entry; mlpf: per level)")
      ->delimiter(',');
  barrier->add_option("--strike", cfg.strike, "strike / barrier threshold");
  barrier->add_option("--lower", cfg.lower, "lower knock-out bound");
  barrier->add_option("--upper", cfg.upper, "upper knock-out bound");
  barrier->add_option("--horizon", cfg.barrier_horizon, "number of annealing steps");
  barrier->add_option("--smooth-floor", cfg.smooth_floor,
                      "floor for |y - strike| inside the annealing factor");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "MSE-versus-cost comparison of pf and mlpf on synthetic observations");
  add_common(sweep);
  add_allocation(sweep);
  sweep->add_option("--epsilon", cfg.epsilons, "accuracy grid")->delimiter(',');
  sweep->add_option("--replicates", cfg.replicates, "independent runs per grid point");
  sweep->add_option("--horizon", cfg.horizon, "observation count");
  sweep->add_option("--test-function", cfg.test_function,
                    "estimand: identity, square, exp, exp_clipped");
  sweep->add_option("--pf-c-samples", cfg.pf_c_samples,
                    "single-level particle scale: N = ceil(c * eps^-2)");
  sweep->add_option("--ref-level", cfg.ref_level, "reference level (default max level + 3)");
  sweep->add_option("--ref-particles", cfg.ref_particles,
                    "reference particles per replicate (default 100000)");
  sweep->add_option("--ref-replicates", cfg.ref_replicates, "reference replicates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (rates->parsed()) return cmd_rates(cfg);
    if (filter->parsed()) return cmd_filter(cfg);
    if (barrier->parsed()) return cmd_barrier(cfg);
    if (sweep->parsed()) return cmd_sweep(cfg);
    std::cerr << "error: no subcommand\n";
    return 1;
  } catch (const DegeneracyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
