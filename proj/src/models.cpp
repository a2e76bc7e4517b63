#include "levypf/models.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace levypf {

double gaussian_potential(double z, double y, double variance) {
  if (!(variance > 0.0)) throw std::invalid_argument("gaussian_potential: variance must be > 0");
  const double d = z - y;
  const double two_pi = 6.283185307179586476925286766559;
  return std::exp(-d * d / (2.0 * variance)) / std::sqrt(two_pi * variance);
}

FilterProblem load_returns(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open data file: " + path);

  std::vector<double> values;
  std::string line;
  int line_no = 0;
  bool seen_numeric = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;  // blank
    if (line[start] == '#') continue;          // comment
    const std::string token = line.substr(start);
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    // trailing whitespace after a parsed number is fine; anything else is not
    bool ok = end != token.c_str();
    if (ok) {
      for (const char* p = end; *p != '\0'; ++p) {
        if (*p != ' ' && *p != '\t' && *p != '\r') {
          ok = false;
          break;
        }
      }
    }
    if (!ok || !std::isfinite(v)) {
      if (!seen_numeric) continue;  // tolerate one leading header line
      throw DataError(path + ":" + std::to_string(line_no) + ": unparseable value '" + token +
                      "'");
    }
    seen_numeric = true;
    values.push_back(v);
  }
  if (values.size() < 2) {
    throw DataError(path + ": need at least 2 numeric values, found " +
                    std::to_string(values.size()));
  }

  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(values.size() - 1);
  if (!(var > 0.0)) throw DataError(path + ": series has zero variance");

  const double sd = std::sqrt(var);
  FilterProblem prob;
  prob.observations.reserve(values.size());
  for (const double v : values) prob.observations.push_back(v / sd);
  return prob;
}

double BarrierProblem::annealed(int k, double y) const {
  double base = std::fabs(y - strike);
  if (smooth_floor > 0.0 && base < smooth_floor) base = smooth_floor;
  if (k <= 0) return 1.0;  // kappa_0 = 0
  if (k >= horizon) return base;
  return std::pow(base, kappa(k));
}

double barrier_potential(int k, double y_prev, double y, const BarrierProblem& prob) {
  if (y < prob.lower || y > prob.upper) return 0.0;
  const double denom = prob.annealed(k - 1, y_prev);
  if (denom == 0.0) return 0.0;  // particle sat exactly on the strike
  return prob.annealed(k, y) / denom;
}

double barrier_payoff(double y, double strike) { return y > strike ? y - strike : 0.0; }

double barrier_correction(double y, double strike) { return y > strike ? 1.0 : 0.0; }

const std::vector<NamedTestFn>& test_function_registry() {
  static const std::vector<NamedTestFn> registry = {
      {"identity", [](double y) { return y; }, true},
      {"square", [](double y) { return y * y; }, true},
      {"exp", [](double y) { return std::exp(y); }, false},
      {"exp_clipped", [](double y) { return std::fabs(y) < 10.0 ? std::exp(y) : 0.0; }, true},
  };
  return registry;
}

const NamedTestFn* find_test_function(const std::string& name) {
  for (const NamedTestFn& f : test_function_registry()) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

namespace {

PotentialFn filter_potential(const FilterProblem& prob) {
  return [prob](int k, double /*y_prev*/, double y) {
    return gaussian_potential(prob.observations[static_cast<std::size_t>(k - 1)], y,
                              prob.obs_variance);
  };
}

PotentialFn annealed_potential(const BarrierProblem& prob) {
  return [prob](int k, double y_prev, double y) { return barrier_potential(k, y_prev, y, prob); };
}

TransitionFn single_kernel(const LevyModel& model, const Coefficient& coeff, int level, int s0) {
  const LevelParams lp = make_level_params(model.measure, level, s0);
  SdeSpec spec;
  spec.coeff = coeff;
  return [lp, model, spec](double y_prev, Rng& rng, std::uint64_t& substeps) {
    const StepResult r = propagate_q(y_prev, lp, model, spec, rng);
    substeps += r.substeps;
    return r.y;
  };
}

CoupledTransitionFn coupled_kernel(const LevyModel& model, const Coefficient& coeff, int level,
                                   int s0) {
  const LevelParams lp_fine = make_level_params(model.measure, level, s0);
  const LevelParams lp_coarse = make_level_params(model.measure, level - 1, s0);
  SdeSpec spec;
  spec.coeff = coeff;
  return [lp_fine, lp_coarse, model, spec](double& yf, double& yc, Rng& rng,
                                           std::uint64_t& substeps) {
    const CoupledResult r = propagate_m(yf, yc, lp_fine, lp_coarse, model, spec, rng);
    yf = r.y_fine;
    yc = r.y_coarse;
    substeps += r.substeps_fine + r.substeps_coarse;
  };
}

}  // namespace

FeynmanKacModel make_filter_model(const LevyModel& model, const Coefficient& coeff, double y0,
                                  const FilterProblem& prob, int level, int s0) {
  if (prob.observations.empty()) throw std::invalid_argument("filter model: no observations");
  FeynmanKacModel fk;
  fk.kernel = single_kernel(model, coeff, level, s0);
  fk.potential = filter_potential(prob);
  fk.horizon = static_cast<int>(prob.observations.size());
  fk.y0 = y0;
  fk.level = level;
  return fk;
}

CoupledFkModel make_coupled_filter_model(const LevyModel& model, const Coefficient& coeff,
                                         double y0, const FilterProblem& prob, int level,
                                         int s0) {
  if (prob.observations.empty()) throw std::invalid_argument("filter model: no observations");
  CoupledFkModel fk;
  fk.kernel = coupled_kernel(model, coeff, level, s0);
  fk.potential = filter_potential(prob);
  fk.horizon = static_cast<int>(prob.observations.size());
  fk.y0 = y0;
  fk.level = level;
  return fk;
}

FeynmanKacModel make_barrier_model(const LevyModel& model, const Coefficient& coeff, double y0,
                                   const BarrierProblem& prob, int level, int s0) {
  FeynmanKacModel fk;
  fk.kernel = single_kernel(model, coeff, level, s0);
  fk.potential = annealed_potential(prob);
  fk.horizon = prob.horizon;
  fk.y0 = y0;
  fk.level = level;
  return fk;
}

CoupledFkModel make_coupled_barrier_model(const LevyModel& model, const Coefficient& coeff,
                                          double y0, const BarrierProblem& prob, int level,
                                          int s0) {
  CoupledFkModel fk;
  fk.kernel = coupled_kernel(model, coeff, level, s0);
  fk.potential = annealed_potential(prob);
  fk.horizon = prob.horizon;
  fk.y0 = y0;
  fk.level = level;
  return fk;
}

MlModelFamily filter_family(const LevyModel& model, const Coefficient& coeff, double y0,
                            const FilterProblem& prob, int s0) {
  MlModelFamily fam;
  fam.single = [model, coeff, y0, prob, s0](int level) {
    return make_filter_model(model, coeff, y0, prob, level, s0);
  };
  fam.coupled = [model, coeff, y0, prob, s0](int level) {
    return make_coupled_filter_model(model, coeff, y0, prob, level, s0);
  };
  return fam;
}

MlModelFamily barrier_family(const LevyModel& model, const Coefficient& coeff, double y0,
                             const BarrierProblem& prob, int s0) {
  MlModelFamily fam;
  fam.single = [model, coeff, y0, prob, s0](int level) {
    return make_barrier_model(model, coeff, y0, prob, level, s0);
  };
  fam.coupled = [model, coeff, y0, prob, s0](int level) {
    return make_coupled_barrier_model(model, coeff, y0, prob, level, s0);
  };
  return fam;
}

std::vector<double> generate_observations(const LevyModel& model, const Coefficient& coeff,
                                          double y0, int n, int level, double obs_variance,
                                          const StreamFactory& streams, int s0) {
  const LevelParams lp = make_level_params(model.measure, level, s0);
  SdeSpec spec;
  spec.coeff = coeff;
  const double noise_sd = std::sqrt(obs_variance);
  std::vector<double> obs;
  obs.reserve(static_cast<std::size_t>(n));
  double y = y0;
  for (int k = 1; k <= n; ++k) {
    Rng path_rng = streams.make(Purpose::data, level, static_cast<std::uint64_t>(k), 0);
    y = propagate_q(y, lp, model, spec, path_rng).y;
    Rng noise_rng = streams.make(Purpose::data, level, static_cast<std::uint64_t>(k), 1);
    obs.push_back(y + noise_sd * noise_rng.normal());
  }
  return obs;
}

}  // namespace levypf
