#include "levypf/smc.hpp"

#include <algorithm>
#include <cmath>

namespace levypf {

double reweight(std::vector<double>& weights, const std::vector<double>& likelihoods,
                int step, const std::string& where) {
  if (weights.size() != likelihoods.size()) {
    throw std::invalid_argument("reweight: weight/likelihood size mismatch");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double g = likelihoods[i];
    if (g < 0.0) throw std::invalid_argument("reweight: negative likelihood value");
    weights[i] *= g;
    total += weights[i];
  }
  if (!(total > 0.0) || !std::isfinite(total)) throw DegeneracyError(step, where);
  for (double& w : weights) w /= total;
  return std::log(total);
}

double ess(const std::vector<double>& weights) {
  double sumsq = 0.0;
  for (const double w : weights) sumsq += w * w;
  return 1.0 / sumsq;
}

std::vector<std::uint32_t> multinomial_resample(const std::vector<double>& weights,
                                                std::size_t count, Rng& rng) {
  std::vector<double> cum(weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    cum[i] = acc;
  }
  std::vector<std::uint32_t> idx(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double u = rng.uniform01() * acc;  // guard against cum.back() != 1 exactly
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    if (it == cum.end()) --it;
    idx[i] = static_cast<std::uint32_t>(it - cum.begin());
  }
  return idx;
}

PfReport run_pf(const FeynmanKacModel& fk, const PfOptions& opt, const StreamFactory& streams,
                const std::vector<TestFn>& fs) {
  if (fk.horizon <= 0) throw std::invalid_argument("run_pf: horizon must be positive");
  if (opt.particles < 1) throw std::invalid_argument("run_pf: need at least one particle");
  const int n = fk.horizon;
  const std::size_t N = static_cast<std::size_t>(opt.particles);

  PfReport report;
  report.step_estimates.reserve(static_cast<std::size_t>(n));
  report.log_nc_factors.reserve(static_cast<std::size_t>(n));

  std::vector<double> prev(N, fk.y0);
  std::vector<double> cur(N, 0.0);
  std::vector<double> weights(N, 1.0 / static_cast<double>(N));
  std::vector<double> likelihoods(N, 0.0);

  for (int k = 1; k <= n; ++k) {
    // Mutation: every particle owns a stream keyed by (level, step, index),
    // so the result does not depend on the thread count.
    std::uint64_t substep_total = 0;
    const int count = static_cast<int>(N);
#pragma omp parallel for schedule(static) reduction(+ : substep_total)
    for (int i = 0; i < count; ++i) {
      Rng rng = streams.make(Purpose::propagate, fk.level, static_cast<std::uint64_t>(k),
                             static_cast<std::uint64_t>(i));
      std::uint64_t sub = 0;
      cur[static_cast<std::size_t>(i)] = fk.kernel(prev[static_cast<std::size_t>(i)], rng, sub);
      substep_total += sub;
    }
    report.substeps += substep_total;
    report.kernel_draws += N;

    for (std::size_t i = 0; i < N; ++i) {
      likelihoods[i] = fk.potential(k, prev[i], cur[i]);
    }
    const double factor = reweight(weights, likelihoods, k, "single");
    report.log_nc_factors.push_back(factor);
    report.log_nc += factor;

    std::vector<double> est(fs.size(), 0.0);
    for (std::size_t j = 0; j < fs.size(); ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        if (weights[i] != 0.0) acc += weights[i] * fs[j](cur[i]);
      }
      est[j] = acc;
    }
    report.step_estimates.push_back(std::move(est));

    if (k < n && ess(weights) < opt.ess_threshold * static_cast<double>(N)) {
      Rng rng = streams.make(Purpose::resample, fk.level, static_cast<std::uint64_t>(k), 0);
      const std::vector<std::uint32_t> idx = multinomial_resample(weights, N, rng);
      for (std::size_t i = 0; i < N; ++i) prev[i] = cur[idx[i]];
      std::fill(weights.begin(), weights.end(), 1.0 / static_cast<double>(N));
      ++report.resample_count;
    } else {
      prev.swap(cur);
    }
  }

  report.final_states = std::move(prev);
  report.final_weights = std::move(weights);
  return report;
}

}  // namespace levypf
