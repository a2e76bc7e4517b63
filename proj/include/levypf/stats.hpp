#pragma once

#include <cstddef>
#include <vector>

// Small statistics helpers used by tests and the benchmark harness:
// least-squares line fits for rate estimation, two-sample Kolmogorov-Smirnov
// distance for marginal-law checks, and histogram total-variation distance.

namespace levypf {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};

// Ordinary least squares of y on x.  Requires at least two distinct x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;  // standard error of the mean, n-1 convention
  std::size_t n = 0;
};

MeanSe mean_se(const std::vector<double>& xs);

// Two-sample KS statistic sup_t |F_a(t) - F_b(t)| (inputs copied and sorted).
double ks_statistic(std::vector<double> a, std::vector<double> b);

// Large-sample critical value c(alpha) * sqrt((n+m)/(n*m)); alpha = 0.01
// uses c = 1.6276.
double ks_critical(std::size_t n, std::size_t m, double alpha = 0.01);

// Total-variation distance between equal-width histograms of the two samples
// over their common range.
double histogram_tv(const std::vector<double>& a, const std::vector<double>& b, int bins);

}  // namespace levypf
