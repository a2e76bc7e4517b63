#include "levypf/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace levypf {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_line: need two or more paired points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_line: x values are all equal");

  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / n);
  return fit;
}

MeanSe mean_se(const std::vector<double>& xs) {
  MeanSe out;
  out.n = xs.size();
  if (xs.empty()) return out;
  for (const double v : xs) out.mean += v;
  out.mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return out;
  double ss = 0.0;
  for (const double v : xs) ss += (v - out.mean) * (v - out.mean);
  const double var = ss / static_cast<double>(xs.size() - 1);
  out.se = std::sqrt(var / static_cast<double>(xs.size()));
  return out;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    // advance past ties jointly so both ECDFs are evaluated after the tie block
    const double t = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= t) ++i;
    while (j < b.size() && b[j] <= t) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical(std::size_t n, std::size_t m, double alpha) {
  const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
  return c * std::sqrt(static_cast<double>(n + m) /
                       (static_cast<double>(n) * static_cast<double>(m)));
}

double histogram_tv(const std::vector<double>& a, const std::vector<double>& b, int bins) {
  if (a.empty() || b.empty()) throw std::invalid_argument("histogram_tv: empty sample");
  if (bins < 1) throw std::invalid_argument("histogram_tv: need at least one bin");
  double lo = a[0], hi = a[0];
  for (const double v : a) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  for (const double v : b) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(hi > lo)) return 0.0;  // all mass in one point for both samples
  const double width = (hi - lo) / bins;
  std::vector<double> pa(static_cast<std::size_t>(bins), 0.0);
  std::vector<double> pb(static_cast<std::size_t>(bins), 0.0);
  const auto bin_of = [&](double v) {
    int idx = static_cast<int>((v - lo) / width);
    if (idx < 0) idx = 0;
    if (idx >= bins) idx = bins - 1;
    return static_cast<std::size_t>(idx);
  };
  for (const double v : a) pa[bin_of(v)] += 1.0 / static_cast<double>(a.size());
  for (const double v : b) pb[bin_of(v)] += 1.0 / static_cast<double>(b.size());
  double tv = 0.0;
  for (int k = 0; k < bins; ++k) {
    tv += std::fabs(pa[static_cast<std::size_t>(k)] - pb[static_cast<std::size_t>(k)]);
  }
  return 0.5 * tv;
}

}  // namespace levypf
