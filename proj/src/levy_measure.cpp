#include "levypf/levy_measure.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace levypf {

namespace {

void check_delta_domain(const StableMeasure& m, double delta, bool allow_zero) {
  const double lo = allow_zero ? 0.0 : std::nextafter(0.0, 1.0);
  if (!(delta >= lo) || !(delta <= m.xstar)) {
    throw std::domain_error("jump threshold delta=" + std::to_string(delta) +
                            " outside (" + std::string(allow_zero ? "[0" : "(0") + ", x*=" +
                            std::to_string(m.xstar) + "]");
  }
}

// Intensity in front of |x|^(-1-phi): both half-lines for the symmetric
// measure, one for the one-sided variant.
double side_factor(const StableMeasure& m) { return m.one_sided ? 1.0 : 2.0; }

}  // namespace

void validate(const StableMeasure& m) {
  if (!(m.c > 0.0) || !std::isfinite(m.c)) {
    throw std::invalid_argument("stable measure: intensity c must be positive and finite");
  }
  if (!(m.phi > 0.0) || !(m.phi < 2.0)) {
    throw std::invalid_argument("stable measure: index phi must lie in (0,2)");
  }
  if (!(m.xstar > 0.0) || !std::isfinite(m.xstar)) {
    throw std::invalid_argument("stable measure: truncation x* must be positive and finite");
  }
}

void validate(const LevyModel& model) {
  validate(model.measure);
  if (!(model.sigma >= 0.0) || !std::isfinite(model.sigma)) {
    throw std::invalid_argument("levy model: sigma must be nonnegative and finite");
  }
  if (!std::isfinite(model.drift)) {
    throw std::invalid_argument("levy model: drift must be finite");
  }
}

double tail_mass(const StableMeasure& m, double delta) {
  check_delta_domain(m, delta, false);
  // integral of c|x|^(-1-phi) over delta <= |x| <= x*, both sides.
  return side_factor(m) * m.c *
         (std::pow(delta, -m.phi) - std::pow(m.xstar, -m.phi)) / m.phi;
}

double jump_threshold(const StableMeasure& m, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::domain_error("jump_threshold: step size h must be positive and finite");
  }
  // Solve tail_mass(delta) = 1/h:  delta = (phi/(s c h) + x*^-phi)^(-1/phi),
  // s = 2 (symmetric) or 1 (one-sided).
  const double target = m.phi / (side_factor(m) * m.c * h) + std::pow(m.xstar, -m.phi);
  return std::pow(target, -1.0 / m.phi);
}

double small_jump_variance(const StableMeasure& m, double delta) {
  check_delta_domain(m, delta, true);
  // integral of x^2 c|x|^(-1-phi) over B_delta = s*c/(2-phi) * delta^(2-phi).
  return side_factor(m) * m.c / (2.0 - m.phi) * std::pow(delta, 2.0 - m.phi);
}

double drift_compensator(const StableMeasure& m, double delta) {
  check_delta_domain(m, delta, false);
  if (!m.one_sided) return 0.0;  // odd integrand, symmetric measure
  // integral of x * c x^(-1-phi) over [delta, x*] = c (x*^(1-phi) - delta^(1-phi))/(1-phi),
  // with the log limit at phi = 1.
  if (m.phi == 1.0) return m.c * (std::log(m.xstar) - std::log(delta));
  return m.c * (std::pow(m.xstar, 1.0 - m.phi) - std::pow(delta, 1.0 - m.phi)) /
         (1.0 - m.phi);
}

double jump_magnitude_icdf(const StableMeasure& m, double delta, double u) {
  check_delta_domain(m, delta, false);
  const double a = std::pow(delta, -m.phi);
  const double b = std::pow(m.xstar, -m.phi);
  const double t = a - u * (a - b);
  // Same arithmetic as draw_jump's phi = 1/2 shortcut, so the two sampler
  // entry points agree bit-for-bit.
  if (m.phi == 0.5) return 1.0 / (t * t);
  return std::pow(t, -1.0 / m.phi);
}

double sample_jump(const StableMeasure& m, double delta, Rng& rng) {
  if (!(delta < m.xstar)) {
    throw std::domain_error("sample_jump: delta must be < x* (no jumps beyond truncation)");
  }
  check_delta_domain(m, delta, false);
  const std::uint64_t raw = rng.next_u64();
  const double u = static_cast<double>(raw >> 11) * 0x1.0p-53;
  const double mag = jump_magnitude_icdf(m, delta, u);
  if (m.one_sided) return mag;
  return (raw & 1u) ? mag : -mag;
}

double jump_threshold(const GenericMeasure& m, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::domain_error("jump_threshold: step size h must be positive and finite");
  }
  const double target = 1.0 / h;
  // tail_mass decreases in delta: bisect (0, x*] until the bracket is tighter
  // than 1e-12 in delta.  The left endpoint is treated as tail -> +inf (the
  // measure has infinite activity), so it is never evaluated.
  double lo = 0.0;
  double hi = m.xstar;
  if (m.tail_mass(hi) >= target) return hi;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (m.tail_mass(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

LevelParams make_level_params(const StableMeasure& m, int level, int s0) {
  validate(m);
  if (level < 0) throw std::invalid_argument("level must be nonnegative");
  if (s0 < 2) throw std::invalid_argument("mesh ratio s0 must be an integer >= 2");

  LevelParams lp;
  lp.level = level;
  lp.h = std::pow(static_cast<double>(s0), -static_cast<double>(level));
  lp.lambda = 1.0 / lp.h;  // per construction, the retained-jump rate
  lp.delta = jump_threshold(m, lp.h);
  lp.f0 = drift_compensator(m, lp.delta);
  lp.delta_pow = std::pow(lp.delta, -m.phi);
  lp.xstar_pow = std::pow(m.xstar, -m.phi);
  lp.phi = m.phi;
  lp.half_index = (m.phi == 0.5);
  lp.one_sided = m.one_sided;
  return lp;
}

}  // namespace levypf
