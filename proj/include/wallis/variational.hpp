#pragma once

// Variational energies of the trial family R(r) = r^l exp(-alpha r^b) for the
// Coulomb problem in N dimensions, the exact levels they bound, and a
// quadrature oracle that integrates the radial densities directly.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "wallis/errors.hpp"
#include "wallis/evaluation.hpp"
#include "wallis/gamma.hpp"
#include "wallis/numeric.hpp"
#include "wallis/quadrature.hpp"

namespace wallis {

/// hbar, electron mass and charge. Energies come out in units of m e^4/hbar^2
/// for the default (1, 1, 1).
struct UnitSystem {
  double hbar = 1.0;
  double mass = 1.0;
  double charge = 1.0;

  void validate() const {
    if (!(hbar > 0) || !(mass > 0) || !(charge > 0)) {
      throw DomainError("UnitSystem: hbar, mass and charge must be positive");
    }
  }
  /// hbar^2 / (2m).
  [[nodiscard]] double kinetic_scale() const { return hbar * hbar / (2.0 * mass); }
  /// m e^4 / hbar^2.
  [[nodiscard]] double energy_unit() const { return mass * std::pow(charge, 4) / (hbar * hbar); }
};

/// Shape parameters of the trial function; alpha is supplied separately where
/// an operation minimizes over it.
struct TrialShape {
  double b = 2.0;
  std::uint64_t ell = 0;
  int dimension = 3;

  void validate() const {
    if (!std::isfinite(b) || !(b > 0)) throw DomainError("trial shape: b must be positive");
    if (dimension < 3) throw DomainError("trial shape: dimension must be >= 3");
  }
  /// 2l + N - 2; the N = 3 gamma arguments are shifted by N - 3 through it.
  [[nodiscard]] double radial_order() const { return 2.0 * static_cast<double>(ell) + dimension - 2.0; }
};

struct TrialParams {
  double alpha = 1.0;
  TrialShape shape;

  void validate() const {
    shape.validate();
    if (!std::isfinite(alpha) || !(alpha > 0)) throw DomainError("trial params: alpha must be positive");
  }
};

struct ExactLevel {
  std::uint64_t n_r = 0;
  std::uint64_t ell = 0;
  int dimension = 3;
};

struct Minimum {
  double energy = 0.0;
  double alpha_star = 0.0;
};

namespace detail {

// <H> = A u^2 - B u with u = (2 alpha)^(1/b).
struct QuadraticForm {
  double kinetic = 0.0;    // A
  double potential = 0.0;  // B
};

inline QuadraticForm energy_coefficients(const TrialShape& s, const UnitSystem& u) {
  const double b = s.b;
  const double m = s.radial_order();
  const double q = m / b;
  // A = (hbar^2/2m) G(q + 1) (b (m + b)/4) / G(q + 2/b)
  const double kin_ratio = std::exp(log_gamma_difference(q + 2.0 / b, 1.0 - 2.0 / b));
  // B = e^2 G(q + 1/b) / G(q + 2/b)
  const double pot_ratio = std::exp(-log_gamma_difference(q + 1.0 / b, 1.0 / b));
  return {u.kinetic_scale() * kin_ratio * b * (m + b) / 4.0, u.charge * u.charge * pot_ratio};
}

}  // namespace detail

/// Closed-form <H> for the trial state; for N > 3 the gamma arguments 2l+1,
/// 2l+2, 2l+3 become 2l+N-2, 2l+N-1, 2l+N.
inline double expectation_H(const TrialParams& p, const UnitSystem& units = {}) {
  p.validate();
  units.validate();
  const auto c = detail::energy_coefficients(p.shape, units);
  const double x = std::pow(2.0 * p.alpha, 1.0 / p.shape.b);
  return c.kinetic * x * x - c.potential * x;
}

/// Minimum over alpha of expectation_H: u* = B/(2A), E = -B^2/(4A),
/// alpha* = u*^b / 2.
inline Minimum min_energy_analytic(const TrialShape& s, const UnitSystem& units = {}) {
  s.validate();
  units.validate();
  const auto c = detail::energy_coefficients(s, units);
  const double ustar = c.potential / (2.0 * c.kinetic);
  return {-c.potential * c.potential / (4.0 * c.kinetic), 0.5 * std::pow(ustar, s.b)};
}

/// Golden-section minimization of expectation_H in ln(alpha) over
/// [alpha*/10, 10 alpha*], alpha* taken from the analytic minimum. E is
/// quadratic in u near the minimum, so the search stops once ln(alpha) is
/// known to 0.1 b sqrt(tol).
inline Minimum min_energy_numeric(const TrialShape& s, const UnitSystem& units, double tol) {
  if (!(tol > 1e-12 && tol < 1e-3)) throw PreconditionError("min_energy_numeric: tol must lie in (1e-12, 1e-3)");
  const Minimum guess = min_energy_analytic(s, units);
  auto energy = [&](double log_alpha) { return expectation_H({std::exp(log_alpha), s}, units); };

  const double lo0 = std::log(guess.alpha_star / 10.0);
  const double hi0 = std::log(guess.alpha_star * 10.0);
  const double width_goal = std::max(0.1 * s.b * std::sqrt(tol), 1e-9 * std::max(1.0, std::abs(lo0)));
  constexpr double kInvPhi = 0.61803398874989484820;
  double lo = lo0;
  double hi = hi0;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = energy(x1);
  double f2 = energy(x2);
  for (int it = 0; hi - lo > width_goal; ++it) {
    if (it > 500) throw ConvergenceError("min_energy_numeric: golden section did not converge");
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = energy(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = energy(x2);
    }
  }
  const double best = f1 <= f2 ? x1 : x2;
  const double edge = 2.0 * width_goal;
  if (best - lo0 < edge || hi0 - best < edge) {
    throw ConvergenceError("min_energy_numeric: minimum touches the bracket edge");
  }
  return {std::min(f1, f2), std::exp(best)};
}

/// Closed form of int_0^inf r^p exp(-2 alpha r^b) dr = G((p+1)/b) / (b (2 alpha)^((p+1)/b)).
inline double radial_moment(double p, double alpha, double b) {
  if (!(p > -1) || !(alpha > 0) || !(b > 0)) throw DomainError("radial_moment: need p > -1, alpha > 0, b > 0");
  const double s = (p + 1.0) / b;
  return std::exp(log_gamma(s) - s * std::log(2.0 * alpha)) / b;
}

namespace detail {

// Integrates a density on (0, inf) given in scaled form (peak of order one),
// split at the peak and truncated where the log-density has dropped by 60.
template <class Density, class LogEnvelope>
quadrature::Result integrate_radial(Density&& density, LogEnvelope&& log_envelope, double peak, double rel_tol) {
  double cut = 2.0 * peak;
  while (log_envelope(cut) > -60.0) cut *= 1.5;
  const double abs_floor = 1e-300;
  auto left = quadrature::integrate(density, 0.0, peak, abs_floor, rel_tol, 20000);
  auto right = quadrature::integrate(density, peak, cut, abs_floor, rel_tol, 20000);
  quadrature::Result r;
  r.value = left.value + right.value;
  // What lies beyond the cut is below e^-60 of the peak per unit length and
  // decays faster than exponentially; charge it as cut * e^-60 * (1 + cut).
  r.error = left.error + right.error + cut * std::exp(-60.0) * (1.0 + cut);
  r.evaluations = left.evaluations + right.evaluations;
  r.panels = left.panels + right.panels;
  return r;
}

}  // namespace detail

/// Quadrature of int_0^inf r^p exp(-2 alpha r^b) dr.
inline Evaluation radial_moment_quadrature(double p, double alpha, double b, double tol) {
  if (!(p > -1) || !(alpha > 0) || !(b > 0)) throw DomainError("radial_moment_quadrature: invalid arguments");
  const double peak = p > 0 ? std::pow(p / (2.0 * alpha * b), 1.0 / b) : std::pow(1.0 / (2.0 * alpha), 1.0 / b);
  const double log_peak = (p > 0 ? p * std::log(peak) : 0.0) - 2.0 * alpha * std::pow(peak, b);
  auto log_env = [&](double r) { return p * std::log(r) - 2.0 * alpha * std::pow(r, b) - log_peak; };
  auto dens = [&](double r) { return r <= 0 ? 0.0 : std::exp(log_env(r)); };
  const auto q = detail::integrate_radial(dens, log_env, peak, 0.1 * tol);
  const double scale = std::exp(log_peak);
  return {q.value * scale, q.error * scale, q.evaluations, Method::quadrature};
}

/// <H> from direct quadrature of the kinetic, potential and norm densities.
/// The kinetic term uses the integrated-by-parts form
/// (hbar^2/2m) int [R'^2 + l(l+N-2) R^2/r^2] r^(N-1) dr with
/// R'/R = l/r - alpha b r^(b-1), so only first derivatives appear.
inline Evaluation expectation_H_quadrature(const TrialParams& p, const UnitSystem& units, double tol) {
  p.validate();
  units.validate();
  if (!(tol > 1e-10 && tol < 1e-3)) throw PreconditionError("expectation_H_quadrature: tol must lie in (1e-10, 1e-3)");
  const double alpha = p.alpha;
  const double b = p.shape.b;
  const double l = static_cast<double>(p.shape.ell);
  const int N = p.shape.dimension;
  const double power = 2.0 * l + N - 1.0;  // exponent of r in R^2 r^(N-1)
  const double peak = std::pow(power / (2.0 * alpha * b), 1.0 / b);
  const double log_peak = power * std::log(peak) - 2.0 * alpha * std::pow(peak, b);
  auto log_env = [&](double r) { return power * std::log(r) - 2.0 * alpha * std::pow(r, b) - log_peak; };
  auto norm = [&](double r) { return r <= 0 ? 0.0 : std::exp(log_env(r)); };
  auto potential = [&](double r) { return r <= 0 ? 0.0 : std::exp(log_env(r)) / r; };
  const double centrifugal = l * (l + N - 2.0);
  auto kinetic = [&](double r) {
    if (r <= 0) return 0.0;
    const double logderiv = l / r - alpha * b * std::pow(r, b - 1.0);
    return std::exp(log_env(r)) * (logderiv * logderiv + centrifugal / (r * r));
  };
  const double rt = 0.05 * tol;
  const auto qn = detail::integrate_radial(norm, log_env, peak, rt);
  const auto qk = detail::integrate_radial(kinetic, log_env, peak, rt);
  const auto qp = detail::integrate_radial(potential, log_env, peak, rt);

  const double kin = units.kinetic_scale() * qk.value / qn.value;
  const double pot = -units.charge * units.charge * qp.value / qn.value;
  const double rel_n = qn.error / qn.value;
  Evaluation ev;
  ev.value = kin + pot;
  ev.error_bound = std::abs(kin) * (qk.error / std::abs(qk.value) + rel_n) +
                   std::abs(pot) * (qp.error / std::abs(qp.value) + rel_n) + 8.0 * kEps * (std::abs(kin) + std::abs(pot));
  ev.terms_used = qn.evaluations + qk.evaluations + qp.evaluations;
  ev.method = Method::quadrature;
  return ev;
}

/// -(m e^4 / hbar^2) / (2 (n_r + l + (N-1)/2)^2).
inline double exact_energy(const ExactLevel& lv, const UnitSystem& units = {}) {
  units.validate();
  if (lv.dimension < 3) throw DomainError("exact_energy: dimension must be >= 3");
  const double n = static_cast<double>(lv.n_r) + static_cast<double>(lv.ell) + 0.5 * (lv.dimension - 1.0);
  return -units.energy_unit() / (2.0 * n * n);
}

/// Relative spread of r^2, sqrt(<r^4> - <r^2>^2) / <r^2>. It does not depend
/// on alpha; the gamma ratio G(x + 4/b) G(x) / G(x + 2/b)^2, x = (2l + N)/b,
/// is formed from log-gamma differences.
inline double uncertainty_r2(const TrialParams& p) {
  p.validate();
  const double b = p.shape.b;
  const double x = (p.shape.radial_order() + 2.0) / b;
  const double h = 2.0 / b;
  const double d = log_gamma_difference(x + h, h) - log_gamma_difference(x, h);
  return std::sqrt(std::expm1(d));
}

}  // namespace wallis
