#pragma once

// Real-argument gamma machinery: log-gamma, gamma, Pochhammer symbols, a
// precise log-gamma difference for ratios, and two independent evaluators
// (truncated Euler limit and the integral by quadrature) used as oracles.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "wallis/errors.hpp"
#include "wallis/evaluation.hpp"
#include "wallis/numeric.hpp"
#include "wallis/quadrature.hpp"

namespace wallis {

/// Dimensionless argument of the gamma function, validated on construction.
class GammaArg {
 public:
  explicit GammaArg(double z) : z_(z) {
    if (!std::isfinite(z)) throw DomainError("gamma argument is not finite");
    if (is_nonpositive_integer(z)) {
      throw PoleError("gamma argument " + std::to_string(z) + " is a pole");
    }
  }
  [[nodiscard]] double value() const { return z_; }
  operator double() const { return z_; }  // NOLINT(google-explicit-constructor)

 private:
  double z_;
};

struct PochhammerSpec {
  double y = 1.0;
  std::uint64_t ell = 0;
};

namespace detail {

// Lanczos approximation, g = 7, nine coefficients.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

inline constexpr double kLnSqrt2Pi = 0.91893853320467274178032973640562;
inline constexpr double kSqrt2Pi = 2.5066282746310005024157652848110;

// Valid for z >= 0.5.
inline double lanczos_sum(double z) {
  double a = kLanczos[0];
  const double zm1 = z - 1.0;
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (zm1 + static_cast<double>(i));
  return a;
}

inline double log_gamma_lanczos(double z) {
  const double t = z + kLanczosG - 0.5;
  return kLnSqrt2Pi + (z - 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

inline double gamma_lanczos(double z) {
  const double t = z + kLanczosG - 0.5;
  const double half = 0.5 * (z - 0.5);
  const double p = std::pow(t, half);
  return kSqrt2Pi * lanczos_sum(z) * (p * std::exp(-t)) * p;
}

// Stirling tail sum_k B_2k / (2k (2k-1) y^(2k-1)), eight terms.
inline double stirling_correction(double y) {
  constexpr std::array<double, 8> c = {1.0 / 12.0,        -1.0 / 360.0,  1.0 / 1260.0,
                                       -1.0 / 1680.0,     1.0 / 1188.0,  -691.0 / 360360.0,
                                       1.0 / 156.0,       -3617.0 / 122400.0};
  const double inv = 1.0 / y;
  const double inv2 = inv * inv;
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * inv2 + c[k];
  return acc * inv;
}

inline constexpr double kStirlingThreshold = 12.0;
inline const double kLogDoubleMax = std::log(std::numeric_limits<double>::max());

inline void check_arg(double z, const char* what) {
  if (!std::isfinite(z)) throw DomainError(std::string(what) + ": argument is not finite");
  if (is_nonpositive_integer(z)) {
    throw PoleError(std::string(what) + ": argument " + std::to_string(z) + " is a pole");
  }
}

}  // namespace detail

/// ln Gamma(z) for z > 0.
inline double log_gamma(double z) {
  detail::check_arg(z, "log_gamma");
  if (z < 0) throw DomainError("log_gamma: requires z > 0 (use gamma() for negative arguments)");
  if (z < 0.5) return detail::log_gamma_lanczos(z + 1.0) - std::log(z);
  return detail::log_gamma_lanczos(z);
}

inline double reflect_extend(double z);

/// Gamma(z) on all non-pole reals. Negative arguments go through
/// reflect_extend.
inline double gamma(double z) {
  detail::check_arg(z, "gamma");
  if (z < 0) return reflect_extend(z);
  if (z < 0.5) return detail::gamma_lanczos(z + 1.0) / z;
  if (log_gamma(z) > detail::kLogDoubleMax) {
    throw OverflowError("gamma: Gamma(" + std::to_string(z) + ") overflows a double");
  }
  return detail::gamma_lanczos(z);
}

/// Gamma(z) = pi / (sin(pi z) Gamma(1 - z)) for non-integer z < 1/2.
inline double reflect_extend(double z) {
  detail::check_arg(z, "reflect_extend");
  if (is_integer(z)) throw PoleError("reflect_extend: integer argument");
  if (!(z < 0.5)) throw PreconditionError("reflect_extend: requires z < 1/2");
  const double s = sin_pi(z);
  const double w = 1.0 - z;
  if (w < 170.0) return std::numbers::pi / (s * gamma(w));
  const double lg = std::log(std::numbers::pi) - std::log(std::abs(s)) - log_gamma(w);
  return std::copysign(std::exp(lg), s);
}

/// ln Gamma(x + h) - ln Gamma(x) for x > 0 and x + h > 0.
///
/// Uses the Stirling series in difference form after shifting both arguments
/// above a threshold, so the result carries absolute error close to
/// eps * |h ln x| rather than eps * |ln Gamma(x)|. Ratios of gamma values at
/// large arguments go through this function.
inline double log_gamma_difference(double x, double h) {
  if (!std::isfinite(x) || !std::isfinite(h)) throw DomainError("log_gamma_difference: non-finite");
  if (!(x > 0) || !(x + h > 0)) throw DomainError("log_gamma_difference: arguments must be positive");
  if (h == 0.0) return 0.0;
  CompensatedSum shift_terms;
  double y = x;
  while (std::min(y, y + h) < detail::kStirlingThreshold) {
    shift_terms.add(std::log1p(h / y));
    y += 1.0;
  }
  // (y+h-1/2) ln(y+h) - (y-1/2) ln y - h, rearranged to avoid cancellation.
  const double main = (y + h - 0.5) * std::log1p(h / y) + h * std::log(y) - h;
  const double corr = detail::stirling_correction(y + h) - detail::stirling_correction(y);
  return main + corr - shift_terms.value();
}

/// Rising factorial y (y+1) ... (y+ell-1), by direct multiplication.
inline double pochhammer(const PochhammerSpec& p) {
  if (!std::isfinite(p.y)) throw DomainError("pochhammer: non-finite base");
  double acc = 1.0;
  for (std::uint64_t j = 0; j < p.ell; ++j) {
    acc *= p.y + static_cast<double>(j);
    if (!std::isfinite(acc)) throw OverflowError("pochhammer: product overflows");
  }
  return acc;
}

/// Gamma(z+k) / Gamma(z) = (z)_k evaluated in log space.
inline double gamma_recursion_shift(double z, std::uint64_t k) {
  if (!std::isfinite(z)) throw DomainError("gamma_recursion_shift: non-finite z");
  if (k == 0) {
    detail::check_arg(z, "gamma_recursion_shift");
    return 1.0;
  }
  for (std::uint64_t j = 0; j <= k; ++j) {
    const double zj = z + static_cast<double>(j);
    if (zj > 0) break;
    if (is_nonpositive_integer(zj)) throw PoleError("gamma_recursion_shift: pole in shifted range");
  }
  double sign_prod = 1.0;
  double y = z;
  std::uint64_t left = k;
  while (y <= 0 && left > 0) {
    sign_prod *= y;
    y += 1.0;
    --left;
  }
  if (left == 0) return sign_prod;
  const double lg = log_gamma_difference(y, static_cast<double>(left));
  if (lg + std::log(std::abs(sign_prod)) > detail::kLogDoubleMax) {
    throw OverflowError("gamma_recursion_shift: result overflows");
  }
  return sign_prod * std::exp(lg);
}

/// Euler's limit m^z m! / (z (z+1) ... (z+m)) truncated at m, summed in log
/// space as z ln m - ln|z| - sum_k ln|1 + z/k|.
inline double gamma_euler_limit(double z, std::uint64_t m) {
  detail::check_arg(z, "gamma_euler_limit");
  if (m == 0) throw PreconditionError("gamma_euler_limit: m must be >= 1");
  CompensatedSum lg(z * std::log(static_cast<double>(m)));
  lg.add(-std::log(std::abs(z)));
  bool negative = z < 0;
  for (std::uint64_t k = 1; k <= m; ++k) {
    const double q = z / static_cast<double>(k);
    if (q < -1.0) {
      negative = !negative;
      lg.add(-std::log(-(1.0 + q)));
    } else {
      lg.add(-std::log1p(q));
    }
  }
  const double v = std::exp(lg.value());
  return negative ? -v : v;
}

/// Gamma(z) as the integral of e^-t t^(z-1) over (0, inf) by adaptive
/// Gauss-Kronrod quadrature.
///
/// The range is split at max(1, z-1). Below the split, z < 1 uses u = t^z to
/// remove the endpoint singularity. The upper range is truncated at T with
/// T^(z-1) e^-T / (1 - (z-1)/T) below tol/10 (relative to the integral when it
/// exceeds one). The returned error_bound is the sum of quadrature estimates
/// and the tail bound and is at most tol * max(1, |value|).
inline Evaluation gamma_integral_quadrature(double z, double tol,
                                            std::size_t max_panels = 5000) {
  detail::check_arg(z, "gamma_integral_quadrature");
  if (!(z > 0)) throw DomainError("gamma_integral_quadrature: requires z > 0");
  if (!(tol > 1e-14 && tol < 1e-2)) {
    throw PreconditionError("gamma_integral_quadrature: tol must lie in (1e-14, 1e-2)");
  }
  const double zm1 = z - 1.0;
  const double split = std::max(1.0, zm1);
  const double share = 0.45 * tol;

  quadrature::Result lower;
  if (z < 1.0) {
    const double inv = 1.0 / z;
    auto g = [inv](double u) { return u <= 0 ? 1.0 : std::exp(-std::pow(u, inv)); };
    lower = quadrature::integrate(g, 0.0, 1.0, share * z, share, max_panels);
    lower.value *= inv;
    lower.error *= inv;
  } else {
    auto f = [zm1](double t) { return t <= 0 ? (zm1 == 0 ? 1.0 : 0.0) : std::exp(zm1 * std::log(t) - t); };
    lower = quadrature::integrate(f, 0.0, split, share, share, max_panels);
  }

  const double scale = std::max(1.0, std::abs(lower.value));
  auto log_tail_bound = [zm1](double t) {
    const double damp = 1.0 - std::max(0.0, zm1) / t;
    return zm1 * std::log(t) - t - std::log(damp);
  };
  const double log_budget = std::log(0.1 * tol * scale);
  double cut = split + std::max(10.0, 2.0 * std::max(0.0, zm1));
  while (log_tail_bound(cut) > log_budget) cut *= 1.25;
  const double tail = std::exp(log_tail_bound(cut));

  auto f = [zm1](double t) { return std::exp(zm1 * std::log(t) - t); };
  const quadrature::Result upper =
      quadrature::integrate(f, split, cut, share * scale, share, max_panels);

  Evaluation ev;
  ev.value = lower.value + upper.value;
  ev.error_bound = lower.error + upper.error + tail;
  ev.terms_used = lower.evaluations + upper.evaluations;
  ev.method = Method::quadrature;
  return ev;
}

}  // namespace wallis
