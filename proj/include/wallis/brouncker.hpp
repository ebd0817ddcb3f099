#pragma once

// Brouncker's continued fraction
//   f(s) = s + 1^2/(2s + 3^2/(2s + 5^2/(2s + ...)))
// with f(s-1) f(s+1) = s^2, its gamma form 4 [G((3+s)/4) / G((1+s)/4)]^2
// and the product (s+1) prod_{n>=1} (s+4n-3)(s+4n+1)/(s+4n-1)^2.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "wallis/errors.hpp"
#include "wallis/evaluation.hpp"
#include "wallis/gamma.hpp"
#include "wallis/product.hpp"

namespace wallis {

/// How the innermost denominator x_depth is seeded.
///   plain:      x_depth = 2s, the literal truncation.
///   asymptotic: x_depth = 2 depth + s + (s+1)^2 / (4 depth), the large-j
///               behaviour of the exact tail. Same limit, far fewer levels.
enum class CFTail { plain, asymptotic };

struct CFSpec {
  double s = 1.0;
  std::uint64_t depth = 1;
  std::optional<double> tol{};
  std::uint64_t max_depth = std::uint64_t{1} << 28;
  /// Unset: plain for a fixed depth, asymptotic when tol is set.
  std::optional<CFTail> tail{};

  void validate() const {
    if (!std::isfinite(s) || !(s > 0)) throw DomainError("CFSpec: s must be positive");
    if (depth == 0) throw PreconditionError("CFSpec: depth must be >= 1");
    if (tol && !(*tol > 0)) throw PreconditionError("CFSpec: tol must be positive");
  }
};

/// The continued fraction truncated after `depth` partial numerators, by
/// backward recurrence: x = 2s, x <- 2s + (2j+1)^2 / x for j = depth-1..1,
/// f = s + 1/x. depth = 1 gives s + 1/(2s).
inline double cf_truncation(double s, std::uint64_t depth, CFTail tail = CFTail::plain) {
  const double two_s = 2.0 * s;
  const double d = static_cast<double>(depth);
  double x = tail == CFTail::plain ? two_s : 2.0 * d + s + (s + 1.0) * (s + 1.0) / (4.0 * d);
  for (std::uint64_t j = depth - 1; j >= 1; --j) {
    const double num = 2.0 * static_cast<double>(j) + 1.0;
    x = two_s + num * num / x;
  }
  return s + 1.0 / x;
}

/// Fixed-depth evaluation when spec.tol is unset; error_bound is then the
/// distance to the next truncation. Otherwise the depth doubles from
/// spec.depth until two successive truncations differ by less than tol;
/// error_bound is that last difference.
inline Evaluation cf_eval(const CFSpec& spec) {
  spec.validate();
  if (!spec.tol) {
    const CFTail tail = spec.tail.value_or(CFTail::plain);
    const double v = cf_truncation(spec.s, spec.depth, tail);
    const double next = cf_truncation(spec.s, spec.depth + 1, tail);
    return {v, std::abs(next - v), spec.depth, Method::continued_fraction};
  }
  const CFTail tail = spec.tail.value_or(CFTail::asymptotic);
  std::uint64_t depth = spec.depth;
  double prev = cf_truncation(spec.s, depth, tail);
  while (true) {
    if (depth > spec.max_depth / 2) {
      throw BudgetError("cf_eval: depth budget of " + std::to_string(spec.max_depth) + " exhausted");
    }
    depth *= 2;
    const double cur = cf_truncation(spec.s, depth, tail);
    const double diff = std::abs(cur - prev);
    if (diff < *spec.tol) return {cur, diff, depth, Method::continued_fraction};
    prev = cur;
  }
}

namespace detail {

// Valid for s > -1; the endpoint s = 0 is reached only through this form.
inline double brouncker_gamma_form(double s) {
  if (!(s > -1.0)) throw DomainError("Brouncker gamma form needs s > -1");
  return 4.0 * std::exp(2.0 * log_gamma_difference(0.25 * (1.0 + s), 0.5));
}

}  // namespace detail

/// 4 [G((3+s)/4) / G((1+s)/4)]^2.
inline double cf_gamma_form(double s) {
  if (!std::isfinite(s) || !(s > 0)) throw DomainError("cf_gamma_form: s must be positive");
  return detail::brouncker_gamma_form(s);
}

/// The family b = 2, a = (s-1)/4, N = 3 whose product evaluates to (s+1)/f(s).
inline ProductFamily brouncker_family(double s) { return ProductFamily::make(2.0, 0.25 * (s - 1.0), 3); }

/// (s+1) prod_{n>=1} (s+4n-3)(s+4n+1)/(s+4n-1)^2 through the b = 2,
/// a = (s-1)/4 product: f(s) = (s+1) / evaluate(family).
inline Evaluation cf_product_form(double s, double tol) {
  if (!std::isfinite(s) || !(s > 0)) throw DomainError("cf_product_form: s must be positive");
  const ProductFamily fam = brouncker_family(s);
  // f = (s+1)/E, so a tolerance of tol E^2 / (2 (s+1)) on E keeps f within
  // tol/2. Every factor exceeds one, so the prefactor underestimates E.
  const double e = prefactor(fam);
  const double inner_tol = std::clamp(0.5 * tol * e * e / (s + 1.0), 1.01e-12, 0.5e-2);
  const Evaluation ev = evaluate(fam, inner_tol);
  const double value = (s + 1.0) / ev.value;
  const double rel = ev.error_bound / ev.value;
  return {value, value * rel / (1.0 - rel), ev.terms_used, Method::tail_corrected};
}

/// f(s-1) f(s+1) / s^2 from the gamma form; the recursion makes it exactly 1.
/// s = 1 is admitted, using the gamma form at the endpoint s - 1 = 0.
inline double functional_equation_check(double s) {
  if (!std::isfinite(s) || !(s >= 1.0)) throw DomainError("functional_equation_check: requires s >= 1");
  return detail::brouncker_gamma_form(s - 1.0) * detail::brouncker_gamma_form(s + 1.0) / (s * s);
}

}  // namespace wallis
