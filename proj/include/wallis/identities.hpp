#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wallis/errors.hpp"
#include "wallis/evaluation.hpp"
#include "wallis/gamma.hpp"
#include "wallis/numeric.hpp"
#include "wallis/product.hpp"
#include "wallis/tail_bounds.hpp"

namespace wallis {

/// z = 1/b for a positive even integer b.
class ReflectionCase {
 public:
  explicit ReflectionCase(int b) : b_(b) {
    if (b < 2 || b % 2 != 0) throw PreconditionError("ReflectionCase: b must be an even integer >= 2");
  }
  [[nodiscard]] int b() const { return b_; }
  [[nodiscard]] double z() const { return 1.0 / b_; }
  /// The a = b/2 - 1 member of the three-dimensional family.
  [[nodiscard]] ProductFamily family() const { return ProductFamily::make(b_, b_ / 2 - 1, 3); }

 private:
  int b_;
};

/// b^3 / ((b-1)(2b-1)) * prod_{k>=1} (kb+b)^2 / ((kb+1)(kb+2b-1)), tail corrected.
/// This is b times the a = b/2 - 1 product, so it equals G(1 - 1/b) G(1/b).
inline Evaluation reflection_product_rhs(const ReflectionCase& c, double tol) {
  const double b = c.b();
  Evaluation ev = evaluate(c.family(), tol / b);
  ev.value *= b;
  ev.error_bound *= b;
  return ev;
}

/// G(1 - z) G(z) sin(pi z) / pi, which the reflection formula makes 1.
inline double reflection_check(double z) {
  if (!std::isfinite(z)) throw DomainError("reflection_check: non-finite z");
  if (is_integer(z)) throw PoleError("reflection_check: integer z");
  return gamma(1.0 - z) * gamma(z) * sin_pi(z) / std::numbers::pi;
}

struct TruncatedProduct {
  double partial = 0.0;  // truncated product without tail correction
  Evaluation corrected;  // tail-corrected value and bound
};

/// -(z-1) prod_{k<=K} (1 - (z-1)^2/k^2), Euler's sine product for sin(pi z)/pi
/// written around z = 1, with the tail k > K bracketed.
inline TruncatedProduct sine_product(double z, std::uint64_t K) {
  const double w = z - 1.0;
  if (!(std::abs(w) < 0.5 * static_cast<double>(K))) {
    throw PreconditionError("sine_product: need |z - 1| < K/2");
  }
  CompensatedSum s;
  bool negative = w > 0;  // leading factor -(z-1)
  if (w == 0.0) return {0.0, {0.0, 0.0, K, Method::tail_corrected}};
  s.add(std::log(std::abs(w)));
  double mass = std::abs(std::log(std::abs(w)));
  for (std::uint64_t k = 1; k <= K; ++k) {
    const double kk = static_cast<double>(k);
    const double f = w * w / (kk * kk);
    if (f == 1.0) return {0.0, {0.0, 0.0, K, Method::tail_corrected}};
    if (f > 1.0) {
      negative = !negative;
      s.add(std::log(f - 1.0));
    } else {
      s.add(std::log1p(-f));
    }
    mass += std::abs(std::log(std::abs(1.0 - f)));
  }
  const double partial = (negative ? -1.0 : 1.0) * std::exp(s.value());
  const Bracket tail = shrink_tail_bracket(w * w, 1.0, 0.0, K);
  const double value = partial * tail.midpoint();
  const double bound = std::abs(partial) * tail.half_width() + std::abs(value) * (6.0 * kEps * mass + 4.0 * kEps);
  return {partial, {value, bound, K, Method::tail_corrected}};
}

/// (4w^2 - 1)/pi * prod_{k<=K} (1 - w^2/(k + 1/2)^2) with w = z + 1/2, the
/// half-shifted product for 1/(G(1-z) G(z)) = sin(pi z)/pi, tail corrected.
inline TruncatedProduct half_shift_sine_product(double z, std::uint64_t K) {
  const double w = z + 0.5;
  if (!(std::abs(w) < 0.5 * (static_cast<double>(K) + 0.5))) {
    throw PreconditionError("half_shift_sine_product: need |z + 1/2| < (K + 1/2)/2");
  }
  double partial = (4.0 * w * w - 1.0) / std::numbers::pi;
  CompensatedSum s;
  double mass = 0.0;
  for (std::uint64_t k = 1; k <= K; ++k) {
    const double x = static_cast<double>(k) + 0.5;
    const double lf = std::log1p(-(w * w) / (x * x));
    s.add(lf);
    mass += std::abs(lf);
  }
  partial *= std::exp(s.value());
  const Bracket tail = shrink_tail_bracket(w * w, 1.0, 0.5, K);
  const double value = partial * tail.midpoint();
  const double bound = std::abs(partial) * tail.half_width() + std::abs(value) * (6.0 * kEps * mass + 8.0 * kEps);
  return {partial, {value, bound, K, Method::tail_corrected}};
}

/// sin(pi / 2^n) as (1/2) sqrt(2 - sqrt(2 + sqrt(2 + ... sqrt 2))) with n - 2
/// radicals inside.
///
/// The radicals r_1 = sqrt 2, r_{j+1} = sqrt(2 + r_j) approach 2, so the
/// defect e_j = 2 - r_j is carried instead through the exact recurrence
/// e_{j+1} = e_j / (2 + sqrt(4 - e_j)); the final 2 - r then has no
/// cancellation.
inline double nested_radical_sin(int n) {
  if (n < 3) throw PreconditionError("nested_radical_sin: n must be >= 3");
  double e = 2.0 / (2.0 + std::numbers::sqrt2);  // 2 - sqrt 2
  for (int j = 2; j <= n - 2; ++j) e = e / (2.0 + std::sqrt(4.0 - e));
  return 0.5 * std::sqrt(e);
}

struct HalfShiftResult {
  int b = 4;
  int dimension = 3;
  Evaluation product;          // (b/2)^2/((b/2-1)(3b/2-1)) prod (kb+b/2)^2/((kb+1-b/2)(kb+3b/2-1))
  double gamma_form = 0.0;     // G(1/2 + 1/b) G(1/2 - 1/b) / pi
  double cosine_form = 0.0;    // 1 / cos(pi / b)
  double ratio = 0.0;          // product / gamma_form

  [[nodiscard]] bool consistent(double tol) const {
    return std::abs(ratio - 1.0) <= tol && std::abs(gamma_form / cosine_form - 1.0) <= std::max(tol, 1e-12);
  }
};

/// The N = b/2 - 2a + 1 member of the N-dimensional family with a = 0, which
/// turns the product into G(1/2 + 1/b) G(1/2 - 1/b) / pi = 1 / cos(pi/b).
inline HalfShiftResult half_shift_reflection_check(int b, double tol) {
  if (b < 4 || b % 2 != 0) throw PreconditionError("half_shift_reflection_check: b must be an even integer >= 4");
  const int N = b / 2 + 1;
  const ProductFamily fam = ProductFamily::make(b, 0.0, N);
  HalfShiftResult r;
  r.b = b;
  r.dimension = N;
  r.product = evaluate(fam, tol);
  const double inv_b = 1.0 / b;
  r.gamma_form = gamma(0.5 + inv_b) * gamma(0.5 - inv_b) / std::numbers::pi;
  r.cosine_form = 1.0 / std::cos(std::numbers::pi * inv_b);
  r.ratio = r.product.value / r.gamma_form;
  return r;
}

enum class SpecialCase { wallis, catalan_pi_2sqrt2, sqrt2, b6_a0, pi_3, eights, pow2 };

/// How a special value is read off a product family evaluation:
/// target = multiplier * (strip_prefactor ? value / prefactor : value).
struct PrefactorChain {
  double multiplier = 1.0;
  bool strip_prefactor = false;
  std::string description;
};

struct SpecialValue {
  std::string id;
  double target = 0.0;
  /// Second closed form of the same number where one exists (B6_A0), else NaN.
  double alternate_target = std::numeric_limits<double>::quiet_NaN();
  ProductFamily family;
  PrefactorChain chain;

  [[nodiscard]] Evaluation apply(const Evaluation& family_value) const {
    const double scale = chain.multiplier / (chain.strip_prefactor ? prefactor(family) : 1.0);
    return {family_value.value * scale, family_value.error_bound * std::abs(scale), family_value.terms_used,
            family_value.method};
  }
};

/// Closed-form target and generating family of each named identity. POW2
/// takes n >= 3 and uses b = 2^n, a = 2^(n-1) - 1.
inline SpecialValue special_value(SpecialCase c, int n = 3) {
  using std::numbers::pi;
  using std::numbers::sqrt2;
  switch (c) {
    case SpecialCase::wallis:
      return {"WALLIS", pi / 2, std::nan(""), ProductFamily::make(2, 0), {1.0, false, "pi/2 = (2*2)/(1*3) prod"}};
    case SpecialCase::catalan_pi_2sqrt2:
      return {"CATALAN_PI_2SQRT2", pi / (2 * sqrt2), std::nan(""), ProductFamily::make(4, 1),
              {1.0, false, "pi/(2 sqrt2) = (4*4)/(3*7) prod"}};
    case SpecialCase::sqrt2:
      return {"SQRT2", sqrt2, std::nan(""), ProductFamily::make(4, 0), {1.0, false, "sqrt2 = (2*2)/(1*5) prod"}};
    case SpecialCase::b6_a0: {
      const double radical = 7.0 * std::sqrt(3.0) / (4.0 * std::cbrt(2.0));
      const double via_gamma = 7.0 * std::sqrt(pi) * gamma(1.0 / 6.0) / (4.0 * std::pow(gamma(1.0 / 3.0), 2));
      return {"B6_A0", radical, via_gamma, ProductFamily::make(6, 0),
              {1.0, true, "prod without the (2*2)/(1*7) prefactor"}};
    }
    case SpecialCase::pi_3:
      return {"PI_3", pi / 3, std::nan(""), ProductFamily::make(6, 2), {1.0, false, "pi/3 = (6*6)/(5*11) prod"}};
    case SpecialCase::eights:
      return {"EIGHTS", pi / (4 * std::sqrt(2 - sqrt2)), std::nan(""), ProductFamily::make(8, 3),
              {1.0, false, "pi/(4 sqrt(2 - sqrt2)) = (8*8)/(7*15) prod"}};
    case SpecialCase::pow2: {
      if (n < 3 || n > 30) throw DomainError("special_value: POW2 needs 3 <= n <= 30");
      const double b = std::ldexp(1.0, n);
      return {"POW2(" + std::to_string(n) + ")", pi / nested_radical_sin(n), std::nan(""),
              ProductFamily::make(b, b / 2 - 1),
              {b, false, "2 pi / sqrt(2 - sqrt(2 + ...)) = 2^n * prefactor * prod"}};
    }
  }
  throw DomainError("special_value: unknown case");
}

/// Parses WALLIS, CATALAN_PI_2SQRT2, SQRT2, B6_A0, PI_3, EIGHTS or POW2(n).
inline SpecialValue special_value(std::string_view id) {
  if (id == "WALLIS") return special_value(SpecialCase::wallis);
  if (id == "CATALAN_PI_2SQRT2") return special_value(SpecialCase::catalan_pi_2sqrt2);
  if (id == "SQRT2") return special_value(SpecialCase::sqrt2);
  if (id == "B6_A0") return special_value(SpecialCase::b6_a0);
  if (id == "PI_3") return special_value(SpecialCase::pi_3);
  if (id == "EIGHTS") return special_value(SpecialCase::eights);
  if (id.starts_with("POW2(") && id.ends_with(")")) {
    const std::string digits(id.substr(5, id.size() - 6));
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos && digits.size() < 4) {
      return special_value(SpecialCase::pow2, std::stoi(digits));
    }
  }
  throw DomainError("special_value: unknown case '" + std::string(id) + "'");
}

inline std::vector<SpecialValue> all_special_values(int max_pow2 = 5) {
  std::vector<SpecialValue> out;
  for (auto c : {SpecialCase::wallis, SpecialCase::catalan_pi_2sqrt2, SpecialCase::sqrt2, SpecialCase::b6_a0,
                 SpecialCase::pi_3, SpecialCase::eights}) {
    out.push_back(special_value(c));
  }
  for (int n = 3; n <= max_pow2; ++n) out.push_back(special_value(SpecialCase::pow2, n));
  return out;
}

}  // namespace wallis
