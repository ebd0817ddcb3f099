#pragma once

// Infinite products of the form
//
//   G(p) G(p + 2/b) / G(p + 1/b)^2
//     = P * prod_{k>=1} (kb + 2a + N - 1)^2 / ((kb + 2a - b + N)(kb + 2a + b + N - 2)),
//
// with p = (2a + N - 2)/b and P = (2a+N-1)^2 / ((2a+N-2)(2a+N-2+b)).
// N = 3 is the three-dimensional family; b = 2, a = 0 is Wallis' product.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wallis/errors.hpp"
#include "wallis/evaluation.hpp"
#include "wallis/gamma.hpp"
#include "wallis/numeric.hpp"
#include "wallis/tail_bounds.hpp"

namespace wallis {

/// The (b, a, N) triple indexing one product formula.
class ProductFamily {
 public:
  /// Accepts any b > 0 and real a with 2a + N - 2 > 0, which keeps every gamma
  /// argument and every denominator positive. Parameters outside the even-b,
  /// a in {0, ..., b/2 - 1} lattice are flagged as generalized.
  static ProductFamily make(double b, double a, int N = 3) {
    if (!std::isfinite(b) || !(b > 0)) throw DomainError("ProductFamily: b must be positive and finite");
    if (!std::isfinite(a)) throw DomainError("ProductFamily: a must be finite");
    if (N < 3) throw DomainError("ProductFamily: dimension N must be >= 3");
    if (!(2.0 * a + N - 2.0 > 0)) {
      throw DomainError("ProductFamily: (b=" + std::to_string(b) + ", a=" + std::to_string(a) +
                        ", N=" + std::to_string(N) + ") lies outside the positivity region 2a+N-2 > 0");
    }
    return ProductFamily(b, a, N);
  }

  [[nodiscard]] double b() const { return b_; }
  [[nodiscard]] double a() const { return a_; }
  [[nodiscard]] int dimension() const { return n_; }
  [[nodiscard]] bool generalized() const { return generalized_; }

  /// x_k = kb + offset with offset = 2a + N - 1.
  [[nodiscard]] double offset() const { return 2.0 * a_ + n_ - 1.0; }
  /// d = b - 1; term_k = x_k^2 / (x_k^2 - d^2).
  [[nodiscard]] double half_gap() const { return b_ - 1.0; }

  /// Smallest gamma argument (2a + N - 2)/b.
  [[nodiscard]] double base_argument() const { return (2.0 * a_ + n_ - 2.0) / b_; }

  [[nodiscard]] std::string describe() const {
    return "b=" + format(b_) + " a=" + format(a_) + " N=" + std::to_string(n_);
  }

 private:
  ProductFamily(double b, double a, int N) : b_(b), a_(a), n_(N) {
    const bool even_b = b == std::floor(b) && static_cast<long long>(b) % 2 == 0;
    const bool lattice_a = a == std::floor(a) && a >= 0 && a <= b / 2 - 1;
    generalized_ = !(even_b && lattice_a);
  }

  static std::string format(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }

  double b_;
  double a_;
  int n_;
  bool generalized_ = false;
};

/// k-th factor (kb + 2a + N - 1)^2 / ((kb + 2a - b + N)(kb + 2a + b + N - 2)).
inline double term(const ProductFamily& f, std::uint64_t k) {
  if (k == 0) throw PreconditionError("term: k starts at 1");
  const double x = static_cast<double>(k) * f.b() + f.offset();
  const double d = f.half_gap();
  const double lo = x - d;
  const double hi = x + d;
  if (lo == 0.0 || hi == 0.0) throw DivisionByZeroError("term: vanishing denominator");
  return x * x / (lo * hi);
}

/// ln term(f, k) = -ln(1 - d^2/x^2), accurate when the factor is close to one.
inline double log_term(const ProductFamily& f, std::uint64_t k) {
  const double x = static_cast<double>(k) * f.b() + f.offset();
  const double d = f.half_gap();
  return -std::log1p(-(d * d) / (x * x));
}

inline double prefactor(const ProductFamily& f) {
  const double c = f.offset();
  const double lo = c - 1.0;
  const double hi = c - 1.0 + f.b();
  if (lo == 0.0 || hi == 0.0) throw DivisionByZeroError("prefactor: vanishing denominator");
  return c * c / (lo * hi);
}

/// Gamma closed form G(p) G(p + 2/b) / G(p + 1/b)^2, p = (2a + N - 2)/b.
inline double closed_form_target(const ProductFamily& f) {
  const double p = f.base_argument();
  const double h = 1.0 / f.b();
  return std::exp(log_gamma_difference(p + h, h) - log_gamma_difference(p, h));
}

namespace detail {

struct LogProduct {
  double log_value = 0.0;
  double abs_log_mass = 0.0;  // sum of |ln factor|, drives the rounding estimate
};

inline LogProduct log_partial_product(const ProductFamily& f, std::uint64_t K, bool include_prefactor) {
  CompensatedSum s;
  double mass = 0.0;
  if (include_prefactor) {
    const double lp = std::log(prefactor(f));
    s.add(lp);
    mass += std::abs(lp);
  }
  for (std::uint64_t k = 1; k <= K; ++k) {
    const double lt = log_term(f, k);
    s.add(lt);
    mass += std::abs(lt);
  }
  return {s.value(), mass};
}

inline double rounding_bound(double value, double abs_log_mass) {
  return std::abs(value) * (6.0 * kEps * abs_log_mass + 4.0 * kEps);
}

}  // namespace detail

/// Product of the first K factors, optionally times the prefactor. The error
/// bound is the distance to the gamma closed form of the same (truncated)
/// expression's infinite limit, plus rounding.
inline Evaluation partial_product(const ProductFamily& f, std::uint64_t K, bool include_prefactor) {
  const detail::LogProduct lp = detail::log_partial_product(f, K, include_prefactor);
  Evaluation ev;
  ev.value = std::exp(lp.log_value);
  double limit = closed_form_target(f);
  if (!include_prefactor) limit /= prefactor(f);
  ev.error_bound = std::abs(limit - ev.value) + detail::rounding_bound(ev.value, lp.abs_log_mass);
  ev.terms_used = K;
  ev.method = Method::partial;
  return ev;
}

/// Bracket for prod_{k > K} term(f, k).
inline Bracket tail_bound(const ProductFamily& f, std::uint64_t K) {
  if (K == 0) throw PreconditionError("tail_bound: K must be positive");
  const double d = f.half_gap();
  const double xK = static_cast<double>(K) * f.b() + f.offset();
  if (!(xK > 0) || !(std::abs(d) / xK < 0.5)) {
    throw PreconditionError("tail_bound: need (b-1)/(Kb + 2a + N - 1) < 1/2 at K=" + std::to_string(K));
  }
  return growth_tail_bracket(d * d, f.b(), f.offset(), K);
}

/// Smallest K >= 1 at which tail_bound's precondition holds.
inline std::uint64_t min_tail_index(const ProductFamily& f) {
  const double need = (2.0 * std::abs(f.half_gap()) - f.offset()) / f.b();
  std::uint64_t K = need < 1.0 ? 1 : static_cast<std::uint64_t>(std::floor(need)) + 1;
  while (true) {
    const double xK = static_cast<double>(K) * f.b() + f.offset();
    if (xK > 0 && std::abs(f.half_gap()) / xK < 0.5) return K;
    ++K;
  }
}

/// Tail-corrected value of the full product (prefactor included) with
/// |value - closed_form_target| <= error_bound <= tol.
///
/// K is the smallest index whose tail bracket, scaled by an upper bound on the
/// product, has half-width at most tol/2; the other half of the budget covers
/// rounding. The bracket is re-checked at the chosen K.
inline Evaluation evaluate(const ProductFamily& f, double tol, std::uint64_t max_terms = 100'000'000) {
  if (!(tol > 1e-12 && tol < 1e-2)) throw PreconditionError("evaluate: tol must lie in (1e-12, 1e-2)");
  const std::uint64_t k0 = min_tail_index(f);
  const double cap = std::exp(detail::log_partial_product(f, k0, true).log_value) * tail_bound(f, k0).upper;

  auto fits = [&](std::uint64_t K) { return cap * tail_bound(f, K).half_width() <= 0.5 * tol; };
  std::uint64_t hi = k0;
  while (!fits(hi)) {
    if (hi > max_terms) {
      throw BudgetError("evaluate: more than " + std::to_string(max_terms) + " terms needed for " + f.describe());
    }
    hi *= 2;
  }
  std::uint64_t lo = hi / 2 < k0 ? k0 : hi / 2;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (fits(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const std::uint64_t K = hi;
  if (K > max_terms) throw BudgetError("evaluate: term cap exceeded for " + f.describe());

  const detail::LogProduct lp = detail::log_partial_product(f, K, true);
  const double partial = std::exp(lp.log_value);
  const Bracket tail = tail_bound(f, K);
  Evaluation ev;
  ev.value = partial * tail.midpoint();
  ev.error_bound = partial * tail.half_width() + detail::rounding_bound(ev.value, lp.abs_log_mass + 1.0);
  if (ev.error_bound > tol) {
    throw ConvergenceError("evaluate: a posteriori bound exceeds tolerance for " + f.describe());
  }
  ev.terms_used = K;
  ev.method = Method::tail_corrected;
  return ev;
}

/// Both sides of the finite Pochhammer identity
///   prod_{k=1}^{ell} term(f, k) = (1+q)_ell^2 / ((w)_ell (2+p)_ell),
/// q = (2a+N-1)/b, w = (2a+N)/b, p = (2a+N-2)/b.
inline std::pair<double, double> pochhammer_identity_check(const ProductFamily& f, std::uint64_t ell) {
  if (ell > 30) throw PreconditionError("pochhammer_identity_check: ell must be <= 30");
  double lhs = 1.0;
  for (std::uint64_t k = 1; k <= ell; ++k) lhs *= term(f, k);
  const double b = f.b();
  const double q = f.offset() / b;
  const double w = (f.offset() + 1.0) / b;
  const double p = f.base_argument();
  const double top = pochhammer({1.0 + q, ell});
  const double rhs = top * top / (pochhammer({w, ell}) * pochhammer({2.0 + p, ell}));
  return {lhs, rhs};
}

/// G(z1+m) G(z2+m) / (G(w1+m) G(w2+m)) for each m, requiring z1 + z2 = w1 + w2.
inline std::vector<double> gamma_ratio_limit_check(double z1, double z2, double w1, double w2,
                                                   std::span<const double> m_list) {
  if (std::abs((z1 + z2) - (w1 + w2)) > 1e-12) {
    throw PreconditionError("gamma_ratio_limit_check: z1 + z2 must equal w1 + w2");
  }
  std::vector<double> out;
  out.reserve(m_list.size());
  for (const double m : m_list) {
    if (!(z1 + m > 0 && z2 + m > 0 && w1 + m > 0 && w2 + m > 0)) {
      throw DomainError("gamma_ratio_limit_check: shifted arguments must be positive");
    }
    out.push_back(std::exp(log_gamma_difference(w1 + m, z1 - w1) + log_gamma_difference(w2 + m, z2 - w2)));
  }
  return out;
}

}  // namespace wallis
