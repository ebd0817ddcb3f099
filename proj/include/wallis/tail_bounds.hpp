#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "wallis/errors.hpp"
#include "wallis/numeric.hpp"

namespace wallis {

/// Two-sided bracket [lower, upper] for a positive quantity.
struct Bracket {
  double lower = 1.0;
  double upper = 1.0;

  [[nodiscard]] double midpoint() const { return 0.5 * (lower + upper); }
  [[nodiscard]] double half_width() const { return 0.5 * (upper - lower); }
  [[nodiscard]] bool contains(double v) const { return lower <= v && v <= upper; }
};

/// Bracket for S = sum_{k > K} -ln(1 - d2 / x_k^2) with x_k = slope*k + offset.
///
/// Each log is squeezed between u + u^2/2 and u + u^2/2 + u^3/(3(1-u)) with
/// u = d2/x_k^2. The power sums sum 1/x_k^(2j) are convex in k and are bounded
/// below by the trapezoid comparison (integral from K+1 plus half the first
/// term) and above by the midpoint comparison (integral from K+1/2). Requires
/// x_K > 0 and d2/x_K^2 < 1/4.
inline Bracket log_tail_bracket(double d2, double slope, double offset, std::uint64_t K) {
  if (!(slope > 0) || !(d2 >= 0) || !std::isfinite(offset)) {
    throw PreconditionError("tail bracket: invalid slope/offset/d2");
  }
  const double kK = static_cast<double>(K);
  const double xK = slope * kK + offset;
  if (!(xK > 0) || !(d2 < 0.25 * xK * xK)) {
    throw PreconditionError("tail bracket: truncation index too small (need |d|/x_K < 1/2)");
  }
  if (d2 == 0.0) return {0.0, 0.0};

  auto integral = [&](double from, int j) {  // int_from^inf x(t)^(-2j) dt
    const double x = slope * from + offset;
    return std::pow(x, 1.0 - 2.0 * j) / (slope * (2.0 * j - 1.0));
  };
  const double x1 = slope * (kK + 1.0) + offset;
  auto lower_sum = [&](int j) { return integral(kK + 1.0, j) + 0.5 * std::pow(x1, -2.0 * j); };
  auto upper_sum = [&](int j) { return integral(kK + 0.5, j); };

  const double umax = d2 / (x1 * x1);
  const double lo = d2 * lower_sum(1) + 0.5 * d2 * d2 * lower_sum(2);
  const double hi = d2 * upper_sum(1) + 0.5 * d2 * d2 * upper_sum(2) +
                    d2 * d2 * d2 / (3.0 * (1.0 - umax)) * upper_sum(3);
  return {lo * (1.0 - 8.0 * kEps), hi * (1.0 + 8.0 * kEps)};
}

/// Multiplicative bracket for prod_{k > K} x_k^2 / (x_k^2 - d2); every factor
/// exceeds one, so lower >= 1.
inline Bracket growth_tail_bracket(double d2, double slope, double offset, std::uint64_t K) {
  const Bracket s = log_tail_bracket(d2, slope, offset, K);
  return {std::max(1.0, std::exp(s.lower) * (1.0 - 2.0 * kEps)),
          std::exp(s.upper) * (1.0 + 2.0 * kEps)};
}

/// Multiplicative bracket for prod_{k > K} (1 - d2 / x_k^2); every factor lies
/// in (0, 1).
inline Bracket shrink_tail_bracket(double d2, double slope, double offset, std::uint64_t K) {
  const Bracket s = log_tail_bracket(d2, slope, offset, K);
  return {std::exp(-s.upper) * (1.0 - 2.0 * kEps), std::min(1.0, std::exp(-s.lower) * (1.0 + 2.0 * kEps))};
}

}  // namespace wallis
