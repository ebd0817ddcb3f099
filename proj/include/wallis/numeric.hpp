#pragma once

#include <cmath>
#include <limits>
#include <numbers>

namespace wallis {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

/// Neumaier's variant of Kahan summation. Long products of factors close to
/// one are accumulated as sums of logarithms through this type.
class CompensatedSum {
 public:
  constexpr CompensatedSum() = default;
  constexpr explicit CompensatedSum(double init) : sum_(init) {}

  constexpr void add(double x) {
    const double t = sum_ + x;
    if ((sum_ < 0 ? -sum_ : sum_) >= (x < 0 ? -x : x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  constexpr CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }

  [[nodiscard]] constexpr double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// sin(pi x) with exact argument reduction, so that sin_pi(n) == 0 for
/// integers and sin_pi(1/6) is correctly rounded up to libm accuracy.
inline double sin_pi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  double sign = 1.0;
  if (x < 0) {
    x = -x;
    sign = -1.0;
  }
  double r = std::fmod(x, 2.0);  // exact
  if (r >= 1.0) {
    r -= 1.0;
    sign = -sign;
  }
  if (r > 0.5) r = 1.0 - r;  // exact for r in (0.5, 1)
  if (r == 0.0) return 0.0;
  if (r == 0.5) return sign;
  if (r > 0.25) return sign * std::cos(std::numbers::pi * (0.5 - r));
  return sign * std::sin(std::numbers::pi * r);
}

inline bool is_nonpositive_integer(double z) { return z <= 0.0 && z == std::floor(z); }

inline bool is_integer(double z) { return std::isfinite(z) && z == std::floor(z); }

inline double relative_difference(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

}  // namespace wallis
