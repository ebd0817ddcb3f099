#pragma once

// Ratio of the variational minimum to the exact level, its large-l limit, and
// the product family obtained by following l = a + k b/2.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wallis/errors.hpp"
#include "wallis/gamma.hpp"
#include "wallis/product.hpp"

namespace wallis {

/// <H>_min / E_exact = (4/b) (l + (N-1)/2)^2 / (2l + b + N - 2)
///                     * G(p)^2 / (G(p + 1/b) G(p + 1 - 1/b)),  p = (2l + N - 1)/b.
inline double ratio(std::uint64_t ell, double b, int N = 3) {
  if (!std::isfinite(b) || !(b > 0)) throw DomainError("ratio: b must be positive");
  if (N < 3) throw DomainError("ratio: dimension must be >= 3");
  const double l = static_cast<double>(ell);
  const double p = (2.0 * l + N - 1.0) / b;
  const double front = 4.0 / b * std::pow(l + 0.5 * (N - 1.0), 2) / (2.0 * l + b + N - 2.0);
  return front * std::exp(-(log_gamma_difference(p, 1.0 / b) + log_gamma_difference(p, 1.0 - 1.0 / b)));
}

/// Subsequence l = a + k b/2, k = 0..k_max, for even b and 0 <= a < b/2.
struct RatioSequenceSpec {
  int b = 2;
  int a = 0;
  int dimension = 3;
  std::uint64_t k_max = 10;

  void validate() const {
    if (b <= 0 || b % 2 != 0) throw PreconditionError("ratio sequence: b must be a positive even integer");
    if (a < 0 || a >= b / 2) throw PreconditionError("ratio sequence: residue a must lie in {0, ..., b/2 - 1}");
    if (dimension < 3) throw PreconditionError("ratio sequence: dimension must be >= 3");
    if (k_max == 0) throw PreconditionError("ratio sequence: k_max must be positive");
  }
  [[nodiscard]] std::uint64_t ell_at(std::uint64_t k) const {
    return static_cast<std::uint64_t>(a) + k * static_cast<std::uint64_t>(b / 2);
  }
  /// l + (b + N - 2)/2: the natural large-l variable, (2l + b + N - 2)/2.
  [[nodiscard]] double shifted_ell(std::uint64_t k) const {
    return static_cast<double>(ell_at(k)) + 0.5 * (b + dimension - 2.0);
  }
};

struct RatioSequence {
  RatioSequenceSpec spec;
  std::vector<std::uint64_t> ells;
  std::vector<double> values;
};

inline RatioSequence ratio_sequence(const RatioSequenceSpec& spec) {
  spec.validate();
  RatioSequence out{spec, {}, {}};
  out.ells.reserve(spec.k_max + 1);
  out.values.reserve(spec.k_max + 1);
  for (std::uint64_t k = 0; k <= spec.k_max; ++k) {
    out.ells.push_back(spec.ell_at(k));
    out.values.push_back(ratio(out.ells.back(), spec.b, spec.dimension));
  }
  return out;
}

/// Two-level Richardson extrapolation to x -> inf under v(x) = L + c1/x + c2/x^2.
///
/// Uses the last sample and the samples whose abscissae are closest to one half
/// and one quarter of it, and evaluates the interpolating quadratic in 1/x at 0.
/// Throws ConvergenceError if the deviations between those samples grow.
inline double extrapolate_limit(std::span<const double> x, std::span<const double> values) {
  if (x.size() != values.size()) throw PreconditionError("extrapolate_limit: size mismatch");
  if (x.size() < 3) throw PreconditionError("extrapolate_limit: need at least three samples");
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1]) || !(x[0] > 0)) throw PreconditionError("extrapolate_limit: abscissae must increase and be positive");
  }
  const std::size_t i3 = x.size() - 1;
  auto nearest = [&](double target, std::size_t below) {
    std::size_t best = 0;
    for (std::size_t i = 0; i < below; ++i) {
      if (std::abs(x[i] - target) < std::abs(x[best] - target)) best = i;
    }
    return best;
  };
  std::size_t i2 = nearest(0.5 * x[i3], i3);
  std::size_t i1 = nearest(0.25 * x[i3], i2);
  if (i2 == 0) {
    i2 = 1;
    i1 = 0;
  }
  if (i1 >= i2) i1 = i2 - 1;

  const double h[3] = {1.0 / x[i1], 1.0 / x[i2], 1.0 / x[i3]};
  const double v[3] = {values[i1], values[i2], values[i3]};
  const double d1 = v[1] - v[0];
  const double d2 = v[2] - v[1];
  if (d1 == 0.0 && d2 == 0.0) return v[2];
  if (std::abs(d2) > std::abs(d1)) {
    throw ConvergenceError("extrapolate_limit: successive deviations do not decay");
  }
  double limit = 0.0;
  for (int i = 0; i < 3; ++i) {
    double w = 1.0;
    for (int j = 0; j < 3; ++j) {
      if (j != i) w *= (0.0 - h[j]) / (h[i] - h[j]);
    }
    limit += w * v[i];
  }
  return limit;
}

/// Extrapolated l -> inf limit of a ratio sequence, in the variable
/// l + (b + N - 2)/2.
inline double extrapolate_limit(const RatioSequence& seq) {
  std::vector<double> x;
  x.reserve(seq.ells.size());
  for (std::uint64_t k = 0; k < seq.ells.size(); ++k) x.push_back(seq.spec.shifted_ell(k));
  return extrapolate_limit(x, seq.values);
}

/// Observed orders ln(dev[i-1]/dev[i]) / ln(x[i]/x[i-1]); the first entry is NaN.
inline std::vector<double> convergence_orders(std::span<const double> x, std::span<const double> deviations) {
  std::vector<double> out(x.size(), std::nan(""));
  for (std::size_t i = 1; i < x.size() && i < deviations.size(); ++i) {
    const double d0 = std::abs(deviations[i - 1]);
    const double d1 = std::abs(deviations[i]);
    if (d0 > 0 && d1 > 0 && x[i] != x[i - 1]) out[i] = std::log(d0 / d1) / std::log(x[i] / x[i - 1]);
  }
  return out;
}

struct DerivedFamily {
  ProductFamily family;
  double target = 0.0;
  /// max_k |ratio(l_k) * target / partial_product(k) - 1| over k = 0..k_max.
  double telescoping_error = 0.0;
};

/// Rewrites the ratio along l = a + k b/2 with the gamma recursion. The ratio
/// at l_k equals prefactor * prod_{j<=k} term(j) / target exactly, which is
/// checked for every k up to k_max; a mismatch beyond 1e-10 throws.
inline DerivedFamily derive_product_family(const RatioSequenceSpec& spec) {
  spec.validate();
  const ProductFamily fam = ProductFamily::make(spec.b, spec.a, spec.dimension);
  const double target = closed_form_target(fam);
  CompensatedSum log_partial(std::log(prefactor(fam)));
  double worst = 0.0;
  for (std::uint64_t k = 0; k <= spec.k_max; ++k) {
    if (k > 0) log_partial.add(log_term(fam, k));
    const double r = ratio(spec.ell_at(k), spec.b, spec.dimension);
    const double mismatch = std::abs(std::log(r * target) - log_partial.value());
    worst = std::max(worst, mismatch);
  }
  if (!(worst <= 1e-10)) {
    throw Error("derive_product_family: telescoped ratio disagrees with the product (" + std::to_string(worst) + ")");
  }
  return {fam, target, worst};
}

}  // namespace wallis
