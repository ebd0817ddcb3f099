#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <string>
#include <vector>

#include "wallis/errors.hpp"
#include "wallis/numeric.hpp"

namespace wallis::quadrature {

struct Result {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
  std::size_t evaluations = 0;
};

namespace detail {

// 15-point Kronrod abscissae on [-1, 1]; odd indices are the 7-point Gauss
// nodes.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};

inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double value = resk * half;
  double err = std::abs((resk - resg) * half);
  err = std::max(err, 50.0 * kEps * resabs * std::abs(half));
  return Panel{a, b, value, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (G7/K15) quadrature of f over [a, b].
///
/// Panels are bisected in order of decreasing error estimate until the summed
/// estimate is at most max(abs_tol, rel_tol * |I|). The per-panel estimate is
/// |K15 - G7|, floored at a rounding term. Throws ConvergenceError when the
/// panel budget is exhausted first.
template <class F>
Result integrate(F&& f, double a, double b, double abs_tol, double rel_tol,
                 std::size_t max_panels = 5000) {
  if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("quadrature: invalid interval");
  }
  if (a == b) return {};
  std::priority_queue<detail::Panel> heap;
  heap.push(detail::gk15(f, a, b));
  double total = heap.top().value;
  double total_err = heap.top().error;
  std::size_t evals = 15;
  while (true) {
    const double target = std::max(abs_tol, rel_tol * std::abs(total));
    if (total_err <= target) break;
    if (heap.size() >= max_panels) {
      throw ConvergenceError("quadrature: panel budget of " + std::to_string(max_panels) +
                             " exhausted (error estimate " + std::to_string(total_err) + ")");
    }
    const detail::Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw ConvergenceError("quadrature: interval cannot be bisected further");
    }
    const detail::Panel left = detail::gk15(f, worst.a, mid);
    const detail::Panel right = detail::gk15(f, mid, worst.b);
    evals += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum from the panels to remove drift in the running totals.
  Result r;
  r.panels = heap.size();
  r.evaluations = evals;
  CompensatedSum sum;
  CompensatedSum err;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  r.value = sum.value();
  r.error = err.value() + 4.0 * kEps * std::abs(r.value);
  return r;
}

}  // namespace wallis::quadrature
