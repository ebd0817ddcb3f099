#pragma once

// Single evaluations (one ReportRow each) and convergence tables.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wallis/brouncker.hpp"
#include "wallis/correspondence.hpp"
#include "wallis/gamma.hpp"
#include "wallis/identities.hpp"
#include "wallis/product.hpp"
#include "wallis/report.hpp"
#include "wallis/variational.hpp"
#include "wallis/verify.hpp"

namespace wallis::commands {

using report::ReportRow;
using report::Series;
using verify::num;

/// Scalar arguments of `eval` and `converge`; unset fields take per-operation
/// defaults.
struct Args {
  std::optional<double> b;
  std::optional<double> a;
  std::optional<int> dimension;
  std::optional<std::uint64_t> ell;
  std::optional<double> s;
  std::optional<int> n;
  std::optional<std::uint64_t> depth;
  std::optional<double> tol;
  std::vector<std::uint64_t> k;
  std::vector<std::uint64_t> depths;
};

inline constexpr std::string_view kEvalTargets[] = {"product", "brouncker", "energy",    "ratio",
                                                    "uncertainty", "gamma", "reflection", "nested"};
inline constexpr std::string_view kConvergeTargets[] = {"product", "ratio", "cf"};

namespace detail {

inline double need(const std::optional<double>& v, const char* flag, const char* op) {
  if (!v) throw PreconditionError(std::string(op) + " requires --" + flag);
  return *v;
}

inline std::uint64_t ell_or_zero(const Args& a) { return a.ell.value_or(0); }

// sqrt(M(p+4) M(p) / M(p+2)^2 - 1) with M(q) = int r^q exp(-2 alpha r^b) dr,
// by quadrature. alpha = p/(2b) puts the peak of r^p exp(-2 alpha r^b) at
// r = 1; all three moments share that envelope, whose scale cancels.
inline Evaluation uncertainty_quadrature(double b, double p, double tol) {
  const double alpha = p / (2.0 * b);
  auto log_env = [&](double r) { return p * std::log(r) - 2.0 * alpha * (std::pow(r, b) - 1.0); };
  auto moment = [&](double j) {
    auto dens = [&](double r) { return r <= 0 ? 0.0 : std::pow(r, j) * std::exp(log_env(r)); };
    auto env = [&](double r) { return log_env(r) + j * std::log(r); };
    return wallis::detail::integrate_radial(dens, env, 1.0, 0.1 * tol);
  };
  const auto m0 = moment(0.0);
  const auto m2 = moment(2.0);
  const auto m4 = moment(4.0);
  const double q = m4.value * m0.value / (m2.value * m2.value);
  const double rel = m4.error / m4.value + m0.error / m0.value + 2.0 * m2.error / m2.value;
  const double u = std::sqrt(q - 1.0);
  return {u, q * rel / (2.0 * u), m0.evaluations + m2.evaluations + m4.evaluations, Method::quadrature};
}

}  // namespace detail

/// One row for the named operation.
inline ReportRow eval(std::string_view target, const Args& args) {
  const int N = args.dimension.value_or(3);
  if (target == "product") {
    const double tol = args.tol.value_or(verify::kDefaultTol);
    const ProductFamily f = ProductFamily::make(detail::need(args.b, "b", "eval product"), args.a.value_or(0.0), N);
    const Evaluation ev = evaluate(f, tol);
    return report::make_row("PRODUCT", f.describe() + " tol=" + num(tol), ev.value, closed_form_target(f),
                            ev.error_bound, ev.terms_used, tol);
  }
  if (target == "brouncker") {
    const double s = detail::need(args.s, "s", "eval brouncker");
    const std::optional<double> tol = args.depth && !args.tol ? std::nullopt : std::optional(args.tol.value_or(1e-8));
    const Evaluation ev = cf_eval({.s = s, .depth = args.depth.value_or(1), .tol = tol});
    const std::string in = "s=" + num(s) + (tol ? " tol=" + num(*tol) : " depth=" + num(ev.terms_used));
    return report::make_row("BROUNCKER", in, ev.value, cf_gamma_form(s), ev.error_bound, ev.terms_used,
                            tol.value_or(0.0));
  }
  if (target == "energy") {
    const TrialShape shape{detail::need(args.b, "b", "eval energy"), detail::ell_or_zero(args), N};
    const Minimum m = min_energy_analytic(shape);
    const Minimum numeric = min_energy_numeric(shape, {}, 1e-11);
    return report::make_row("ENERGY", "b=" + num(shape.b) + " ell=" + num(shape.ell) + " N=" + num(N), m.energy,
                            numeric.energy, 0.0, 0, 1e-9 * std::abs(m.energy));
  }
  if (target == "ratio") {
    const double b = detail::need(args.b, "b", "eval ratio");
    const std::uint64_t ell = detail::ell_or_zero(args);
    const double direct = min_energy_analytic({b, ell, N}).energy / exact_energy({0, ell, N});
    return report::make_row("RATIO", "b=" + num(b) + " ell=" + num(ell) + " N=" + num(N), ratio(ell, b, N), direct,
                            0.0, 0, 1e-12);
  }
  if (target == "uncertainty") {
    const double b = detail::need(args.b, "b", "eval uncertainty");
    const std::uint64_t ell = detail::ell_or_zero(args);
    const double p = 2.0 * static_cast<double>(ell) + N - 1.0;
    const Evaluation q = detail::uncertainty_quadrature(b, p, 1e-10);
    return report::make_row("UNCERTAINTY", "b=" + num(b) + " ell=" + num(ell) + " N=" + num(N),
                            uncertainty_r2({1.0, {b, ell, N}}), q.value, q.error_bound, q.terms_used,
                            1e-6 * std::abs(q.value));
  }
  if (target == "gamma") {
    const double z = detail::need(args.s, "s", "eval gamma");
    if (is_nonpositive_integer(z)) throw PoleError("eval gamma: pole at z=" + num(z));
    // Shift into z > 0, integrate there and divide by the rising product.
    double shift = 0.0;
    double divisor = 1.0;
    while (z + shift <= 0) {
      divisor *= z + shift;
      shift += 1.0;
    }
    const Evaluation q = gamma_integral_quadrature(z + shift, 1e-12);
    const double target_value = q.value / divisor;
    const double bound = q.error_bound / std::abs(divisor);
    return report::make_row("GAMMA", "z=" + num(z), wallis::gamma(z), target_value, bound, q.terms_used,
                            1e-12 * std::abs(target_value));
  }
  if (target == "reflection") {
    const double b = detail::need(args.b, "b", "eval reflection");
    if (b != std::floor(b) || std::fmod(b, 2.0) != 0.0) throw PreconditionError("eval reflection: b must be even");
    const double tol = args.tol.value_or(verify::kDefaultTol);
    const Evaluation ev = reflection_product_rhs(ReflectionCase(static_cast<int>(b)), tol);
    return report::make_row("REFLECTION_PRODUCT", "b=" + num(b) + " tol=" + num(tol), ev.value,
                            std::numbers::pi / sin_pi(1.0 / b), ev.error_bound, ev.terms_used, tol);
  }
  if (target == "nested") {
    if (!args.n) throw PreconditionError("eval nested requires --n");
    const int n = *args.n;
    return report::make_row("NESTED_RADICAL", "n=" + num(n), nested_radical_sin(n),
                            std::sin(std::numbers::pi / std::ldexp(1.0, n)), 0.0, static_cast<std::uint64_t>(n),
                            1e-12);
  }
  throw PreconditionError("unknown eval target '" + std::string(target) + "'");
}

/// Partial products and tail-corrected values at each K, with deviations from
/// the gamma closed form and observed orders. The partial deviation decays
/// like 1/K; the tail-corrected one much faster until it reaches rounding.
inline Series converge_product(const ProductFamily& f, const std::vector<std::uint64_t>& ks) {
  Series out{{"k", "partial", "deviation", "order", "corrected", "corrected_deviation", "corrected_order"}, {}};
  const double target = closed_form_target(f);
  std::vector<double> x;
  std::vector<double> partial;
  std::vector<double> corrected;
  std::vector<double> dev;
  std::vector<double> cdev;
  for (const std::uint64_t K : ks) {
    if (K == 0) throw PreconditionError("converge product: k must be positive");
    partial.push_back(partial_product(f, K, true).value);
    corrected.push_back(K >= min_tail_index(f) ? partial.back() * tail_bound(f, K).midpoint() : std::nan(""));
    x.push_back(static_cast<double>(K));
    dev.push_back(std::abs(partial.back() - target));
    cdev.push_back(std::abs(corrected.back() - target));
  }
  const auto order = convergence_orders(x, dev);
  const auto corder = convergence_orders(x, cdev);
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.rows.push_back({x[i], partial[i], dev[i], order[i], corrected[i], cdev[i], corder[i]});
  }
  return out;
}

/// Ratio along l = a + k b/2 and its deviation from 1, with orders measured
/// in l + (b + N - 2)/2.
inline Series converge_ratio(int b, int a, int N, const std::vector<std::uint64_t>& ks) {
  Series out{{"k", "ell", "ratio", "deviation", "order"}, {}};
  const RatioSequenceSpec spec{b, a, N, 1};
  spec.validate();
  std::vector<double> x;
  std::vector<double> dev;
  std::vector<double> vals;
  for (const std::uint64_t k : ks) {
    vals.push_back(ratio(spec.ell_at(k), b, N));
    x.push_back(spec.shifted_ell(k));
    dev.push_back(1.0 - vals.back());
  }
  const auto order = convergence_orders(x, dev);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    out.rows.push_back({static_cast<double>(ks[i]), static_cast<double>(spec.ell_at(ks[i])), vals[i], dev[i], order[i]});
  }
  return out;
}

/// Plain and tail-seeded truncations of the continued fraction at each depth.
inline Series converge_cf(double s, const std::vector<std::uint64_t>& depths) {
  Series out{{"depth", "plain", "deviation", "order", "seeded", "seeded_deviation"}, {}};
  const double g = cf_gamma_form(s);
  std::vector<double> x;
  std::vector<double> dev;
  std::vector<double> plain;
  std::vector<double> seeded;
  for (const std::uint64_t d : depths) {
    if (d == 0) throw PreconditionError("converge cf: depth must be positive");
    plain.push_back(cf_truncation(s, d));
    seeded.push_back(cf_truncation(s, d, CFTail::asymptotic));
    x.push_back(static_cast<double>(d));
    dev.push_back(plain.back() - g);
  }
  const auto order = convergence_orders(x, dev);
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.rows.push_back({x[i], plain[i], dev[i], order[i], seeded[i], seeded[i] - g});
  }
  return out;
}

}  // namespace wallis::commands
