#pragma once

// Verification suites: every closed form checked against an independent
// numerical route, one ReportRow per case.
//
// Cases that assert an inequality or an ordering rather than a value report
// their violation as `value` against a target of 0 with zero tolerance, so a
// row passes exactly when the violation is 0.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "wallis/brouncker.hpp"
#include "wallis/correspondence.hpp"
#include "wallis/errors.hpp"
#include "wallis/gamma.hpp"
#include "wallis/identities.hpp"
#include "wallis/product.hpp"
#include "wallis/report.hpp"
#include "wallis/sweep.hpp"
#include "wallis/variational.hpp"

namespace wallis::verify {

using report::ReportRow;

enum class Suite { products, reflection, special, variational, correspondence, brouncker, appendix, all };

inline Suite parse_suite(std::string_view s) {
  if (s == "products") return Suite::products;
  if (s == "reflection") return Suite::reflection;
  if (s == "special") return Suite::special;
  if (s == "variational") return Suite::variational;
  if (s == "correspondence") return Suite::correspondence;
  if (s == "brouncker") return Suite::brouncker;
  if (s == "appendix") return Suite::appendix;
  if (s == "all") return Suite::all;
  throw PreconditionError("unknown suite '" + std::string(s) + "'");
}

inline constexpr double kDefaultTol = 1e-9;

/// Shortest round-trip decimal form.
inline std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string num(std::uint64_t v) { return std::to_string(v); }
inline std::string num(int v) { return std::to_string(v); }

namespace detail {

// Runs one case. Usage errors propagate to the caller; anything else the
// library raises becomes a failing row.
inline void guarded(std::vector<ReportRow>& rows, const std::string& id, const std::string& inputs,
                    const std::function<ReportRow()>& body) {
  try {
    rows.push_back(body());
  } catch (const DomainError&) {
    throw;
  } catch (const PreconditionError&) {
    throw;
  } catch (const PoleError&) {
    throw;
  } catch (const Error& e) {
    rows.push_back(report::failed_row(id, inputs, e.what()));
  }
}

inline ReportRow predicate_row(std::string id, std::string inputs, bool holds, double violation) {
  const double v = holds ? 0.0 : std::max(std::abs(violation), std::numeric_limits<double>::min());
  return report::make_row(std::move(id), std::move(inputs), v, 0.0, 0.0, 0, 0.0);
}

inline double product_tol(const SweepConfig& cfg) {
  const double tol = cfg.tol.value_or(kDefaultTol);
  if (!(tol > 1e-12 && tol < 1e-2)) throw PreconditionError("tol must lie in (1e-12, 1e-2) for product suites");
  return tol;
}

template <class T>
std::vector<T> or_default(const std::vector<T>& grid, std::vector<T> fallback) {
  return grid.empty() ? fallback : grid;
}

inline bool is_even_integer(double b) { return b == std::floor(b) && std::fmod(b, 2.0) == 0.0; }

// Portable uniform draws in [0, 1) from a fixed seed.
class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}
  double next() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 rng_;
};

inline ReportRow product_row(const std::string& id, const ProductFamily& f, double tol) {
  const Evaluation ev = evaluate(f, tol);
  return report::make_row(id, f.describe(), ev.value, closed_form_target(f), ev.error_bound, ev.terms_used, tol);
}

}  // namespace detail

/// Product families against their gamma closed forms. Without --b the even-b
/// lattice b in {2,4,6,8}, a in {0..b/2-1} is swept; with --b, even integers
/// sweep their lattice (or --a), anything else runs the generalized region
/// with a in --a or {0, 0.5, 1.7}.
inline std::vector<ReportRow> products(const SweepConfig& cfg) {
  const double tol = detail::product_tol(cfg);
  std::vector<ReportRow> rows;
  const auto bs = detail::or_default(cfg.b, {2.0, 4.0, 6.0, 8.0});
  const auto dims = detail::or_default(cfg.dimension, {3});
  for (const double b : bs) {
    std::vector<double> as = cfg.a;
    if (as.empty()) {
      if (detail::is_even_integer(b)) {
        for (int a = 0; a < b / 2; ++a) as.push_back(a);
      } else {
        as = {0.0, 0.5, 1.7};
      }
    }
    for (const int N : dims) {
      for (const double a : as) {
        const ProductFamily f = ProductFamily::make(b, a, N);
        const std::string id = f.generalized() ? "PRODUCT_GENERALIZED" : "PRODUCT";
        detail::guarded(rows, id, f.describe(), [&] { return detail::product_row(id, f, tol); });
        detail::guarded(rows, "POCHHAMMER", f.describe() + " ell=20", [&] {
          const auto [lhs, rhs] = pochhammer_identity_check(f, 20);
          return report::make_row("POCHHAMMER", f.describe() + " ell=20", lhs, rhs, 0.0, 20, 1e-13 * std::abs(rhs));
        });
      }
    }
  }
  return rows;
}

/// Reflection formula: gamma side for even b in [2, 64] (or --b), the product
/// bridge, the half-shifted variant and the truncated sine products.
inline std::vector<ReportRow> reflection(const SweepConfig& cfg) {
  const double tol = detail::product_tol(cfg);
  std::vector<ReportRow> rows;
  std::vector<int> bs;
  if (cfg.b.empty()) {
    for (int b = 2; b <= 64; b += 2) bs.push_back(b);
  } else {
    for (const double b : cfg.b) {
      if (!detail::is_even_integer(b) || b < 2) throw PreconditionError("reflection: b must be an even integer >= 2");
      bs.push_back(static_cast<int>(b));
    }
  }
  for (const int b : bs) {
    const std::string in = "b=" + num(b);
    detail::guarded(rows, "REFLECTION_GAMMA", in, [&] {
      return report::make_row("REFLECTION_GAMMA", in, reflection_check(1.0 / b), 1.0, 0.0, 0, 1e-12);
    });
    detail::guarded(rows, "REFLECTION_PRODUCT", in, [&] {
      const Evaluation ev = reflection_product_rhs(ReflectionCase(b), tol);
      return report::make_row("REFLECTION_PRODUCT", in, ev.value, std::numbers::pi / sin_pi(1.0 / b), ev.error_bound,
                              ev.terms_used, tol);
    });
  }
  for (const int b : bs) {
    if (b < 4) continue;
    const std::string in = "b=" + num(b) + " a=0 N=" + num(b / 2 + 1);
    detail::guarded(rows, "HALF_SHIFT", in, [&] {
      const HalfShiftResult h = half_shift_reflection_check(b, tol);
      return report::make_row("HALF_SHIFT", in, h.product.value, h.cosine_form, h.product.error_bound,
                              h.product.terms_used, tol);
    });
    detail::guarded(rows, "HALF_SHIFT_GAMMA", "b=" + num(b), [&] {
      const double g = gamma(0.5 + 1.0 / b) * gamma(0.5 - 1.0 / b) / std::numbers::pi;
      return report::make_row("HALF_SHIFT_GAMMA", "b=" + num(b), g, 1.0 / std::cos(std::numbers::pi / b), 0.0, 0,
                              1e-12);
    });
  }
  constexpr std::uint64_t K = 100000;
  for (const int b : {2, 4, 6, 8}) {
    const double z = 1.0 / b;
    const std::string in = "z=1/" + num(b) + " K=" + num(K);
    detail::guarded(rows, "SINE_PRODUCT", in, [&] {
      const TruncatedProduct p = sine_product(z, K);
      return report::make_row("SINE_PRODUCT", in, p.corrected.value, sin_pi(z) / std::numbers::pi,
                              p.corrected.error_bound, K, 1e-13);
    });
    const double w = 0.5 - z;
    const std::string in2 = "z=1/2-1/" + num(b) + " K=" + num(K);
    detail::guarded(rows, "HALF_SHIFT_SINE_PRODUCT", in2, [&] {
      const TruncatedProduct p = half_shift_sine_product(w, K);
      return report::make_row("HALF_SHIFT_SINE_PRODUCT", in2, p.corrected.value, sin_pi(w) / std::numbers::pi,
                              p.corrected.error_bound, K, 1e-13);
    });
  }
  return rows;
}

/// The named special values, the second closed form of B6_A0, and the
/// nested-radical sines for n = 3..25.
inline std::vector<ReportRow> special(const SweepConfig& cfg) {
  const double tol = detail::product_tol(cfg);
  int max_pow2 = 5;
  for (const int n : cfg.n) {
    if (n < 3 || n > 30) throw PreconditionError("special: n must lie in [3, 30]");
    max_pow2 = std::max(max_pow2, n);
  }
  std::vector<ReportRow> rows;
  for (const SpecialValue& sv : all_special_values(max_pow2)) {
    detail::guarded(rows, sv.id, sv.family.describe(), [&] {
      // Scale the product tolerance so that the read-off value meets tol.
      const double scale = sv.chain.multiplier / (sv.chain.strip_prefactor ? prefactor(sv.family) : 1.0);
      const Evaluation ev = sv.apply(evaluate(sv.family, tol / std::max(1.0, std::abs(scale))));
      return report::make_row(sv.id, sv.family.describe(), ev.value, sv.target, ev.error_bound, ev.terms_used, tol);
    });
    if (std::isfinite(sv.alternate_target)) {
      detail::guarded(rows, sv.id + "_GAMMA_FORM", "closed forms", [&] {
        return report::make_row(sv.id + "_GAMMA_FORM", "closed forms", sv.alternate_target, sv.target, 0.0, 0, 1e-12);
      });
    }
  }
  for (int n = 3; n <= std::max(25, max_pow2); ++n) {
    const std::string in = "n=" + num(n);
    detail::guarded(rows, "NESTED_RADICAL", in, [&] {
      return report::make_row("NESTED_RADICAL", in, nested_radical_sin(n), std::sin(std::numbers::pi / std::ldexp(1.0, n)),
                              0.0, static_cast<std::uint64_t>(n), 1e-12);
    });
  }
  return rows;
}

/// Closed-form energy against quadrature on an (alpha, b, l) grid, analytic
/// against numeric minima, exactness at b = 1 and the variational bound.
inline std::vector<ReportRow> variational(const SweepConfig& cfg) {
  std::vector<ReportRow> rows;
  const UnitSystem units;
  const auto bs = detail::or_default(cfg.b, {0.5, 1.0, 2.0, 3.0, 6.0});
  const auto ells = detail::or_default(cfg.ell, {std::uint64_t{0}, std::uint64_t{2}, std::uint64_t{5}});
  const auto dims = detail::or_default(cfg.dimension, {3});
  const std::vector<double> alphas = {0.15, 0.4, 0.9, 2.2, 5.5};

  for (const int N : dims) {
    for (const double b : bs) {
      for (const std::uint64_t ell : ells) {
        for (const double alpha : alphas) {
          const TrialParams p{alpha, {b, ell, N}};
          const std::string in = "alpha=" + num(alpha) + " b=" + num(b) + " ell=" + num(ell) + " N=" + num(N);
          detail::guarded(rows, "EXPECTATION_H", in, [&] {
            const Evaluation q = expectation_H_quadrature(p, units, 1e-9);
            return report::make_row("EXPECTATION_H", in, expectation_H(p, units), q.value, q.error_bound, q.terms_used,
                                    1e-6 * std::abs(q.value));
          });
        }
      }
    }
  }
  for (const int N : dims) {
    for (const double b : bs) {
      for (const std::uint64_t ell : ells) {
        const TrialShape s{b, ell, N};
        const std::string in = "b=" + num(b) + " ell=" + num(ell) + " N=" + num(N);
        detail::guarded(rows, "MIN_ENERGY", in, [&] {
          const Minimum exact = min_energy_analytic(s, units);
          const Minimum numeric = min_energy_numeric(s, units, 1e-11);
          return report::make_row("MIN_ENERGY", in, numeric.energy, exact.energy, 0.0, 0, 1e-9 * std::abs(exact.energy));
        });
      }
    }
  }
  for (const int N : {3, 4, 5, 9}) {
    for (std::uint64_t ell = 0; ell <= 20; ++ell) {
      const std::string in = "b=1 ell=" + num(ell) + " N=" + num(N);
      detail::guarded(rows, "EXACT_B1", in, [&] {
        const double l = static_cast<double>(ell) + 0.5 * (N - 1.0);
        return report::make_row("EXACT_B1", in, min_energy_analytic({1.0, ell, N}, units).energy, -1.0 / (2.0 * l * l),
                                0.0, 0, 1e-12);
      });
    }
  }
  for (const int N : {3, 4, 5, 9}) {
    for (const double b : {0.5, 0.75, 1.5, 2.0, 3.0, 4.0, 6.0}) {
      for (std::uint64_t ell = 0; ell <= 20; ++ell) {
        const std::string in = "b=" + num(b) + " ell=" + num(ell) + " N=" + num(N);
        detail::guarded(rows, "VARIATIONAL_BOUND", in, [&] {
          const double e = min_energy_analytic({b, ell, N}, units).energy;
          const double exact = exact_energy({0, ell, N}, units);
          return detail::predicate_row("VARIATIONAL_BOUND", in, e > exact, exact - e);
        });
      }
    }
  }
  return rows;
}

/// Ratio of variational minimum to exact level, its extrapolated limit, the
/// telescoped product family and the observed order of approach.
inline std::vector<ReportRow> correspondence(const SweepConfig& cfg) {
  std::vector<ReportRow> rows;
  const UnitSystem units;
  detail::guarded(rows, "RATIO_B2_L0", "b=2 ell=0 N=3", [&] {
    return report::make_row("RATIO_B2_L0", "b=2 ell=0 N=3", ratio(0, 2.0), 8.0 / (3.0 * std::numbers::pi), 0.0, 0,
                            1e-12);
  });
  const auto bs = detail::or_default(cfg.b, {0.5, 1.0, 2.0, 3.0, 6.0});
  const auto ells = detail::or_default(cfg.ell, {std::uint64_t{0}, std::uint64_t{1}, std::uint64_t{7}, std::uint64_t{50}});
  const auto dims = detail::or_default(cfg.dimension, {3, 5});
  for (const int N : dims) {
    for (const double b : bs) {
      for (const std::uint64_t ell : ells) {
        const std::string in = "b=" + num(b) + " ell=" + num(ell) + " N=" + num(N);
        detail::guarded(rows, "RATIO", in, [&] {
          const double direct = min_energy_analytic({b, ell, N}, units).energy / exact_energy({0, ell, N}, units);
          return report::make_row("RATIO", in, ratio(ell, b, N), direct, 0.0, 0, 1e-12);
        });
      }
    }
  }
  const std::uint64_t k_max = cfg.k.empty() ? 100 : cfg.k.back();
  for (const auto& [b, a] : {std::pair{2, 0}, std::pair{4, 1}, std::pair{6, 2}}) {
    const RatioSequenceSpec spec{b, a, 3, k_max};
    const std::string in = "b=" + num(b) + " a=" + num(a) + " k_max=" + num(k_max);
    detail::guarded(rows, "RATIO_LIMIT", in, [&] {
      return report::make_row("RATIO_LIMIT", in, extrapolate_limit(ratio_sequence(spec)), 1.0, 0.0, k_max, 1e-6);
    });
    detail::guarded(rows, "TELESCOPE", in, [&] {
      const DerivedFamily d = derive_product_family(spec);
      return report::make_row("TELESCOPE", in, d.telescoping_error, 0.0, 0.0, k_max, 1e-10);
    });
  }
  detail::guarded(rows, "RATIO_ORDER", "b=2 a=0 ell=10,100,1000", [&] {
    const std::vector<double> x = {10.0, 100.0, 1000.0};
    std::vector<double> dev;
    for (const double l : x) dev.push_back(1.0 - ratio(static_cast<std::uint64_t>(l), 2.0));
    const auto orders = convergence_orders(x, dev);
    return report::make_row("RATIO_ORDER", "b=2 a=0 ell=10,100,1000", orders.back(), 1.0, 0.0, 0, 0.05);
  });
  return rows;
}

/// Continued fraction, gamma form and product form of Brouncker's function,
/// the functional equation and even/odd bracketing.
inline std::vector<ReportRow> brouncker(const SweepConfig& cfg) {
  std::vector<ReportRow> rows;
  const double four_over_pi = 4.0 / std::numbers::pi;
  detail::guarded(rows, "CF_GAMMA_S1", "s=1", [&] {
    return report::make_row("CF_GAMMA_S1", "s=1", cf_gamma_form(1.0), four_over_pi, 0.0, 0, 1e-14);
  });
  detail::guarded(rows, "CF_S1", "s=1 tol=1e-8", [&] {
    const Evaluation ev = cf_eval({.s = 1.0, .tol = 1e-8});
    return report::make_row("CF_S1", "s=1 tol=1e-8", ev.value, four_over_pi, ev.error_bound, ev.terms_used, 1e-6);
  });
  const double tol = 1e-8;
  const double agree = 3e-8;
  for (const double s : detail::or_default(cfg.s, {0.5, 1.0, 2.0, 3.0, 5.0, 7.3})) {
    const std::string in = "s=" + num(s);
    detail::guarded(rows, "CF_VS_GAMMA", in, [&] {
      const Evaluation ev = cf_eval({.s = s, .tol = tol});
      return report::make_row("CF_VS_GAMMA", in, ev.value, cf_gamma_form(s), ev.error_bound, ev.terms_used, agree);
    });
    detail::guarded(rows, "PRODUCT_VS_GAMMA", in, [&] {
      const Evaluation ev = cf_product_form(s, tol);
      return report::make_row("PRODUCT_VS_GAMMA", in, ev.value, cf_gamma_form(s), ev.error_bound, ev.terms_used, agree);
    });
    detail::guarded(rows, "CF_VS_PRODUCT", in, [&] {
      const Evaluation cf = cf_eval({.s = s, .tol = tol});
      const Evaluation pr = cf_product_form(s, tol);
      return report::make_row("CF_VS_PRODUCT", in, cf.value, pr.value, cf.error_bound + pr.error_bound, cf.terms_used,
                              agree);
    });
  }
  detail::Draws draws(0x5eed'b00c'0001ULL);
  for (int i = 0; i < 20; ++i) {
    const double s = 1.0 + 19.0 * draws.next();
    const std::string in = "s=" + num(s);
    detail::guarded(rows, "FUNCTIONAL_EQUATION", in, [&] {
      return report::make_row("FUNCTIONAL_EQUATION", in, functional_equation_check(s), 1.0, 0.0, 0, 1e-12);
    });
  }
  for (const std::uint64_t d : detail::or_default(cfg.depth, {std::uint64_t{10}, std::uint64_t{100}, std::uint64_t{1000}})) {
    const std::string in = "s=1 depth=" + num(d) + "," + num(d + 1);
    detail::guarded(rows, "CF_BRACKET", in, [&] {
      const double lo = cf_truncation(1.0, d);
      const double hi = cf_truncation(1.0, d + 1);
      const double g = cf_gamma_form(1.0);
      const bool holds = (lo - g) * (hi - g) < 0;
      return detail::predicate_row("CF_BRACKET", in, holds, std::min(std::abs(lo - g), std::abs(hi - g)));
    });
  }
  return rows;
}

/// Finite Pochhammer identities, generalized-parameter products, the r^2
/// uncertainty, the asymptotic gamma ratio and gamma against its integral.
inline std::vector<ReportRow> appendix(const SweepConfig& cfg) {
  const double tol = detail::product_tol(cfg);
  std::vector<ReportRow> rows;
  for (const int b : {2, 4, 6, 8}) {
    for (int a = 0; a < b / 2; ++a) {
      const ProductFamily f = ProductFamily::make(b, a);
      for (std::uint64_t ell = 0; ell <= 20; ++ell) {
        const std::string in = f.describe() + " ell=" + num(ell);
        detail::guarded(rows, "POCHHAMMER", in, [&] {
          const auto [lhs, rhs] = pochhammer_identity_check(f, ell);
          return report::make_row("POCHHAMMER", in, lhs, rhs, 0.0, ell, 1e-13 * std::abs(rhs));
        });
      }
    }
  }
  detail::Draws draws(0xa99e'0d1b'0002ULL);
  for (const double b : {3.0, 5.0, 7.0, 2.5}) {
    for (int i = 0; i < 3; ++i) {
      const double a = -0.45 + 3.45 * draws.next();
      const ProductFamily f = ProductFamily::make(b, a);
      detail::guarded(rows, "PRODUCT_GENERALIZED", f.describe(),
                      [&] { return detail::product_row("PRODUCT_GENERALIZED", f, std::min(tol, 1e-8)); });
    }
  }
  detail::guarded(rows, "UNCERTAINTY_B2_L0", "b=2 ell=0", [&] {
    return report::make_row("UNCERTAINTY_B2_L0", "b=2 ell=0", uncertainty_r2({1.0, {2.0, 0, 3}}), std::sqrt(2.0 / 3.0),
                            0.0, 0, 1e-12);
  });
  detail::guarded(rows, "UNCERTAINTY_DECREASING", "b=2 ell=0..1000", [&] {
    double prev = uncertainty_r2({1.0, {2.0, 0, 3}});
    double worst = 0.0;
    bool holds = true;
    for (std::uint64_t ell = 1; ell <= 1000; ++ell) {
      const double cur = uncertainty_r2({1.0, {2.0, ell, 3}});
      if (!(cur < prev)) {
        holds = false;
        worst = std::max(worst, cur - prev);
      }
      prev = cur;
    }
    return detail::predicate_row("UNCERTAINTY_DECREASING", "b=2 ell=0..1000", holds, worst);
  });
  detail::guarded(rows, "UNCERTAINTY_L1E4", "b=2 ell=10000 below 0.02", [&] {
    const double u = uncertainty_r2({1.0, {2.0, 10000, 3}});
    return detail::predicate_row("UNCERTAINTY_L1E4", "b=2 ell=10000 below 0.02", u < 0.02, u - 0.02);
  });
  detail::guarded(rows, "GAMMA_RATIO_LIMIT", "z=1.5,0.5 w=1,1 m=1e6", [&] {
    const std::vector<double> m = {1e6};
    const double v = gamma_ratio_limit_check(1.5, 0.5, 1.0, 1.0, m).front();
    return report::make_row("GAMMA_RATIO_LIMIT", "z=1.5,0.5 w=1,1 m=1e6", v, 1.0, 0.0, 0, 1e-6);
  });
  for (const double z : {0.25, 1.0 / 3.0, 0.5, 2.5, 3.7, 7.25}) {
    const std::string in = "z=" + num(z);
    detail::guarded(rows, "GAMMA_INTEGRAL", in, [&] {
      const Evaluation q = gamma_integral_quadrature(z, 1e-12);
      return report::make_row("GAMMA_INTEGRAL", in, wallis::gamma(z), q.value, q.error_bound, q.terms_used,
                              1e-12 * std::abs(q.value));
    });
  }
  return rows;
}

inline std::vector<ReportRow> run(Suite suite, const SweepConfig& cfg) {
  switch (suite) {
    case Suite::products:
      return products(cfg);
    case Suite::reflection:
      return reflection(cfg);
    case Suite::special:
      return special(cfg);
    case Suite::variational:
      return variational(cfg);
    case Suite::correspondence:
      return correspondence(cfg);
    case Suite::brouncker:
      return brouncker(cfg);
    case Suite::appendix:
      return appendix(cfg);
    case Suite::all: {
      std::vector<ReportRow> rows;
      for (const Suite s : {Suite::products, Suite::reflection, Suite::special, Suite::variational,
                            Suite::correspondence, Suite::brouncker, Suite::appendix}) {
        auto part = run(s, cfg);
        rows.insert(rows.end(), part.begin(), part.end());
      }
      return rows;
    }
  }
  return {};
}

}  // namespace wallis::verify
