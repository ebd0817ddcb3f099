// Prints a few of the identities with their error bounds.

#include <cstdio>
#include <numbers>

#include "wallis/brouncker.hpp"
#include "wallis/identities.hpp"
#include "wallis/product.hpp"
#include "wallis/variational.hpp"

int main() {
  using namespace wallis;

  const auto fam = ProductFamily::make(2, 0);
  const Evaluation w = evaluate(fam, 1e-10);
  std::printf("Wallis product      %.15f  +- %.1e  (%llu factors)\n", w.value, w.error_bound,
              static_cast<unsigned long long>(w.terms_used));
  std::printf("pi/2                %.15f\n\n", std::numbers::pi / 2);

  for (const auto& sv : all_special_values()) {
    const Evaluation ev = sv.apply(evaluate(sv.family, 1e-10));
    std::printf("%-18s  %.15f  target %.15f\n", sv.id.c_str(), ev.value, sv.target);
  }

  std::printf("\n  b   l   <H>_min           E_exact\n");
  for (const double b : {0.5, 1.0, 2.0, 4.0}) {
    for (const std::uint64_t l : {0u, 3u}) {
      const Minimum m = min_energy_analytic({b, l, 3});
      std::printf("%4.1f %3llu  %.12f  %.12f\n", b, static_cast<unsigned long long>(l), m.energy,
                  exact_energy({0, l, 3}));
    }
  }

  const Evaluation f1 = cf_eval({.s = 1.0, .tol = 1e-10});
  std::printf("\nBrouncker f(1)      %.15f  depth %llu, 4/pi = %.15f\n", f1.value,
              static_cast<unsigned long long>(f1.terms_used), 4 / std::numbers::pi);
  return 0;
}
