// Acceptance checks: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "wallis/brouncker.hpp"
#include "wallis/correspondence.hpp"
#include "wallis/gamma.hpp"
#include "wallis/identities.hpp"
#include "wallis/product.hpp"
#include "wallis/variational.hpp"

namespace {

using std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

char* fmt(char* buf, std::size_t n, const char* f, double v) {
  std::snprintf(buf, n, f, v);
  return buf;
}

// Accumulates the worst deviation of a family of checks against one limit.
class Worst {
 public:
  explicit Worst(std::string label, double limit) : label_(std::move(label)), limit_(limit) {}
  void see(double dev) {
    if (!(dev <= worst_)) worst_ = std::isnan(dev) ? INFINITY : std::max(worst_, dev);
  }
  [[nodiscard]] bool ok() const { return worst_ <= limit_; }
  [[nodiscard]] std::string text() const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s %.2e (<= %.0e)", label_.c_str(), worst_, limit_);
    return buf;
  }

 private:
  std::string label_;
  double limit_;
  double worst_ = 0.0;
};

Outcome combine(std::initializer_list<Worst> checks, std::initializer_list<std::pair<std::string, bool>> flags = {}) {
  Outcome o;
  for (const auto& w : checks) {
    o.pass = o.pass && w.ok();
    o.detail += (o.detail.empty() ? "" : "; ") + w.text();
  }
  for (const auto& [label, ok] : flags) {
    o.pass = o.pass && ok;
    o.detail += (o.detail.empty() ? "" : "; ") + label + (ok ? " yes" : " NO");
  }
  return o;
}

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(WALLIS_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

double product_error(double b, double a, double target, double tol = 1e-9) {
  const auto ev = wallis::evaluate(wallis::ProductFamily::make(b, a), tol);
  return std::abs(ev.value - target);
}

Outcome wallis_product() {
  const auto t0 = std::chrono::steady_clock::now();
  const Run r = cli("eval product --b 2 --a 0 --tol 1e-9 --format json");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.code != 0) return {false, "cli exit " + std::to_string(r.code)};
  const auto row = nlohmann::json::parse(r.out).at(0);
  Worst err("|value - pi/2|", 1e-9);
  err.see(std::abs(row.at("value").get<double>() - pi / 2));
  Worst time("seconds", 1.0);
  time.see(secs);
  const auto terms = row.at("terms").get<std::uint64_t>();
  return combine({err, time}, {{"K=" + std::to_string(terms) + " <= 1e5", terms <= 100000}});
}

Outcome catalan_cases() {
  Worst w("max error", 1e-9);
  w.see(product_error(4, 1, pi / (2 * std::sqrt(2.0))));
  w.see(product_error(4, 0, std::sqrt(2.0)));
  return combine({w});
}

Outcome pi_third_and_eighths() {
  Worst w("max error", 1e-9);
  w.see(product_error(6, 2, pi / 3));
  w.see(product_error(8, 3, pi / (4 * std::sqrt(2 - std::sqrt(2.0)))));
  return combine({w});
}

Outcome b6_a0() {
  const double radical = 7 * std::sqrt(3.0) / (4 * std::cbrt(2.0));
  const double via_gamma = 7 * std::sqrt(pi) * wallis::gamma(1.0 / 6) / (4 * std::pow(wallis::gamma(1.0 / 3), 2));
  Worst forms("closed forms", 1e-12);
  forms.see(std::abs(radical - via_gamma));
  Worst prod("product without its leading factor", 1e-9);
  const auto sv = wallis::special_value(wallis::SpecialCase::b6_a0);
  const double value = sv.apply(wallis::evaluate(sv.family, 1e-10)).value;
  prod.see(std::abs(value - radical));
  prod.see(std::abs(value - via_gamma));
  return combine({forms, prod});
}

Outcome nested_radicals() {
  Worst prod("POW2 product", 1e-8);
  for (int n : {3, 4, 5}) {
    const auto sv = wallis::special_value(wallis::SpecialCase::pow2, n);
    const auto ev = sv.apply(wallis::evaluate(sv.family, 1e-9 / sv.chain.multiplier));
    prod.see(std::abs(ev.value - pi / std::sin(pi / std::ldexp(1.0, n))));
  }
  Worst rad("radical vs sin", 1e-12);
  for (int n = 3; n <= 25; ++n) rad.see(std::abs(wallis::nested_radical_sin(n) - std::sin(pi / std::ldexp(1.0, n))));
  return combine({prod, rad});
}

Outcome reflection() {
  Worst g("gamma side", 1e-12);
  Worst p("product bridge (relative)", 1e-8);
  for (int b = 2; b <= 64; b += 2) {
    g.see(std::abs(wallis::gamma(1 - 1.0 / b) * wallis::gamma(1.0 / b) * wallis::sin_pi(1.0 / b) / pi - 1));
    const auto ev = wallis::reflection_product_rhs(wallis::ReflectionCase(b), 1e-9);
    const double rhs = pi / wallis::sin_pi(1.0 / b);
    p.see(std::abs(ev.value - rhs) / rhs);
  }
  return combine({g, p});
}

Outcome variational_oracle() {
  Worst quad("closed vs quadrature (relative, 75 points)", 1e-6);
  int points = 0;
  for (double alpha : {0.15, 0.4, 0.9, 2.2, 5.5}) {
    for (double b : {0.5, 1.0, 2.0, 3.0, 6.0}) {
      for (std::uint64_t l : {0u, 2u, 5u}) {
        const wallis::TrialParams p{alpha, {b, l, 3}};
        const double exact = wallis::expectation_H(p);
        quad.see(std::abs(wallis::expectation_H_quadrature(p, {}, 1e-9).value - exact) / std::abs(exact));
        ++points;
      }
    }
  }
  Worst minimum("analytic vs numeric minimum (relative)", 1e-9);
  for (double b : {0.5, 1.0, 2.0, 3.0, 6.0}) {
    for (std::uint64_t l : {0u, 2u, 5u}) {
      for (int N : {3, 5}) {
        const wallis::TrialShape s{b, l, N};
        const double e = wallis::min_energy_analytic(s).energy;
        minimum.see(std::abs(wallis::min_energy_numeric(s, {}, 1e-11).energy - e) / std::abs(e));
      }
    }
  }
  return combine({quad, minimum}, {{"grid has 75 points", points == 75}});
}

Outcome exactness_at_unit_b() {
  Worst w("b=1 vs -1/(2(l+(N-1)/2)^2)", 1e-12);
  bool strict = true;
  for (int N : {3, 4, 5, 9}) {
    for (std::uint64_t l = 0; l <= 20; ++l) {
      const double n = static_cast<double>(l) + 0.5 * (N - 1);
      w.see(std::abs(wallis::min_energy_analytic({1.0, l, N}).energy + 1 / (2 * n * n)));
      for (double b : {0.25, 0.5, 0.75, 0.99, 1.01, 1.5, 2.0, 3.0, 4.0, 6.0, 10.0}) {
        strict = strict && wallis::min_energy_analytic({b, l, N}).energy > wallis::exact_energy({0, l, N});
      }
    }
  }
  return combine({w}, {{"strict bound for b != 1", strict}});
}

Outcome correspondence() {
  Worst r0("ratio(0,2) vs 8/(3 pi)", 1e-12);
  r0.see(std::abs(wallis::ratio(0, 2.0) - 8 / (3 * pi)));
  Worst lim("extrapolated limit", 1e-6);
  for (const auto& [b, a] : std::vector<std::pair<int, int>>{{2, 0}, {4, 1}, {6, 2}}) {
    lim.see(std::abs(wallis::extrapolate_limit(wallis::ratio_sequence({b, a, 3, 100})) - 1));
  }
  const std::vector<double> ells = {10, 100, 1000};
  std::vector<double> dev;
  for (double l : ells) dev.push_back(1 - wallis::ratio(static_cast<std::uint64_t>(l), 2.0));
  Worst order("|order - 1|", 0.05);
  order.see(std::abs(wallis::convergence_orders(ells, dev).back() - 1));
  return combine({r0, lim, order});
}

Outcome uncertainty() {
  Worst w("value at b=2, l=0", 1e-12);
  w.see(std::abs(wallis::uncertainty_r2({1.0, {2.0, 0, 3}}) - std::sqrt(2.0 / 3)));
  bool decreasing = true;
  double prev = wallis::uncertainty_r2({1.0, {2.0, 0, 3}});
  for (std::uint64_t l = 1; l <= 10000; ++l) {
    const double cur = wallis::uncertainty_r2({1.0, {2.0, l, 3}});
    decreasing = decreasing && cur < prev;
    prev = cur;
  }
  char buf[64];
  return combine({w}, {{"strictly decreasing for l <= 1e4", decreasing},
                       {std::string("value at l=1e4 ") + fmt(buf, sizeof buf, "%.6f < 0.02", prev), prev < 0.02}});
}

Outcome appendix() {
  Worst poch("Pochhammer identity (relative)", 1e-13);
  for (int b : {2, 4, 6, 8}) {
    for (int a = 0; a < b / 2; ++a) {
      const auto f = wallis::ProductFamily::make(b, a);
      for (std::uint64_t l = 0; l <= 20; ++l) {
        const auto [lhs, rhs] = wallis::pochhammer_identity_check(f, l);
        poch.see(std::abs(lhs - rhs) / rhs);
      }
    }
  }
  Worst gen("generalized products", 1e-8);
  std::mt19937_64 rng(20240901);
  for (double b : {3.0, 5.0, 7.0, 9.0}) {
    for (int i = 0; i < 4; ++i) {
      const double a = -0.45 + 3.45 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const auto f = wallis::ProductFamily::make(b, a);
      gen.see(std::abs(wallis::evaluate(f, 1e-9).value - wallis::closed_form_target(f)));
    }
  }
  return combine({poch, gen});
}

Outcome brouncker() {
  Worst g1("gamma form at 1", 1e-14);
  g1.see(std::abs(wallis::cf_gamma_form(1.0) - 4 / pi));
  Worst cf1("adaptive fraction at 1", 1e-6);
  cf1.see(std::abs(wallis::cf_eval({.s = 1.0, .tol = 1e-8}).value - 4 / pi));
  Worst fe("functional equation", 1e-12);
  std::mt19937_64 rng(314159);
  for (int i = 0; i < 20; ++i) {
    fe.see(std::abs(wallis::functional_equation_check(1 + 19 * static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1));
  }
  Worst tri("triangle", 3e-8);
  for (double s : {0.5, 1.0, 2.0, 3.0, 5.0, 7.3}) {
    const double g = wallis::cf_gamma_form(s);
    const double c = wallis::cf_eval({.s = s, .tol = 1e-8}).value;
    const double p = wallis::cf_product_form(s, 1e-8).value;
    tri.see(std::max({std::abs(c - g), std::abs(p - g), std::abs(c - p)}));
  }
  return combine({g1, cf1, fe, tri});
}

Outcome cli_contract() {
  const Run all = cli("verify all");
  const auto dir = std::filesystem::temp_directory_path() / "wallis_acceptance";
  std::filesystem::create_directories(dir);
  bool stable = true;
  for (const char* f : {"json", "csv"}) {
    std::string bytes[2];
    for (int run = 0; run < 2; ++run) {
      const auto path = dir / (std::string("golden_") + std::to_string(run) + "." + f);
      cli(std::string("verify all --format ") + f + " --out " + path.string());
      std::ifstream in(path, std::ios::binary);
      std::stringstream ss;
      ss << in.rdbuf();
      bytes[run] = ss.str();
    }
    stable = stable && !bytes[0].empty() && bytes[0] == bytes[1];
  }
  std::filesystem::remove_all(dir);
  return combine({}, {{"verify all exits 0", all.code == 0}, {"json/csv byte-stable over two runs", stable}});
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"Wallis product via eval", wallis_product},
      {"Catalan cases", catalan_cases},
      {"pi/3 and b=8 product", pi_third_and_eighths},
      {"b=6, a=0 closed forms", b6_a0},
      {"nested-radical family", nested_radicals},
      {"reflection formula", reflection},
      {"variational oracle", variational_oracle},
      {"exactness at b=1", exactness_at_unit_b},
      {"correspondence limit", correspondence},
      {"r^2 uncertainty", uncertainty},
      {"finite identities and generalized products", appendix},
      {"Brouncker fraction", brouncker},
      {"CLI contract", cli_contract},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %2zu  %-44s  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
