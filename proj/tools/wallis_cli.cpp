// wallis: verification and evaluation front end.
//
//   wallis verify <suite> [--b ...] [--tol ...] [--format csv|json|table]
//   wallis eval <operation> [--b --a --n-dim --ell --s --n --depth --tol]
//   wallis converge <product|ratio|cf> [--b --a --n-dim --k | --s --depth]
//
// Exit status: 0 all rows pass, 1 a row failed, 2 usage or configuration error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wallis/commands.hpp"
#include "wallis/report.hpp"
#include "wallis/sweep.hpp"
#include "wallis/verify.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Flags {
  std::vector<std::string> b, a, n_dim, ell, s, n, k, depth;
  std::string tol, format, out, config;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--b", f.b, "shape exponent b (comma list for sweeps)")->delimiter(',');
  cmd->add_option("--a", f.a, "residue / shift a")->delimiter(',');
  cmd->add_option("--n-dim", f.n_dim, "space dimension N")->delimiter(',');
  cmd->add_option("--ell", f.ell, "angular momentum l")->delimiter(',');
  cmd->add_option("--s", f.s, "continued-fraction argument s, or gamma argument")->delimiter(',');
  cmd->add_option("--n", f.n, "nested-radical order n")->delimiter(',');
  cmd->add_option("--k", f.k, "truncation indices")->delimiter(',');
  cmd->add_option("--depth", f.depth, "continued-fraction depths")->delimiter(',');
  cmd->add_option("--tol", f.tol, "target tolerance");
  cmd->add_option("--format", f.format, "csv, json or table")->check(CLI::IsMember({"csv", "json", "table"}));
  cmd->add_option("--out", f.out, "write output to PATH instead of stdout");
  cmd->add_option("--config", f.config, "key = value file; flags override it");
}

// Environment, then config file, then flags.
wallis::SweepConfig build_config(const Flags& f) {
  wallis::SweepConfig cfg;
  if (const char* env = std::getenv("WALLIS_TOL"); env != nullptr && *env != '\0') {
    cfg.tol = wallis::config::to_double("WALLIS_TOL", env);
  }
  if (!f.config.empty()) wallis::config::apply(wallis::config::parse_file(f.config), cfg);
  wallis::config::RawConfig raw;
  auto put = [&](const char* key, const std::vector<std::string>& v) {
    if (!v.empty()) raw[key] = v;
  };
  put("b", f.b);
  put("a", f.a);
  put("n_dim", f.n_dim);
  put("ell", f.ell);
  put("s", f.s);
  put("n", f.n);
  put("k", f.k);
  put("depth", f.depth);
  if (!f.tol.empty()) raw["tol"] = {f.tol};
  if (!f.format.empty()) raw["format"] = {f.format};
  if (!f.out.empty()) raw["out"] = {f.out};
  wallis::config::apply(raw, cfg);
  return cfg;
}

template <class T>
std::optional<T> scalar(const std::vector<T>& grid, const char* name) {
  if (grid.empty()) return std::nullopt;
  if (grid.size() > 1) throw wallis::PreconditionError(std::string("--") + name + " takes a single value here");
  return grid.front();
}

wallis::commands::Args scalar_args(const wallis::SweepConfig& cfg) {
  wallis::commands::Args a;
  a.b = scalar(cfg.b, "b");
  a.a = scalar(cfg.a, "a");
  a.dimension = scalar(cfg.dimension, "n-dim");
  a.ell = scalar(cfg.ell, "ell");
  a.s = scalar(cfg.s, "s");
  a.n = scalar(cfg.n, "n");
  a.tol = cfg.tol;
  a.k = cfg.k;
  a.depths = cfg.depth;
  return a;
}

void emit(const std::string& text, const wallis::SweepConfig& cfg) {
  if (cfg.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f || !(f << text)) throw wallis::PreconditionError("cannot write '" + cfg.out + "'");
}

int as_integer_param(double v, const char* name) {
  if (v != static_cast<double>(static_cast<int>(v))) {
    throw wallis::PreconditionError(std::string("--") + name + " must be an integer here");
  }
  return static_cast<int>(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wallis-type products, gamma identities and the variational hydrogen atom"};
  app.require_subcommand(1);

  Flags flags;
  std::string suite;
  std::string op;

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "products, reflection, special, variational, correspondence, brouncker, "
                                     "appendix or all")
      ->required()
      ->check(CLI::IsMember({"products", "reflection", "special", "variational", "correspondence", "brouncker",
                             "appendix", "all"}));
  add_common(verify, flags);

  auto* eval = app.add_subcommand("eval", "evaluate one quantity");
  eval->add_option("operation", op, "product, brouncker, energy, ratio, uncertainty, gamma, reflection or nested")
      ->required()
      ->check(CLI::IsMember(
          {"product", "brouncker", "energy", "ratio", "uncertainty", "gamma", "reflection", "nested"}));
  add_common(eval, flags);

  auto* converge = app.add_subcommand("converge", "convergence table for a product, ratio sequence or fraction");
  converge->add_option("family", op, "product, ratio or cf")->required()->check(CLI::IsMember({"product", "ratio", "cf"}));
  add_common(converge, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    const wallis::SweepConfig cfg = build_config(flags);

    if (verify->parsed()) {
      const auto rows = wallis::verify::run(wallis::verify::parse_suite(suite), cfg);
      emit(wallis::report::render(rows, cfg.format), cfg);
      return wallis::report::all_pass(rows) ? kExitPass : kExitFail;
    }

    wallis::commands::Args args = scalar_args(cfg);
    if (eval->parsed()) {
      args.depth = scalar(cfg.depth, "depth");
      if (!cfg.k.empty()) throw wallis::PreconditionError("eval does not take --k");
      const auto row = wallis::commands::eval(op, args);
      emit(wallis::report::render(std::vector{row}, cfg.format), cfg);
      return row.pass ? kExitPass : kExitFail;
    }

    const std::vector<std::uint64_t> decades = {10, 100, 1000};
    wallis::report::Series table;
    if (op == "product") {
      if (!args.b) throw wallis::PreconditionError("converge product requires --b");
      const auto fam = wallis::ProductFamily::make(*args.b, args.a.value_or(0.0), args.dimension.value_or(3));
      table = wallis::commands::converge_product(fam, args.k.empty() ? decades : args.k);
    } else if (op == "ratio") {
      if (!args.b) throw wallis::PreconditionError("converge ratio requires --b");
      table = wallis::commands::converge_ratio(as_integer_param(*args.b, "b"),
                                               as_integer_param(args.a.value_or(0.0), "a"), args.dimension.value_or(3),
                                               args.k.empty() ? decades : args.k);
    } else {
      if (!args.s) throw wallis::PreconditionError("converge cf requires --s");
      table = wallis::commands::converge_cf(*args.s, args.depths.empty() ? decades : args.depths);
    }
    emit(wallis::report::render(table, cfg.format), cfg);
    return kExitPass;
  } catch (const wallis::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const wallis::PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const wallis::PoleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const wallis::Error& e) {
    std::cerr << "failed: " << e.what() << '\n';
    return kExitFail;
  }
}
