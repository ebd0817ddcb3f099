#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(WALLIS_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

TEST(Cli, VerifyAllPasses) {
  const CliRun r = run("verify all");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find(",false"), std::string::npos);
  EXPECT_GT(csv_lines(r.out).size(), 1000u);
}

TEST(Cli, VerifySpecialJsonRows) {
  const CliRun r = run("verify special --tol 1e-8 --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  std::vector<std::string> ids;
  for (const auto& row : j) ids.push_back(row["case"]);
  for (const char* id : {"WALLIS", "CATALAN_PI_2SQRT2", "SQRT2", "B6_A0", "PI_3", "EIGHTS", "POW2(3)", "POW2(4)",
                         "POW2(5)"}) {
    EXPECT_NE(std::find(ids.begin(), ids.end(), id), ids.end()) << id;
  }
}

TEST(Cli, GeneralizedProducts) {
  const CliRun r = run("verify products --b 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PRODUCT_GENERALIZED,b=3 a=0.5 N=3"), std::string::npos);
}

TEST(Cli, EvalValues) {
  auto value_of = [](const std::string& args) {
    const auto j = nlohmann::json::parse(run(args + " --format json").out);
    return j.at(0).at("value").get<double>();
  };
  EXPECT_NEAR(value_of("eval product --b 2 --a 0 --tol 1e-9"), 1.5707963267948966, 1e-9);
  EXPECT_NEAR(value_of("eval product --b 4 --a 0 --tol 1e-9"), 1.4142135623730951, 1e-9);
  EXPECT_NEAR(value_of("eval brouncker --s 1 --tol 1e-6"), 1.2732395447351628, 1e-6);
  EXPECT_NEAR(value_of("eval energy --b 2 --ell 0"), -0.42441318157838756, 1e-15);
  EXPECT_NEAR(value_of("eval ratio --b 2 --ell 0"), 0.84882636315677512, 1e-15);
  EXPECT_NEAR(value_of("eval uncertainty --b 2 --ell 0"), 0.81649658092772603, 1e-15);
  EXPECT_NEAR(value_of("eval gamma --s -0.5"), -3.5449077018110320546, 1e-14);
  EXPECT_NEAR(value_of("eval nested --n 4"), 0.19509032201612826785, 1e-16);
  EXPECT_NEAR(value_of("eval reflection --b 4"), 4.4428829381583662, 1e-9);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("eval product --b 2").code, 0);
  EXPECT_EQ(run("eval brouncker --s 1 --depth 3").code, 0);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("verify").code, 2);
  EXPECT_EQ(run("verify everything").code, 2);
  EXPECT_EQ(run("eval product").code, 2);
  EXPECT_EQ(run("eval product --b -2").code, 2);
  EXPECT_EQ(run("eval product --b 2 --tol 1").code, 2);
  EXPECT_EQ(run("eval product --b 2,4").code, 2);
  EXPECT_EQ(run("eval gamma --s -3").code, 2);
  EXPECT_EQ(run("eval product --b 2 --format xml").code, 2);
  EXPECT_EQ(run("verify products --bogus 1").code, 2);
  EXPECT_EQ(run("verify products --config /nonexistent.cfg").code, 2);
  EXPECT_EQ(run("converge ratio --b 3").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, FailingRowGivesExitOne) {
  // Four samples are too few for the extrapolated limit to reach 1e-6.
  EXPECT_EQ(run("verify correspondence --k 3").code, 1);
}

TEST(Cli, CsvAndJsonCarryIdenticalNumbers) {
  const CliRun csv = run("verify special --format csv");
  const CliRun json = run("verify special --format json");
  ASSERT_EQ(csv.code, 0);
  const auto rows = csv_lines(csv.out);
  const auto j = nlohmann::ordered_json::parse(json.out);
  ASSERT_EQ(rows.size(), j.size() + 1);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& o = j[i];
    auto field = [](const nlohmann::ordered_json& v) {
      if (v.is_null()) return std::string("null");
      if (v.is_boolean()) return std::string(v.get<bool>() ? "true" : "false");
      char buf[40];
      if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
      std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
      return std::string(buf);
    };
    const std::string expect = o["case"].get<std::string>() + "," + o["inputs"].get<std::string>() + "," +
                               field(o["value"]) + "," + field(o["target"]) + "," + field(o["abs_err"]) + "," +
                               field(o["bound"]) + "," + field(o["terms"]) + "," + field(o["pass"]);
    EXPECT_EQ(rows[i + 1], expect);
  }
}

TEST(Cli, JsonReemitsByteIdentical) {
  const CliRun r = run("verify brouncker --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  std::string re = "[\n";
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string line = "  {";
    bool first = true;
    for (const auto& [k, v] : j[i].items()) {
      line += (first ? "" : ", ") + nlohmann::json(k).dump() + ": ";
      if (v.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        line += buf;
      } else {
        line += v.dump();
      }
      first = false;
    }
    re += line + (i + 1 < j.size() ? "},\n" : "}\n");
  }
  re += "]\n";
  EXPECT_EQ(re, r.out);
}

TEST(Cli, OutputIsDeterministic) {
  for (const char* args : {"verify all --format json", "verify all --format csv", "converge product --b 2 --a 0"}) {
    EXPECT_EQ(run(args).out, run(args).out) << args;
  }
}

TEST(Cli, OutFileAndConfig) {
  const auto dir = std::filesystem::temp_directory_path() / "wallis_cli_test";
  std::filesystem::create_directories(dir);
  const auto cfg = dir / "sweep.cfg";
  const auto out = dir / "rows.csv";
  std::ofstream(cfg) << "b = 2\nb = 4\ntol = 1e-10\nformat = json\n";
  const CliRun r = run("verify products --config " + cfg.string() + " --format csv --out " + out.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto lines = csv_lines(ss.str());
  ASSERT_EQ(lines.size(), 1u + 2 * 3);  // header, then PRODUCT + POCHHAMMER for 3 families
  EXPECT_EQ(lines[0], "case,inputs,value,target,abs_err,bound,terms,pass");
  std::filesystem::remove_all(dir);
}

TEST(Cli, ConvergeTables) {
  const CliRun p = run("converge product --b 2 --a 0 --k 10,100,1000 --format json");
  ASSERT_EQ(p.code, 0);
  const auto jp = nlohmann::json::parse(p.out);
  ASSERT_EQ(jp.size(), 3u);
  EXPECT_NEAR(jp[2]["order"].get<double>(), 1.0, 0.05);
  EXPECT_NEAR(jp[1]["deviation"].get<double>() / jp[2]["deviation"].get<double>(), 10.0, 1.5);
  EXPECT_LT(jp[2]["corrected_deviation"].get<double>(), 1e-10);

  const auto jr = nlohmann::json::parse(run("converge ratio --b 2 --a 0 --k 10,100,1000 --format json").out);
  EXPECT_NEAR(jr[2]["order"].get<double>(), 1.0, 0.05);

  const auto jc = nlohmann::json::parse(run("converge cf --s 1 --depth 10,100,1000 --format json").out);
  EXPECT_NEAR(jc[2]["order"].get<double>(), 1.0, 0.1);
  EXPECT_LT(std::abs(jc[2]["deviation"].get<double>()), std::abs(jc[0]["deviation"].get<double>()));
}

TEST(Cli, EnvironmentTolerance) {
  const std::string cmd = "WALLIS_TOL=1e-5 " + std::string(WALLIS_CLI_PATH) + " eval product --b 2 --format json";
  FILE* p = popen(cmd.c_str(), "r");
  ASSERT_NE(p, nullptr);
  std::string out;
  char buf[1024];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  pclose(p);
  const auto j = nlohmann::json::parse(out);
  EXPECT_NE(j[0]["inputs"].get<std::string>().find("tol=1e-05"), std::string::npos);
}

}  // namespace
