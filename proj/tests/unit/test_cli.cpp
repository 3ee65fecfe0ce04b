#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "json.hpp"
#include "pherm/cli/app.hpp"

namespace fs = std::filesystem;
using namespace pherm;
using namespace pherm::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "pherm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("pherm_test_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

}  // namespace

TEST_CASE("k takes precedence over lambda", "[cli]") {
  ModelOptions o;
  o.n = 100;
  o.k = 30;
  o.lambda = 0.25;
  std::ostringstream warn;
  CHECK(resolve_k(o, warn) == 30);
  CHECK(warn.str().find("takes precedence") != std::string::npos);

  o.lambda = 0.3;
  warn.str("");
  CHECK(resolve_k(o, warn) == 30);
  CHECK(warn.str().empty());

  o.k = 101;
  CHECK_THROWS_AS(resolve_k(o, warn), UsageError);
}

TEST_CASE("lambda is rounded to the nearest k", "[cli]") {
  ModelOptions o;
  o.n = 10;
  o.lambda = 0.33;
  std::ostringstream warn;
  CHECK(resolve_k(o, warn) == 3);
  CHECK(warn.str().find("using k=3") != std::string::npos);

  o.lambda = 0.4;
  warn.str("");
  CHECK(resolve_k(o, warn) == 4);
  CHECK(warn.str().empty());

  o.lambda.reset();
  o.default_lambda = 0.5;
  CHECK(resolve_k(o, warn) == 5);

  o.lambda = 1.5;
  CHECK_THROWS_AS(resolve_k(o, warn), UsageError);
}

TEST_CASE("run config validation maps to usage errors", "[cli]") {
  ModelOptions o;
  o.n = 8;
  o.t = 0.0;
  CHECK_THROWS_AS(make_run_config(o), UsageError);
  o.t = -1.0;
  o.m = -1.0;
  CHECK_THROWS_AS(make_run_config(o), UsageError);
  o.m = 1.0;
  o.solver = "eispack";
  CHECK_THROWS_AS(make_run_config(o), UsageError);
  o.solver = "native";
  CHECK(make_run_config(o).model.metric.k() == 2);
}

TEST_CASE("exit codes", "[cli]") {
  CHECK(run_cli({"--help"}).code == exit_ok);
  CHECK(run_cli({}).code == exit_usage);
  CHECK(run_cli({"spectrum", "--bogus"}).code == exit_usage);
  CHECK(run_cli({"nonsense"}).code == exit_usage);

  const fs::path dir = scratch("codes");
  CHECK(run_cli({"spectrum", "--n", "8", "--lambda", "2", "--out", (dir / "a").string()}).code == exit_usage);
  CHECK(run_cli({"spectrum", "--n", "8", "--t", "0", "--out", (dir / "a").string()}).code == exit_usage);
  CHECK(run_cli({"boundary", "--m", "-1", "--out", (dir / "b").string()}).code == exit_usage);
  CHECK(run_cli({"spectrum", "--n", "8", "--config", (dir / "missing.json").string()}).code == exit_usage);
  fs::remove_all(dir);
}

TEST_CASE("spectrum writes data, figure and a reusable command record", "[cli]") {
  const fs::path dir = scratch("spectrum");
  const auto r = run_cli({"spectrum", "--n", "32", "--lambda", "0.25", "--samples", "3", "--seed", "4", "--out",
                          (dir / "a").string()});
  REQUIRE(r.code == exit_ok);
  for (const char* f : {"eigenvalues.csv", "hist1d.csv", "hist2d.csv", "summary.json", "command.json", "support.csv",
                        "boundary.csv", "scatter.svg"})
    CHECK(fs::exists(dir / "a" / f));

  const auto cmd = read_json(dir / "a" / "command.json");
  CHECK(cmd["command"] == "spectrum");
  CHECK(cmd["n"] == 32);
  CHECK(cmd["k"] == 8);

  // Replaying command.json reproduces the data byte for byte, whatever the
  // worker count.
  const auto r2 = run_cli({"spectrum", "--config", (dir / "a" / "command.json").string(), "--workers", "2", "--out",
                           (dir / "b").string()});
  REQUIRE(r2.code == exit_ok);
  CHECK(slurp(dir / "a" / "eigenvalues.csv") == slurp(dir / "b" / "eigenvalues.csv"));
  CHECK(slurp(dir / "a" / "hist1d.csv") == slurp(dir / "b" / "hist1d.csv"));
  CHECK(slurp(dir / "a" / "hist2d.csv") == slurp(dir / "b" / "hist2d.csv"));
  fs::remove_all(dir);
}

TEST_CASE("flags override the config file", "[cli]") {
  const fs::path dir = scratch("config");
  {
    std::ofstream cfg(dir / "c.json");
    cfg << R"({"n": 16, "lambda": 0.25, "t": -2.0, "samples": 2, "seed": 9})";
  }
  const auto r = run_cli({"spectrum", "--config", (dir / "c.json").string(), "--n", "24", "--out",
                          (dir / "o").string()});
  REQUIRE(r.code == exit_ok);
  const auto cmd = read_json(dir / "o" / "command.json");
  CHECK(cmd["n"] == 24);
  CHECK(cmd["k"] == 6);
  CHECK(cmd["t"] == -2.0);
  CHECK(cmd["seed"] == 9);
  CHECK_FALSE(fs::exists(dir / "o" / "boundary.csv"));

  {
    std::ofstream cfg(dir / "bad.json");
    cfg << R"({"n": 16, "colour": "red"})";
  }
  const auto bad = run_cli({"spectrum", "--config", (dir / "bad.json").string(), "--out", (dir / "p").string()});
  CHECK(bad.code == exit_usage);
  CHECK(bad.err.find("colour") != std::string::npos);

  {
    std::ofstream cfg(dir / "broken.json");
    cfg << "{ not json";
  }
  CHECK(run_cli({"spectrum", "--config", (dir / "broken.json").string()}).code == exit_usage);
  fs::remove_all(dir);
}

TEST_CASE("analytic commands", "[cli]") {
  const fs::path dir = scratch("analytic");
  REQUIRE(run_cli({"boundary", "--lambda", "0.5", "0.25", "--points", "64", "--out", (dir / "b").string()}).code ==
          exit_ok);
  const io::CsvTable b = io::read_csv(dir / "b" / "boundary.csv");
  CHECK(b.rows.size() == 2u * 2u * 64u);
  CHECK(fs::exists(dir / "b" / "boundary.svg"));

  REQUIRE(run_cli({"fraction", "--points", "11", "--out", (dir / "f").string()}).code == exit_ok);
  const io::CsvTable f = io::read_csv(dir / "f" / "fraction.csv");
  const auto lam = f.numbers("lambda");
  const auto frac = f.numbers("fraction");
  REQUIRE(lam.size() == 11);
  for (std::size_t i = 0; i < lam.size(); ++i) CHECK(frac[i] == Catch::Approx(std::abs(1.0 - 2.0 * lam[i])).margin(1e-6));

  REQUIRE(run_cli({"phase-diagram", "--resolution", "20", "--out", (dir / "p").string()}).code == exit_ok);
  CHECK(fs::exists(dir / "p" / "phase.svg"));
  CHECK(fs::exists(dir / "p" / "curves.csv"));

  REQUIRE(run_cli({"real-density", "--lambda", "0.75", "--t", "-3.2", "--points", "101", "--out",
                   (dir / "d").string()})
              .code == exit_ok);
  const io::CsvTable d = io::read_csv(dir / "d" / "density.csv");
  CHECK(d.rows.size() == 101);
  CHECK(io::read_csv(dir / "d" / "support.csv").rows.size() == 3);
  fs::remove_all(dir);
}

TEST_CASE("compare passes on a matching model and fails on a wrong mass scale", "[cli]") {
  const fs::path dir = scratch("compare");
  const std::vector<std::string> base = {"compare", "--n", "128", "--lambda", "0.25", "--samples", "20",
                                         "--seed", "3", "--l1-tol", "0.15", "--fraction-tol", "0.03",
                                         "--origin-tol", "0.3", "--outside-tol", "0.05"};
  auto good = base;
  good.insert(good.end(), {"--out", (dir / "good").string()});
  const auto g = run_cli(good);
  INFO(g.out);
  CHECK(g.code == exit_ok);
  CHECK(g.out.find("FAIL") == std::string::npos);

  auto wrong = base;
  wrong.insert(wrong.end(), {"--reference-m", "2", "--out", (dir / "wrong").string()});
  const auto w = run_cli(wrong);
  CHECK(w.code == exit_acceptance);
  CHECK(w.out.find("FAIL") != std::string::npos);
  const auto summary = read_json(dir / "wrong" / "summary.json");
  CHECK(summary.contains("reference_m"));
  fs::remove_all(dir);
}

TEST_CASE("mech command and mech compare", "[cli]") {
  const fs::path dir = scratch("mech");
  REQUIRE(run_cli({"mech", "--n", "32", "--samples", "3", "--out", (dir / "m").string()}).code == exit_ok);
  const auto s = read_json(dir / "m" / "summary.json");
  CHECK(s["complex_classified"] == 0);
  CHECK(s["fraction_real"] == 1.0);
  CHECK(fs::exists(dir / "m" / "spectrum.svg"));

  CHECK(run_cli({"compare", "--mech", "--n", "32", "--samples", "3", "--out", (dir / "c").string()}).code == exit_ok);
  CHECK(run_cli({"mech", "--m0", "0", "--out", (dir / "x").string()}).code == exit_usage);
  fs::remove_all(dir);
}

TEST_CASE("installed binary exit codes", "[cli]") {
  const std::string exe = PHERM_CLI_PATH;
  const fs::path dir = scratch("binary");
  auto status = [&](const std::string& args) {
    const int raw = std::system((exe + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status("--help") == 0);
  CHECK(status("--no-such-flag") == 2);
  CHECK(status("boundary --lambda 0.25 --points 16 --out " + (dir / "b").string()) == 0);
  CHECK(status("compare --n 64 --lambda 0.25 --samples 4 --reference-m 2 --out " + (dir / "c").string()) == 1);
  fs::remove_all(dir);
}
