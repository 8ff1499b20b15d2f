#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"

using namespace pgex;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "pgex");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

cli::Invocation parse_ok(std::vector<std::string> args) {
  args.insert(args.begin(), "pgex");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  auto parsed = cli::parse(static_cast<int>(argv.size()), argv.data(), out, err);
  REQUIRE_MESSAGE(std::holds_alternative<cli::Invocation>(parsed), err.str());
  return std::get<cli::Invocation>(parsed);
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("pgex_cli_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("flag parsing") {
  const auto inv = parse_ok({"--family", "lasso", "--preset", "desk", "--schedule", "fista-both", "--K", "500"});
  CHECK(inv.config.family == Family::kLasso);
  CHECK(inv.config.m == 50);
  CHECK(inv.config.n == 500);
  REQUIRE(inv.config.schedules.size() == 1);
  CHECK(inv.config.schedules[0].kind == ScheduleSpec::Kind::kFistaBoth);
  CHECK(inv.config.restart_interval == 500);

  const auto qp = parse_ok({"--family", "qp", "--schedule", "constant-frac", "0.98"});
  CHECK(qp.config.n == 200);
  CHECK(qp.config.schedules[0].kind == ScheduleSpec::Kind::kConstantFrac);
  CHECK(qp.config.schedules[0].value == 0.98);

  const auto pg = parse_ok({"--family", "lasso", "--schedule", "none"});
  CHECK(pg.config.schedules[0].kind == ScheduleSpec::Kind::kNone);

  const auto over = parse_ok({"--preset", "paper", "--m", "7"});
  CHECK(over.config.m == 7);
  CHECK(over.config.n == 3000);
  CHECK(over.config.max_iter == 5000);
  CHECK(over.config.lambda == 5.0);
  CHECK(over.config.tol == 1e-6);
}

TEST_CASE("config file uses the same keys") {
  const auto dir = scratch("config");
  std::filesystem::create_directories(dir);
  const auto file = dir / "run.ini";
  std::ofstream(file) << "family=qp\nn=12\nseed=9\nmax-iter=77\n";
  const auto inv = parse_ok({"--config", file.string(), "--seed", "10"});
  CHECK(inv.config.family == Family::kQp);
  CHECK(inv.config.n == 12);
  CHECK(inv.config.max_iter == 77);
  CHECK(inv.config.seed == 10);
  std::filesystem::remove_all(dir);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(invoke({"--family", "svm"}).code == cli::kUsage);
  CHECK(invoke({"--schedule", "warp"}).code == cli::kUsage);
  CHECK(invoke({"--schedule", "constant", "abc"}).code == cli::kUsage);
  CHECK(invoke({"--K", "0"}).code == cli::kUsage);
  CHECK(invoke({"--bogus"}).code == cli::kUsage);
  CHECK(invoke({"--table1", "--family", "lasso"}).code == cli::kUsage);
  CHECK(invoke({"--instance", "/nonexistent/instance.txt", "--quiet"}).code == cli::kUsage);
  // Constant beta above the threshold is rejected by the solver.
  const auto dir = scratch("beta");
  const Outcome o = invoke({"--family", "qp", "--n", "10", "--schedule", "constant", "0.99", "--out", dir.string(), "--quiet"});
  CHECK(o.code == cli::kUsage);
  CHECK(o.err.find("threshold") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("help exits 0") {
  const Outcome o = invoke({"--help"});
  CHECK(o.code == 0);
  CHECK(o.out.find("--schedule") != std::string::npos);
}

TEST_CASE("end-to-end runs write deterministic files") {
  const auto a = scratch("run_a");
  const auto b = scratch("run_b");
  const std::vector<std::string> base = {"--family", "lasso", "--m", "20", "--n", "60", "--s", "3", "--lambda", "0.5", "--seed", "5", "--quiet"};
  auto args_a = base;
  args_a.insert(args_a.end(), {"--out", a.string()});
  auto args_b = base;
  args_b.insert(args_b.end(), {"--out", b.string()});
  CHECK(invoke(args_a).code == 0);
  CHECK(invoke(args_b).code == 0);
  for (const char* f : {"trace_fista-r500.csv", "trace_fista.csv", "trace_pg.csv", "manifest.txt", "rates.txt", "instance.txt"}) {
    CAPTURE(f);
    CHECK(std::filesystem::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}

TEST_CASE("iteration cap exits with 4") {
  const auto dir = scratch("cap");
  CHECK(invoke({"--family", "lasso", "--m", "10", "--n", "20", "--s", "2", "--lambda", "0.5", "--max-iter", "2", "--out", dir.string(),
                "--quiet"})
            .code == cli::kIterationCap);
  std::filesystem::remove_all(dir);
}

TEST_CASE("table1 mode writes both CSV files") {
  const auto dir = scratch("table1");
  const Outcome o = invoke({"--family", "qp", "--table1", "--n", "15", "--instances", "3", "--out", dir.string()});
  CHECK(o.code == 0);
  CHECK(o.out.find("PG_e") != std::string::npos);
  CHECK(std::filesystem::exists(dir / "table1_instances.csv"));
  CHECK(slurp(dir / "table1_summary.csv").rfind("algorithm,mean_iter,mean_fval", 0) == 0);
  std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
