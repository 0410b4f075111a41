#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mginf/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"mginf"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = mginf::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const char* name) { return fs::temp_directory_path() / (std::string("mginf_test_") + name); }

}  // namespace

TEST_CASE("eval writes 101 rows plus a header") {
  const Outcome r = run({"eval", "--lambda", "1", "--rho", "1", "--beta", "0", "--t-max", "10", "--step", "0.1"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 102);
  CHECK(r.out.find('\r') == std::string::npos);
  CHECK(r.out.rfind("t,G,B,Z,p00,p10,indicator,bp_floor,cycle_floor,cycle_ceiling\n0,", 0) == 0);
  // full precision: t = 1 row carries the 17-digit G(1)
  CHECK(r.out.find("\n1,0.61269983678028", 0) != std::string::npos);
}

TEST_CASE("invalid input exits 2 and names the bound") {
  const Outcome r = run({"eval", "--lambda", "1", "--rho", "1", "--beta", "0.9"});
  CHECK(r.code == 2);
  CHECK(r.err.find("0.5819767") != std::string::npos);
  CHECK(run({"eval", "--lambda", "1", "--rho", "1", "--beta", "0", "--t-max", "0"}).code == 2);
  CHECK(run({"eval", "--lambda", "-1", "--rho", "1", "--beta", "0"}).code == 2);
  CHECK(run({"eval", "--lambda", "1", "--rho", "1"}).code == 2);
  CHECK(run({"eval", "--lambda", "1", "--rho", "1", "--beta", "0", "--beta-file", "x.csv"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"simulate", "--lambda", "1", "--rho", "1", "--beta", "0", "--cycles", "0"}).code == 2);
}

TEST_CASE("I/O failures exit 3") {
  CHECK(run({"eval", "--lambda", "1", "--rho", "1", "--beta-file", "/nonexistent/beta.csv"}).code == 3);
  CHECK(run({"eval", "--lambda", "1", "--rho", "1", "--beta", "0", "--out", "/nonexistent/dir/out.csv"}).code == 3);
}

TEST_CASE("eval with a beta table") {
  const Outcome r =
      run({"eval", "--lambda", "1", "--rho", "1", "--beta-file", MGINF_TEST_DATA "/ramp.csv", "--t-max", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\n0.5,0.4220205206973") != std::string::npos);
}

TEST_CASE("simulate is byte-identical across repeats and writes rows to --out") {
  const fs::path a = scratch("a.csv"), b = scratch("b.csv");
  const auto go = [](const fs::path& p) {
    const std::string s = p.string();
    return run({"simulate", "--lambda", "1", "--rho", "1", "--beta", "0", "--cycles", "3000", "--seed", "4", "--out",
                s.c_str()});
  };
  const Outcome ra = go(a), rb = go(b);
  CHECK(ra.code == 0);
  CHECK(ra.out == rb.out);
  CHECK(slurp(a) == slurp(b));
  const std::string rows = slurp(a);
  CHECK(std::count(rows.begin(), rows.end(), '\n') == 3001);
  CHECK(ra.out.find("# mean_busy,") != std::string::npos);
  CHECK(ra.out.find("# ks_busy_period,") != std::string::npos);
  fs::remove(a);
  fs::remove(b);
}

TEST_CASE("degenerate simulate: every busy period is empty") {
  const Outcome r = run({"simulate", "--lambda", "1", "--rho", "1", "--beta", "-1", "--cycles", "500"});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line) && line[0] != '#') {
    CHECK(line.rfind("0,", 0) == 0);
    ++rows;
  }
  CHECK(rows == 500);
}

TEST_CASE("verify reports checks and is deterministic") {
  const Outcome a = run({"verify", "--lambda", "2", "--rho", "0.5", "--beta", "-2", "--cycles", "20000"});
  const Outcome b = run({"verify", "--lambda", "2", "--rho", "0.5", "--beta", "-2", "--cycles", "20000"});
  CHECK(a.out == b.out);
  CHECK(a.code == 0);
  CHECK(a.out.find("ALL PASS") != std::string::npos);
  const Outcome t =
      run({"verify", "--lambda", "1", "--rho", "1", "--beta-file", MGINF_TEST_DATA "/ramp.csv", "--cycles", "20000"});
  CHECK(t.out.find("SKIPPED series_vs_closed_busy_period") != std::string::npos);
  CHECK(t.out.find("PASS riccati_residual") != std::string::npos);
  CHECK(t.out.find("PASS transform_service_vs_kernel") != std::string::npos);
}

TEST_CASE("verify exits 1 when a check fails") {
  // Interior beta violates the busy-period floor envelope (see README).
  const Outcome r = run({"verify", "--lambda", "1", "--rho", "1", "--beta", "0", "--cycles", "20000"});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL bound_floors_closed") != std::string::npos);
  CHECK(r.out.find("SOME CHECKS FAILED") != std::string::npos);
}
