#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "tailwave/cli.hpp"

using namespace tailwave;
namespace fs = std::filesystem;

namespace {

struct Captured {
  int code;
  std::string out, err;
};

Captured run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  auto* o = std::cout.rdbuf(out.rdbuf());
  auto* e = std::cerr.rdbuf(err.rdbuf());
  int code = -1;
  try {
    code = run_command(args);
  } catch (...) {
    std::cout.rdbuf(o);
    std::cerr.rdbuf(e);
    throw;
  }
  std::cout.rdbuf(o);
  std::cerr.rdbuf(e);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("tailwave_cli_" + std::to_string(::getpid()) + "_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

fs::path write_config(const fs::path& dir, const std::string& out_dir, double cfl = 0.4) {
  const fs::path p = dir / "run.cfg";
  std::ofstream f(p);
  f << "# small Cauchy run\n[model]\nkind = csf\nq = 0.3\ne = 1\n\n[grid]\nn_r = 64\nr_max = 2.5\ncfl = " << cfl
    << "\n\n[data]\nfamily = bump\ncenter = 0.5\nwidth = 0.3\n\n[run]\nt_end = 0\nsnapshot_stride = 16\n"
    << "output_dir = " << out_dir << "\n";
  return p;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exponents for the inverse-square model") {
  unsetenv("TAILWAVE_OUTPUT");
  const Captured c = run({"exponents", "--kind", "isp", "--a", "2", "--lmax", "2"});
  REQUIRE(c.code == 0);
  const auto rows = csv_rows(c.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"ell", "re_p", "im_p", "alpha"});
  const double s17 = std::sqrt(17.0), s33 = std::sqrt(33.0);
  const double expect[3][4] = {{0, 2, 0, 1.5}, {1, (1 + s17) / 2, 0, s17 / 2}, {2, (1 + s33) / 2, 0, s33 / 2}};
  for (int l = 0; l < 3; ++l)
    for (int k = 0; k < 4; ++k) CHECK(std::stod(rows[l + 1][k]) == doctest::Approx(expect[l][k]).epsilon(1e-15));
}

TEST_CASE("exponents for the charged model") {
  const Captured c = run({"exponents", "--kind", "csf", "--qe", "0.3", "--lmax", "1"});
  REQUIRE(c.code == 0);
  const auto rows = csv_rows(c.out);
  REQUIRE(rows.size() == 3);
  CHECK(std::stod(rows[1][1]) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(std::stod(rows[1][2]) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(std::stod(rows[2][3]) == doctest::Approx(std::sqrt(1 - 0.36 + 8) / 2).epsilon(1e-15));
}

TEST_CASE("validation failures exit 1") {
  const Captured missing = run({"evolve-ads", "--config", "/nonexistent/dir/run.cfg"});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("/nonexistent/dir/run.cfg") != std::string::npos);
  CHECK(run({"exponents", "--kind", "isp", "--a", "-0.3"}).code == 1);
  CHECK(run({"exponents", "--kind", "kg"}).code == 1);
  CHECK(run({"exponents", "--kind", "csf", "--qe", "0.5"}).code == 1);
  CHECK(run({"no-such-command"}).code == 1);
  CHECK(run({}).code == 1);
}

TEST_CASE("numerical failures exit 2") {
  const fs::path d = scratch_dir("cfl");
  unsetenv("TAILWAVE_OUTPUT");
  const fs::path cfg = write_config(d, (d / "out").string(), 0.7);
  const Captured c = run({"evolve-ads", "--config", cfg.string()});
  CHECK(c.code == 2);
  fs::remove_all(d);
}

TEST_CASE("verify hardy passes") {
  const fs::path d = scratch_dir("verify");
  setenv("TAILWAVE_OUTPUT", d.string().c_str(), 1);
  const Captured c = run({"verify", "--suite", "hardy"});
  unsetenv("TAILWAVE_OUTPUT");
  CHECK(c.code == 0);
  CHECK(c.out.find("suite=hardy pass=1") != std::string::npos);
  CHECK(fs::exists(d / "verify_hardy.csv"));
  CHECK(fs::exists(d / "manifest.json"));
  fs::remove_all(d);
}

TEST_CASE("repeated runs are bit-identical") {
  const fs::path d = scratch_dir("determinism");
  unsetenv("TAILWAVE_OUTPUT");
  fs::create_directories(d / "a");
  fs::create_directories(d / "b");
  const fs::path cfg1 = write_config(d / "a", (d / "a" / "out").string());
  const fs::path cfg2 = write_config(d / "b", (d / "b" / "out").string());
  const Captured r1 = run({"evolve-ads", "--config", cfg1.string()});
  const Captured r2 = run({"evolve-ads", "--config", cfg2.string()});
  REQUIRE(r1.code == 0);
  REQUIRE(r2.code == 0);
  CHECK(r1.out == r2.out);
  for (const char* f : {"snapshots.csv", "pseries.csv", "summary.csv"}) {
    const std::string a = slurp(d / "a" / "out" / f), b = slurp(d / "b" / "out" / f);
    CHECK(!a.empty());
    CHECK(a == b);
  }
  const std::string manifest = slurp(d / "a" / "out" / "manifest.json");
  for (const char* key : {"\"command\"", "\"version\"", "\"config\"", "\"grid\"", "\"wall_time_s\""})
    CHECK(manifest.find(key) != std::string::npos);
  fs::remove_all(d);
}

TEST_CASE("output directory override") {
  const fs::path d = scratch_dir("override");
  const fs::path cfg = write_config(d, (d / "configured").string());
  setenv("TAILWAVE_OUTPUT", (d / "env").string().c_str(), 1);
  const Captured c = run({"evolve-ads", "--config", cfg.string()});
  unsetenv("TAILWAVE_OUTPUT");
  CHECK(c.code == 0);
  CHECK(fs::exists(d / "env" / "pseries.csv"));
  CHECK_FALSE(fs::exists(d / "configured"));
  fs::remove_all(d);
}

TEST_CASE("tails fits a series file") {
  const fs::path d = scratch_dir("tails");
  const fs::path series = d / "radiation.csv";
  {
    std::ofstream f(series);
    f << "u,re,im,abs\n";
    f.precision(17);
    for (int i = 1; i <= 1000; ++i) {
      const double y = 5.0 / (double(i) * i);
      f << i << ',' << y << ",0," << y << '\n';
    }
  }
  const Captured c = run({"tails", "--input", series.string(), "--window", "50:500", "--expect-ell", "0", "--kind",
                          "isp", "--a", "2"});
  REQUIRE(c.code == 0);
  const auto rows = csv_rows(c.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][0] == "radiation");
  CHECK(std::stod(rows[1][3]) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(std::stod(rows[1][4]) == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(run({"tails", "--input", series.string(), "--window", "5000:6000", "--kind", "isp", "--a", "2"}).code == 1);
  CHECK(run({"tails", "--input", series.string(), "--window", "bad", "--kind", "isp", "--a", "2"}).code == 1);
  fs::remove_all(d);
}

TEST_CASE("convergence of the static mode is saturated") {
  const fs::path d = scratch_dir("static");
  const fs::path cfg = d / "static.cfg";
  {
    std::ofstream f(cfg);
    f << "[model]\nkind = isp\na = 2\n[grid]\nn_r = 64\nr_max = 3\ncfl = 0.4\n[data]\nfamily = static_mode\n"
      << "[run]\nt_end = -0.9\noutput_dir = " << (d / "out").string() << "\n";
  }
  unsetenv("TAILWAVE_OUTPUT");
  const Captured c = run({"convergence", "--config", cfg.string(), "--solver", "ads"});
  REQUIRE(c.code == 0);
  const auto rows = csv_rows(c.out);
  REQUIRE(rows.size() > 1);
  REQUIRE(rows[1][0] == "P0");
  CHECK(rows[1][4] == "saturated");
  CHECK(std::stod(rows[1][3]) < 1e-13);
  CHECK(fs::exists(d / "out" / "convergence.csv"));
  fs::remove_all(d);
}

}
