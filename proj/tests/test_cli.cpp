#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd =
      std::string("\"") + PARISI_LAB_BIN + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / "parisi_cli_test";
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const char* kSolveConfig = R"({
  "phi": "log_cosh",
  "param": 1.0,
  "grid": {"x_min": -14.0, "x_max": 14.0, "h": 0.025, "quad_order": 40}
})";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("solve writes a csv matching the closed form") {
  const fs::path dir = work_dir();
  write_file(dir / "solve.json", kSolveConfig);
  const int rc = run("solve --config " + (dir / "solve.json").string() +
                     " --out " + (dir / "out_a").string());
  REQUIRE(rc == 0);

  std::ifstream in(dir / "out_a" / "solve.csv");
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);  // header
  double worst = 0.0;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::stringstream ls(line);
    std::string cell;
    std::getline(ls, cell, ',');
    const double x = std::stod(cell);
    std::getline(ls, cell, ',');
    const double F = std::stod(cell);
    const double a = std::abs(x);
    const double want =
        0.5 + a + std::log1p(std::exp(-2.0 * a)) - 0.69314718055994530942;
    worst = std::max(worst, std::abs(F - want));
    ++rows;
  }
  CHECK(rows > 1000);
  CHECK(worst <= 1e-7);
  CHECK(fs::exists(dir / "out_a" / "effective_config.json"));
}

TEST_CASE("repeated runs produce byte-identical outputs") {
  const fs::path dir = work_dir();
  write_file(dir / "solve.json", kSolveConfig);
  REQUIRE(run("solve --config " + (dir / "solve.json").string() + " --out " +
              (dir / "out_b").string()) == 0);
  REQUIRE(run("solve --config " + (dir / "solve.json").string() + " --out " +
              (dir / "out_c").string()) == 0);
  const std::string a = slurp(dir / "out_b" / "solve.csv");
  const std::string b = slurp(dir / "out_c" / "solve.csv");
  REQUIRE_FALSE(a.empty());
  CHECK(a == b);
}

TEST_CASE("convexity-scan exits zero on an ordered pair") {
  const fs::path dir = work_dir();
  write_file(dir / "scan.json", R"({
    "phi1": "log_cosh",
    "a1": 0.3,
    "a2": 0.9,
    "alphas": [0.0, 0.5, 1.0],
    "xs": [0.0, 1.0],
    "grid": {"x_min": -12.0, "x_max": 12.0, "h": 0.04, "quad_order": 40}
  })");
  const int rc = run("convexity-scan --config " + (dir / "scan.json").string() +
                     " --out " + (dir / "out_scan").string());
  CHECK(rc == 0);
  const std::string summary = slurp(dir / "out_scan" / "convexity_scan_summary.txt");
  CHECK(summary.find("PASS") != std::string::npos);
  CHECK(fs::exists(dir / "out_scan" / "convexity_scan.csv"));
}

TEST_CASE("plot renders an svg from a csv") {
  const fs::path dir = work_dir();
  write_file(dir / "solve.json", kSolveConfig);
  REQUIRE(run("solve --config " + (dir / "solve.json").string() + " --out " +
              (dir / "out_p").string()) == 0);
  write_file(dir / "plot.json",
             std::string("{\"csv\": \"") + (dir / "out_p" / "solve.csv").string() +
                 "\", \"x\": \"x\", \"y\": \"F\"}");
  REQUIRE(run("plot --config " + (dir / "plot.json").string() + " --out " +
              (dir / "out_p").string()) == 0);
  const std::string svg = slurp(dir / "out_p" / "plot.svg");
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);

  // missing column: error, no file written
  write_file(dir / "plot_bad.json",
             std::string("{\"csv\": \"") + (dir / "out_p" / "solve.csv").string() +
                 "\", \"x\": \"x\", \"y\": \"missing\"}");
  CHECK(run("plot --config " + (dir / "plot_bad.json").string() + " --out " +
            (dir / "out_q").string()) == 1);
  CHECK_FALSE(fs::exists(dir / "out_q" / "plot.svg"));
}

TEST_CASE("bad inputs exit with status 1") {
  const fs::path dir = work_dir();
  write_file(dir / "broken.json", "{ not json");
  CHECK(run("solve --config " + (dir / "broken.json").string()) == 1);
  CHECK(run("solve --config " + (dir / "does_not_exist.json").string()) == 1);
  write_file(dir / "badphi.json", R"({"phi": "mystery", "param": 0.5})");
  CHECK(run("solve --config " + (dir / "badphi.json").string() + " --out " +
            (dir / "out_bad").string()) == 1);
  CHECK(run("nonsense-subcommand --config x.json") != 0);
}

}  // TEST_SUITE
