#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gcpi/commands.hpp"

using namespace gcpi;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / "gcpi_cmd_test";
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

} // namespace

TEST_SUITE("commands") {

TEST_CASE("config file parsing") {
  TempDir dir;
  const std::string path = dir.file("run.cfg");
  {
    std::ofstream f(path);
    f << "# comment line\n"
      << "model = jc\n"
      << "omega = 1.25  # trailing comment\n"
      << "b-const = 0.5,-0.25\n"
      << "mode = discrete,ode\n"
      << "zi = 0.3,0.1\n"
      << "steps = 12\n";
  }
  RunConfig config;
  for (const auto& [k, v] : parse_config_file(path)) apply_config_entry(config, k, v);
  CHECK(config.model == "jc");
  CHECK(config.omega == 1.25);
  CHECK(config.b_const == Cplx(0.5, -0.25));
  CHECK(config.z_i == Cplx(0.3, 0.1));
  CHECK(config.steps == 12);
  CHECK(config.modes.size() == 1);

  CHECK_THROWS_AS(apply_config_entry(config, "bogus", "1"), ConfigError);
  CHECK_THROWS_AS(apply_config_entry(config, "omega", "fast"), ConfigError);
  CHECK_THROWS_AS(apply_config_entry(config, "steps", "0"), ConfigError);
  CHECK_THROWS_AS(parse_config_file(dir.file("missing.cfg")), ConfigError);

  const std::string bad = dir.file("bad.cfg");
  {
    std::ofstream f(bad);
    f << "no equals sign here\n";
  }
  CHECK_THROWS_AS(parse_config_file(bad), ConfigError);
}

TEST_CASE("verify-compose passes and is deterministic") {
  TempDir dir;
  RunConfig config;
  config.model = "both";
  config.t_total = 0.4;
  config.steps = 3;
  config.z_i = Cplx(0.3, 0.1);
  config.out = dir.file("verify.txt");

  std::ostringstream report1, report2;
  CHECK(cmd_verify_compose(config, report1) == exit_ok);
  const std::string first = slurp(config.out);
  const std::string summary = slurp(config.out + ".summary.json");
  CHECK(summary.find("\"pass\": true") != std::string::npos);

  CHECK(cmd_verify_compose(config, report2) == exit_ok);
  CHECK(slurp(config.out) == first);
  CHECK(report1.str() == report2.str());
  CHECK(first.find("counterexample") != std::string::npos);
}

TEST_CASE("verify-compose rejects oversized grids") {
  RunConfig config;
  config.steps = 9;
  std::ostringstream report;
  CHECK_THROWS_AS(cmd_verify_compose(config, report), ConfigError);
}

TEST_CASE("spin command emits CSV rows matching the free phase") {
  TempDir dir;
  RunConfig config;
  config.model = "spin";
  config.omega = 1.5;
  config.b_const = Cplx(0.0);
  config.t_total = 1.0;
  config.steps = 8;
  config.modes = {"ode"};
  config.out = dir.file("spin.csv");

  std::ostringstream report;
  CHECK(cmd_spin(config, report) == exit_ok);

  std::ifstream csv(config.out);
  std::string header;
  std::getline(csv, header);
  CHECK(header ==
        "t,ode_re_u00,ode_im_u00,ode_re_u01,ode_im_u01,ode_re_u10,ode_im_u10,"
        "ode_re_u11,ode_im_u11,oracle_re_u00,oracle_im_u00,oracle_re_u01,"
        "oracle_im_u01,oracle_re_u10,oracle_im_u10,oracle_re_u11,oracle_im_u11,"
        "max_abs_dev");
  int rows = 0;
  std::string line;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    ++rows;
    std::stringstream ss(line);
    std::vector<double> cells;
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(std::stod(cell));
    REQUIRE(cells.size() == 18);
    const double t = cells[0];
    CHECK(std::abs(cells[7] - std::cos(-1.5 * t)) < 1e-8);  // re u11
    CHECK(std::abs(cells[8] - std::sin(-1.5 * t)) < 1e-8);  // im u11
    CHECK(cells[17] < 1e-6);                                // max_abs_dev
  }
  CHECK(rows == 8);

  const std::string summary = slurp(config.out + ".summary.json");
  CHECK(summary.find("ode_vs_oracle") != std::string::npos);
  CHECK(summary.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("spin command is byte-deterministic") {
  TempDir dir;
  RunConfig config;
  config.b_sin = {0.5, 0.8, 0.1};
  config.t_total = 1.0;
  config.steps = 4;
  config.modes = {"all"};
  config.out = dir.file("spin.csv");
  std::ostringstream report;
  CHECK(cmd_spin(config, report) == exit_ok);
  const std::string first = slurp(config.out);
  CHECK(cmd_spin(config, report) == exit_ok);
  CHECK(slurp(config.out) == first);
}

TEST_CASE("spin command rejects an empty mode intersection") {
  RunConfig config;
  config.modes = {"stationary"};
  std::ostringstream report;
  CHECK_THROWS_AS(cmd_spin(config, report), ConfigError);
  config.modes = {"bogus"};
  CHECK_THROWS_AS(cmd_spin(config, report), ConfigError);
}

TEST_CASE("jc command checks tables and the resonant flip") {
  TempDir dir;
  RunConfig config;
  config.model = "jc";
  config.omega = 1.0;
  config.omega0 = 1.0;
  config.lambda = 0.8;
  config.z_i = Cplx(0.0);
  config.t_total = 2.0;
  config.steps = 10;
  config.m_max = 8;
  config.modes = {"ode"};
  config.out = dir.file("jc.csv");

  std::ostringstream report;
  CHECK(cmd_jc(config, report) == exit_ok);
  const std::string summary = slurp(config.out + ".summary.json");
  CHECK(summary.find("resonant_flip_vs_sin2") != std::string::npos);
  CHECK(summary.find("\"pass\": true") != std::string::npos);

  std::ifstream csv(config.out);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "t,mode,sector,m,re_path,im_path,re_oracle,im_oracle,abs_dev");
  int rows = 0;
  std::string line;
  while (std::getline(csv, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 10 * 4 * 9); // times x sectors x m-values
}

TEST_CASE("jc command with no coupling agrees to round-off") {
  TempDir dir;
  RunConfig config;
  config.model = "jc";
  config.omega = 1.1;
  config.omega0 = 0.9;
  config.lambda = 0.0;
  config.z_i = Cplx(0.5, 0.2);
  config.t_total = 2.0;
  config.steps = 6;
  config.m_max = 8;
  config.modes = {"ode"};
  config.out = dir.file("jc0.csv");
  std::ostringstream report;
  CHECK(cmd_jc(config, report) == exit_ok);

  std::ifstream csv(config.out);
  std::string line;
  std::getline(csv, line); // header
  double worst = 0.0;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    const auto last_comma = line.find_last_of(',');
    worst = std::max(worst, std::stod(line.substr(last_comma + 1)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("spin command, transverse constant field stays within tolerance") {
  TempDir dir;
  RunConfig config;
  config.model = "spin";
  config.omega = 0.0;
  config.b_const = Cplx(0.5, 0.0);
  config.t_total = 3.0;
  config.steps = 6;
  config.modes = {"ode"};
  config.out = dir.file("spin_x.csv");
  std::ostringstream report;
  CHECK(cmd_spin(config, report) == exit_ok);
  const std::string summary = slurp(config.out + ".summary.json");
  CHECK(summary.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("jc command guards") {
  std::ostringstream report;
  RunConfig config;
  config.m_max = 60; // above n_max - 2
  CHECK_THROWS_AS(cmd_jc(config, report), ConfigError);

  RunConfig big_z;
  big_z.z_i = Cplx(1.4, 0.0);
  CHECK_THROWS_AS(cmd_jc(big_z, report), ConfigError);
}

TEST_CASE("stationary command") {
  RunConfig config;
  config.model = "both";
  config.t_total = 0.5;
  config.steps = 4;
  config.z_i = Cplx(0.2, 0.1);
  std::ostringstream report;
  CHECK(cmd_stationary(config, report) == exit_ok);
  CHECK(report.str().find("model=spin") != std::string::npos);
  CHECK(report.str().find("model=jc") != std::string::npos);
  CHECK(report.str().find("FAIL") == std::string::npos);
}

TEST_CASE("convergence command passes on a sane grid") {
  TempDir dir;
  RunConfig config;
  config.model = "spin";
  config.t_total = 1.0;
  config.steps = 32;
  config.out = dir.file("conv.csv");
  std::ostringstream report;
  CHECK(cmd_convergence(config, report) == exit_ok);
  const std::string csv = slurp(config.out);
  CHECK(csv.find("eps_halving") != std::string::npos);
  CHECK(csv.find("m_max_tail") != std::string::npos);
}

TEST_CASE("convergence command reports a broken halving study honestly") {
  // at machine-precision deviations the halving ratios collapse, and the
  // command must say so with a check-failed exit
  TempDir dir;
  RunConfig config;
  config.model = "spin";
  config.omega = 0.0;
  config.b_const = Cplx(0.0);
  config.t_total = 0.5;
  config.steps = 4;
  config.out = dir.file("conv.csv");
  std::ostringstream report;
  CHECK(cmd_convergence(config, report) == exit_check_failed);
  const std::string summary = slurp(config.out + ".summary.json");
  CHECK(summary.find("\"pass\": false") != std::string::npos);
}

} // TEST_SUITE
