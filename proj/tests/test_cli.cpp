#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "fplap/cli.hpp"
#include "fplap/field_io.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path root = fs::temp_directory_path() / "fplap_test_cli";

int run(const std::string& args) {
  const std::string cmd = std::string(FPLAP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::vector<std::vector<double>> read_csv(const fs::path& p) {
  std::ifstream is(p);
  std::string line;
  std::getline(is, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  return {std::istreambuf_iterator<char>(is), {}};
}

}  // namespace

TEST_CASE("limits: riccati residual column") {
  const fs::path out = root / "riccati";
  REQUIRE(run("limits --family riccati --p 3 --out " + out.string()) == 0);
  const auto rows = read_csv(out / "limits_riccati.csv");
  REQUIRE(rows.size() == 200);
  for (const auto& r : rows) {
    CHECK(r[3] <= 1e-12);
    CHECK(r[5] <= 1e-12);
  }
  CHECK(slurp(out / "resolved_config.txt").rfind("# fplap ", 0) == 0);
}

TEST_CASE("limits: cauchy kernel mass column and barenblatt edge") {
  const fs::path out = root / "kernel";
  REQUIRE(run("limits --family cauchy-kernel --p 2 --out " + out.string()) == 0);
  for (const auto& r : read_csv(out / "limits_cauchy-kernel.csv"))
    CHECK(std::abs(r[3] - 1.0) <= 1e-6);
  REQUIRE(run("limits --family barenblatt --p 3 --C 2 --k 0.5 --out " + out.string()) == 0);
  const auto rows = read_csv(out / "limits_barenblatt.csv");
  CHECK(rows.back()[1] == 0.0);
  CHECK(rows.front()[2] == doctest::Approx(std::pow(4.0, 2.0 / 3.0)));
}

TEST_CASE("exit codes") {
  CHECK(run("limits --s 1.5 --out " + (root / "bad").string()) == fplap::kExitValidation);
  CHECK(run("limits --family nope --out " + (root / "bad").string()) == fplap::kExitValidation);
  CHECK(run("nosuchcommand") == fplap::kExitValidation);
  CHECK(run("evolve --init /nonexistent.field --out " + (root / "bad").string()) ==
        fplap::kExitValidation);
  CHECK(run("--version") == 0);
}

TEST_CASE("evolve: zero data, dirac box, resume") {
  const fs::path z = root / "zero";
  CHECK(run("evolve --quick --shape zero --t-end 0.5 --record 0.25 --out " + z.string()) == 0);
  CHECK(fs::exists(z / "trajectory.csv"));

  const fs::path d = root / "dirac";
  REQUIRE(run("evolve --quick --threads 1 --shape dirac-box --t-end 1 --record 0.25 --out " +
              d.string()) == 0);
  const auto rows = read_csv(d / "trajectory.csv");
  REQUIRE(rows.size() == 5);
  for (const auto& r : rows) CHECK(r[1] == doctest::Approx(1.0).epsilon(1e-3));

  const fs::path r = root / "resume";
  REQUIRE(run("evolve --quick --init " + (d / "snap_0002.field").string() +
              " --t-end 1 --record 0.25 --out " + r.string()) == 0);
  const fplap::Field a = fplap::read_checkpoint((d / "snap_0004.field").string());
  const fplap::Field b = fplap::read_checkpoint((r / "snap_0002.field").string());
  CHECK(a.time() == b.time());
  CHECK((a.values().array() == b.values().array()).all());
}

TEST_CASE("config file with flag override") {
  const fs::path out = root / "cfg";
  fs::create_directories(out);
  std::ofstream(out / "run.cfg") << "# comment\np=3\nsamples=50\nfamily=riccati\n";
  REQUIRE(run("limits --config " + (out / "run.cfg").string() + " --samples 20 --out " +
              out.string()) == 0);
  CHECK(read_csv(out / "limits_riccati.csv").size() == 20);
  const std::string cfg = slurp(out / "resolved_config.txt");
  CHECK(cfg.find("\np=3\n") != std::string::npos);
}

TEST_CASE("profile sweep and determinism") {
  const fs::path a = root / "prof_a", b = root / "prof_b";
  REQUIRE(run("profile --quick --p 3,4 --out " + a.string()) == 0);
  REQUIRE(run("profile --quick --p 3,4 --out " + b.string()) == 0);
  for (const char* f : {"profile_s0.5_p3.csv", "profile_s0.5_p4.csv", "profile_s0.5_p4_loglog.csv"}) {
    REQUIRE(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
}

TEST_CASE("verify: broken tolerance fails") {
  const fs::path out = root / "verify";
  CHECK(run("verify --quick --only 1,2 --out " + out.string()) == 0);
  CHECK(run("verify --quick --only 1 --tol-scale 1e-9 --out " + out.string()) ==
        fplap::kExitVerification);
  CHECK(fs::exists(out / "verify_report.csv"));
}
