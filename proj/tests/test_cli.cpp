// End-to-end checks of the rcmp-solver binary (path injected by the build).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "rcmp/solution_io.hpp"
#include "support/fixtures.hpp"

namespace fs = std::filesystem;

namespace {

int run_command(const std::string& command) {
  int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

fs::path make_workdir() {
  fs::path dir = fs::temp_directory_path() / "rcmp-cli-test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("solve writes a valid solution and a summary") {
  fs::path dir = make_workdir();
  fs::path instance_path = dir / "t1.rcmp";
  std::ofstream(instance_path) << fixtures::kT1Text;
  fs::path solution_path = dir / "t1_sol.txt";
  fs::path stdout_path = dir / "stdout.txt";

  std::string command = std::string(RCMP_SOLVER_BIN) + " " + instance_path.string() +
                        " " + solution_path.string() + " 1 42 > " +
                        stdout_path.string();
  CHECK(run_command(command) == 0);
  REQUIRE(fs::exists(solution_path));

  rcmp::Instance inst = rcmp::load_instance(instance_path.string());
  rcmp::SolutionValidation check =
      rcmp::validate_solution_file(inst, solution_path.string());
  REQUIRE(check.ok);
  CHECK(check.eval.f == 6);  // T1 is solved to its enumeration optimum

  std::string summary = read_file(stdout_path);
  CHECK(summary.find("tpd=0") != std::string::npos);
  CHECK(summary.find("tms=6") != std::string::npos);
  CHECK(summary.find("f=6") != std::string::npos);

  std::string header = read_file(solution_path);
  CHECK(header.find("# tpd=0 tms=6 f=6 seed=42") == 0);
}

TEST_CASE("usage and io failures exit with one") {
  fs::path dir = make_workdir();
  CHECK(run_command(std::string(RCMP_SOLVER_BIN) + " a b c 2>/dev/null") == 1);
  CHECK(run_command(std::string(RCMP_SOLVER_BIN) + " " + (dir / "missing.rcmp").string() +
                    " " + (dir / "out.txt").string() + " 1 42 2>/dev/null") == 1);
  CHECK(run_command(std::string(RCMP_SOLVER_BIN) + " 2>/dev/null") == 1);
}

TEST_CASE("an instance without feasible mode vectors exits with two") {
  fs::path dir = make_workdir();
  fs::path instance_path = dir / "impossible.rcmp";
  std::ofstream(instance_path)
      << "global_renewable 0\n"
         "projects 1\n"
         "project 1 release 0 renewable_local 0 nonrenewable_local 1 0 activities 1\n"
         "activity 1 modes 2 successors 0\n"
         "mode 1 gr lr nr 1\n"
         "mode 2 gr lr nr 1\n";
  CHECK(run_command(std::string(RCMP_SOLVER_BIN) + " " + instance_path.string() + " " +
                    (dir / "out.txt").string() + " 1 42 2>/dev/null") == 2);
}

TEST_CASE("RCMP_THREADS overrides the worker count") {
  fs::path dir = make_workdir();
  fs::path instance_path = dir / "t1.rcmp";
  std::ofstream(instance_path) << fixtures::kT1Text;
  fs::path solution_path = dir / "sol.txt";
  CHECK(run_command("RCMP_THREADS=1 " + std::string(RCMP_SOLVER_BIN) + " " +
                    instance_path.string() + " " + solution_path.string() +
                    " 1 7 >/dev/null") == 0);
  CHECK(fs::exists(solution_path));
}

TEST_CASE("validate subcommand") {
  fs::path dir = make_workdir();
  fs::path instance_path = dir / "t1.rcmp";
  std::ofstream(instance_path) << fixtures::kT1Text;
  fs::path solution_path = dir / "sol.txt";
  std::ofstream(solution_path) << "1 1 0\n2 1 2\n3 1 5\n";
  CHECK(run_command(std::string(RCMP_SOLVER_BIN) + " validate " + instance_path.string() +
                    " " + solution_path.string() + " >/dev/null") == 0);

  std::ofstream(solution_path) << "1 1 0\n2 1 1\n3 1 5\n";  // precedence break
  CHECK(run_command(std::string(RCMP_SOLVER_BIN) + " validate " + instance_path.string() +
                    " " + solution_path.string() + " >/dev/null") == 1);
}

TEST_CASE("bench emits a csv row per instance") {
  fs::path dir = make_workdir();
  fs::path set_dir = dir / "set";
  fs::create_directories(set_dir);
  std::ofstream(set_dir / "a.rcmp") << fixtures::kT1Text;
  std::ofstream(set_dir / "b.rcmp") << fixtures::kT1Text;
  fs::path csv_path = dir / "results.csv";

  std::string command = std::string(RCMP_SOLVER_BIN) + " bench " + set_dir.string() +
                        " --runs 2 --budget 1 --seed 3 --out " + csv_path.string() +
                        " 2>/dev/null";
  CHECK(run_command(command) == 0);
  std::string csv = read_file(csv_path);
  CHECK(csv.find("instance,runs_ok,runs_failed,best_tpd,best_tms,median_tpd,median_tms") == 0);
  CHECK(csv.find("a.rcmp,2,0,0,6,0,6") != std::string::npos);
  CHECK(csv.find("b.rcmp,2,0,0,6,0,6") != std::string::npos);
}
