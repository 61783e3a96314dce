// Compares the serial reference implementation of the large-instance regime
// against the OpenMP kernels on a synthetic instance, checking that both
// produce identical results under a candidate-count budget and reporting
// candidate throughput.
//
//   rcmp-parallel-bench [projects] [activities-per-project] [threads] [candidates]

#include <charconv>
#include <chrono>
#include <iostream>
#include <string>

#include "rcmp/orchestrator.hpp"

namespace {

rcmp::Instance make_synthetic(int projects, int activities_per_project) {
  rcmp::ProblemSet ps;
  ps.global_renewable_caps = {6, 5};
  rcmp::Rng rng(2024);
  for (int p = 0; p < projects; ++p) {
    rcmp::ProjectSpec project;
    project.id = p;
    project.release = (p * 3) % 17;
    project.local_nonrenewable_caps = {0};  // filled below
    int nonrenewable_budget = 0;
    for (int a = 0; a < activities_per_project; ++a) {
      rcmp::ActivitySpec act;
      act.local_id = a;
      int mode_count = 1 + rng.uniform_int(3);
      int min_demand = 1 << 20;
      for (int k = 0; k < mode_count; ++k) {
        rcmp::ModeSpec mode;
        mode.duration = 1 + rng.uniform_int(6);
        mode.global_renewable = {rng.uniform_int(4), rng.uniform_int(3)};
        mode.nonrenewable = {1 + rng.uniform_int(4)};
        min_demand = std::min(min_demand, mode.nonrenewable[0]);
        act.modes.push_back(mode);
      }
      nonrenewable_budget += min_demand;
      // forward edges keep the precedence graph acyclic
      for (int s = a + 1; s < activities_per_project; ++s)
        if (rng.uniform_int(100) < 25) act.successors.push_back(s);
      project.activities.push_back(std::move(act));
    }
    project.local_nonrenewable_caps = {nonrenewable_budget + 2};
    ps.projects.push_back(std::move(project));
  }
  return rcmp::flatten(ps);
}

double run_timed(const char* label, const std::function<rcmp::SearchResult()>& fn,
                 std::uint64_t candidates, rcmp::SearchResult& out) {
  auto t0 = std::chrono::steady_clock::now();
  out = fn();
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << label << ": f=" << out.eval.f << " tpd=" << out.eval.tpd
            << " tms=" << out.eval.tms << "  " << seconds << " s  "
            << static_cast<std::uint64_t>(candidates / std::max(seconds, 1e-9))
            << " candidates/s\n";
  return seconds;
}

}  // namespace

int main(int argc, char** argv) {
  int projects = 20, per_project = 16, threads = 4;
  std::uint64_t candidates = 400000;
  auto arg = [&](int i, long long fallback) -> long long {
    if (argc <= i) return fallback;
    long long v = fallback;
    std::string s = argv[i];
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
  };
  projects = static_cast<int>(arg(1, projects));
  per_project = static_cast<int>(arg(2, per_project));
  threads = static_cast<int>(arg(3, threads));
  candidates = static_cast<std::uint64_t>(arg(4, static_cast<long long>(candidates)));

  rcmp::Instance instance = make_synthetic(projects, per_project);
  std::cout << "synthetic instance: n=" << instance.n << " (" << projects << " projects x "
            << per_project << " activities), budget " << candidates << " candidates\n";

  rcmp::SearchConfig config;
  config.seed = 7;
  config.candidate_budget = candidates;

  rcmp::SearchResult serial, parallel;
  double t_serial = run_timed("serial reference     ", [&] {
    return rcmp::run_large_serial(instance, config);
  }, candidates, serial);
  double t_parallel = run_timed("openmp neighborhoods ", [&] {
    return rcmp::run_parallel_large(instance, config, threads);
  }, candidates, parallel);

  bool identical = serial.genotype == parallel.genotype && serial.eval == parallel.eval;
  std::cout << "results identical: " << (identical ? "yes" : "NO") << "\n";
  std::cout << "speedup: " << (t_parallel > 0 ? t_serial / t_parallel : 0) << "x with "
            << threads << " threads\n";
  return identical ? 0 : 1;
}
