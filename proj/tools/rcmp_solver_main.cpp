// rcmp-solver command line.
//
//   rcmp-solver <instance> <solution-out> <seconds> <seed>
//   rcmp-solver bench <dir> [--runs N] [--budget S] [--seed K] [--out FILE]
//   rcmp-solver validate <instance> <solution>
//
// Exit codes: 0 success, 1 usage/parse/IO failure, 2 no feasible mode vector.

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "rcmp/bench.hpp"
#include "rcmp/orchestrator.hpp"
#include "rcmp/solution_io.hpp"

namespace {

constexpr double kWriteReserve = 0.02;  // share of the budget kept for output

void print_usage(std::ostream& out) {
  out << "usage: rcmp-solver <instance> <solution-out> <seconds> <seed>\n"
         "       rcmp-solver bench <dir> [--runs N] [--budget S] [--seed K] [--out FILE]\n"
         "       rcmp-solver validate <instance> <solution>\n"
         "\n"
         "environment: RCMP_THREADS  worker count (default 4)\n";
}

bool parse_number(const std::string& text, long long& value) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

int worker_count_from_env() {
  const char* env = std::getenv("RCMP_THREADS");
  if (!env) return 4;
  long long value = 0;
  if (!parse_number(env, value) || value < 1) {
    std::cerr << "warning: ignoring invalid RCMP_THREADS value '" << env << "'\n";
    return 4;
  }
  return static_cast<int>(value);
}

int solve_main(const std::vector<std::string>& args,
               std::chrono::steady_clock::time_point program_start) {
  if (args.size() != 4) {
    print_usage(std::cerr);
    return 1;
  }
  long long seconds = 0, seed = 0;
  if (!parse_number(args[2], seconds) || seconds <= 0) {
    std::cerr << "error: <seconds> must be a positive integer\n";
    return 1;
  }
  if (!parse_number(args[3], seed)) {
    std::cerr << "error: <seed> must be an integer\n";
    return 1;
  }

  try {
    rcmp::Instance instance = rcmp::load_instance(args[0]);

    // The budget covers parsing and writing too; keep a reserve for output.
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - program_start)
            .count();
    rcmp::SearchConfig config;
    config.seed = static_cast<std::uint64_t>(seed);
    config.time_budget_seconds =
        std::max(0.01, static_cast<double>(seconds) * (1.0 - kWriteReserve) - elapsed);

    int workers = worker_count_from_env();
    rcmp::SearchResult result = rcmp::solve(instance, config, workers);

    rcmp::write_solution_file(instance, result.genotype, result.schedule, config.eval,
                              config.seed, args[1]);
    std::cout << "tpd=" << result.eval.tpd << " tms=" << result.eval.tms
              << " f=" << result.eval.f << " candidates=" << result.candidates
              << " local_optima=" << result.local_optima << "\n";
    return 0;
  } catch (const rcmp::RepairExhausted& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
}

int bench_main(const std::vector<std::string>& args) {
  if (args.empty()) {
    print_usage(std::cerr);
    return 1;
  }
  rcmp::BenchOptions options;
  options.worker_count = worker_count_from_env();
  std::string out_path;

  for (size_t i = 1; i < args.size(); i += 2) {
    if (i + 1 >= args.size()) {
      std::cerr << "error: option " << args[i] << " needs a value\n";
      return 1;
    }
    long long value = 0;
    const std::string& opt = args[i];
    const std::string& val = args[i + 1];
    if (opt == "--runs" && parse_number(val, value) && value > 0)
      options.runs = static_cast<int>(value);
    else if (opt == "--budget" && parse_number(val, value) && value > 0)
      options.budget_seconds = static_cast<double>(value);
    else if (opt == "--seed" && parse_number(val, value))
      options.base_seed = static_cast<std::uint64_t>(value);
    else if (opt == "--out")
      out_path = val;
    else {
      std::cerr << "error: bad option or value: " << opt << " " << val << "\n";
      return 1;
    }
  }

  std::vector<std::string> paths;
  try {
    for (const auto& entry : std::filesystem::directory_iterator(args[0])) {
      if (!entry.is_regular_file()) continue;
      auto ext = entry.path().extension().string();
      if (ext == ".rcmp" || ext == ".txt") paths.push_back(entry.path().string());
    }
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) {
    std::cerr << "error: no .rcmp or .txt instances under " << args[0] << "\n";
    return 1;
  }

  auto rows = rcmp::run_bench(paths, options, &std::cerr);
  if (out_path.empty()) {
    rcmp::write_bench_csv(rows, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot open " << out_path << "\n";
      return 1;
    }
    rcmp::write_bench_csv(rows, out);
  }
  return 0;
}

int validate_main(const std::vector<std::string>& args) {
  if (args.size() != 2) {
    print_usage(std::cerr);
    return 1;
  }
  try {
    rcmp::Instance instance = rcmp::load_instance(args[0]);
    rcmp::SolutionValidation result =
        rcmp::validate_solution_file(instance, args[1]);
    if (result.ok) {
      std::cout << "valid: tpd=" << result.eval.tpd << " tms=" << result.eval.tms
                << " f=" << result.eval.f << "\n";
      return 0;
    }
    for (const rcmp::Violation& v : result.violations)
      std::cout << "violation[" << rcmp::violation_kind_name(v.kind) << "]: " << v.detail
                << "\n";
    return 1;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  auto program_start = std::chrono::steady_clock::now();
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty()) {
    print_usage(std::cerr);
    return 1;
  }
  if (args[0] == "bench")
    return bench_main({args.begin() + 1, args.end()});
  if (args[0] == "validate")
    return validate_main({args.begin() + 1, args.end()});
  if (args[0] == "--help" || args[0] == "-h") {
    print_usage(std::cout);
    return 0;
  }
  return solve_main(args, program_start);
}
