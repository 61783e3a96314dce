// Benchmark harness: repeated seeded runs per instance, best and median
// reported as CSV.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rcmp/search.hpp"

namespace rcmp {

struct BenchOptions {
  int runs = 20;
  double budget_seconds = 10;
  std::uint64_t base_seed = 1;  // run k uses base_seed + k
  int worker_count = 4;
  EvaluationConfig eval;
};

struct BenchRow {
  std::string instance;
  int runs_ok = 0;
  int runs_failed = 0;
  Evaluation best;    // smallest f across runs
  Evaluation median;  // lower median of the f-sorted runs
};

// Index of the lower median in a sorted sample of `runs` values.
inline int median_index(int runs) { return (runs - 1) / 2; }

// Runs every instance `options.runs` times; failures are recorded and the
// harness continues. `log` (optional) receives one line per run.
std::vector<BenchRow> run_bench(const std::vector<std::string>& instance_paths,
                                const BenchOptions& options, std::ostream* log);

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out);

}  // namespace rcmp
