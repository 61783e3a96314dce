#include "rcmp/bench.hpp"

#include <algorithm>
#include <ostream>

#include "rcmp/orchestrator.hpp"

namespace rcmp {

std::vector<BenchRow> run_bench(const std::vector<std::string>& instance_paths,
                                const BenchOptions& options, std::ostream* log) {
  std::vector<BenchRow> rows;
  for (const std::string& path : instance_paths) {
    BenchRow row;
    row.instance = path;
    if (auto slash = path.find_last_of('/'); slash != std::string::npos)
      row.instance = path.substr(slash + 1);

    std::vector<Evaluation> evals;
    try {
      Instance instance = load_instance(path);
      for (int k = 0; k < options.runs; ++k) {
        SearchConfig config;
        config.eval = options.eval;
        config.time_budget_seconds = options.budget_seconds;
        config.seed = options.base_seed + static_cast<std::uint64_t>(k);
        try {
          SearchResult result = solve(instance, config, options.worker_count);
          evals.push_back(result.eval);
          ++row.runs_ok;
          if (log)
            *log << row.instance << " run " << k << " seed " << config.seed
                 << ": tpd=" << result.eval.tpd << " tms=" << result.eval.tms
                 << " f=" << result.eval.f << "\n";
        } catch (const std::exception& error) {
          ++row.runs_failed;
          if (log) *log << row.instance << " run " << k << " failed: " << error.what() << "\n";
        }
      }
    } catch (const std::exception& error) {
      row.runs_failed = options.runs;
      if (log) *log << row.instance << " failed to load: " << error.what() << "\n";
    }

    if (!evals.empty()) {
      std::sort(evals.begin(), evals.end(),
                [](const Evaluation& a, const Evaluation& b) { return a.f < b.f; });
      row.best = evals.front();
      row.median = evals[median_index(static_cast<int>(evals.size()))];
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << "instance,runs_ok,runs_failed,best_tpd,best_tms,median_tpd,median_tms\n";
  for (const BenchRow& row : rows) {
    out << row.instance << ',' << row.runs_ok << ',' << row.runs_failed << ',';
    if (row.runs_ok > 0)
      out << row.best.tpd << ',' << row.best.tms << ',' << row.median.tpd << ','
          << row.median.tms << "\n";
    else
      out << ",,,\n";
  }
}

}  // namespace rcmp
