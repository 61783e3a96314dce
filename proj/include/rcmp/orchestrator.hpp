// Parallel execution of the search. Small instances run independent worker
// searches that synchronize through a shared best solution; large instances
// run one logical search whose neighborhood passes are split across workers.
// Every parallel kernel has a serial twin with identical results under a
// candidate-count budget, which is the baseline the tests compare against.
#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "rcmp/search.hpp"

namespace rcmp {

// Best solution found so far across workers. A stored evaluation is replaced
// only by a strictly smaller f; ties keep the earlier entry.
class SharedBest {
 public:
  bool offer(const Genotype& genotype, const Evaluation& eval);
  std::optional<GenotypeEval> get() const;
  std::uint64_t update_count() const;

 private:
  mutable std::mutex mutex_;
  GenotypeEval best_;
  bool has_value_ = false;
  std::uint64_t updates_ = 0;
};

struct ParallelHooks {
  // Called after a worker publishes a local optimum to the shared best.
  std::function<void(int worker, const GenotypeEval&)> on_publish;
  // Large-regime trace; invoked from serial sections only.
  std::function<void(const TraceEvent&)> trace;
};

// Contiguous near-equal ranges [begin, end) covering [0, count).
std::vector<std::pair<std::uint64_t, std::uint64_t>> partition_ranges(
    std::uint64_t count, int parts);

// Independent searches with a shared incumbent: each worker runs the iterated
// VNS with its own stream; at every local optimum it publishes, fetches the
// shared best, perturbs it and resumes. Worker failures cancel the peers.
SearchResult run_parallel_small(const Instance& instance, const SearchConfig& config,
                                int worker_count, const ParallelHooks& hooks = {});

// One logical search; every neighborhood pass is evaluated against the fixed
// incumbent across `worker_count` index ranges, and the best accepted
// candidate (smallest f, ties by lowest index) is committed per pass.
SearchResult run_parallel_large(const Instance& instance, const SearchConfig& config,
                                int worker_count, const ParallelHooks& hooks = {});

// Serial reference of the large regime; bit-identical to run_parallel_large
// under a candidate-count budget.
SearchResult run_large_serial(const Instance& instance, const SearchConfig& config,
                              const ParallelHooks& hooks = {});

// Regime dispatch by instance size.
SearchResult solve(const Instance& instance, const SearchConfig& config,
                   int worker_count);

}  // namespace rcmp
