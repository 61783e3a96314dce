// Iterated variable neighborhood search over (modes, sequence) genotypes.
// Four operators are cycled in a fixed order; position moves on the sequence
// accept strict improvements only, mode moves additionally require a feasible
// mode vector, and the two-mode operator also accepts equal objective values.
// A local optimum triggers a mode perturbation and the search continues.
#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rcmp/evaluation.hpp"
#include "rcmp/instance.hpp"
#include "rcmp/modes.hpp"
#include "rcmp/rng.hpp"

namespace rcmp {

enum class Operator { kExchange = 0, kInversion, kSingleModeChange, kTwoModeChange };
inline constexpr Operator kOperatorOrder[] = {
    Operator::kExchange, Operator::kInversion, Operator::kSingleModeChange,
    Operator::kTwoModeChange};

const char* operator_name(Operator op);  // "EX", "INV", "SMC", "TMC"

// Search stop conditions. Wall-clock runs poll the deadline once per
// candidate; candidate-count runs are bit-reproducible.
struct Budget {
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::optional<std::uint64_t> candidate_cap;
  std::optional<std::int64_t> target_f;
  std::atomic<bool>* external_stop = nullptr;

  std::uint64_t used = 0;

  static Budget unlimited() { return {}; }
  static Budget wall_clock_seconds(double seconds) {
    Budget b;
    b.deadline = std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                     std::chrono::duration<double>(seconds));
    return b;
  }
  static Budget candidates(std::uint64_t cap) {
    Budget b;
    b.candidate_cap = cap;
    return b;
  }

  void charge(std::uint64_t k = 1) { used += k; }

  // Candidates still allowed out of `want`, ignoring the deadline.
  std::uint64_t allowance(std::uint64_t want) const {
    if (!candidate_cap) return want;
    std::uint64_t left = *candidate_cap > used ? *candidate_cap - used : 0;
    return std::min(want, left);
  }

  void note_f(std::int64_t f) {
    if (target_f && f <= *target_f) {
      target_hit_ = true;
      if (external_stop) external_stop->store(true, std::memory_order_relaxed);
    }
  }

  bool exhausted() const {
    if (target_hit_) return true;
    if (external_stop && external_stop->load(std::memory_order_relaxed)) return true;
    if (candidate_cap && used >= *candidate_cap) return true;
    if (deadline && std::chrono::steady_clock::now() >= *deadline) return true;
    return false;
  }

 private:
  bool target_hit_ = false;
};

struct SearchConfig {
  EvaluationConfig eval;
  int small_instance_threshold = 307;  // below: exhaust each neighborhood
  RepairOptions repair;
  double time_budget_seconds = 0;               // 0 disables the deadline
  std::optional<std::uint64_t> candidate_budget;
  std::optional<std::int64_t> stop_at_f;
  std::uint64_t seed = 1;
  bool debug_validate = false;  // revalidate a sample of decoded schedules
};

Budget make_budget(const SearchConfig& config);

struct GenotypeEval {
  Genotype genotype;
  Evaluation eval;
};

struct TraceEvent {
  double elapsed_seconds = 0;
  const char* label = "";  // operator name, "perturb" or "perturb-swap"
  Evaluation eval;
};

void write_trace_header(std::ostream& out);
void write_trace_event(std::ostream& out, const TraceEvent& event);

struct SearchHooks {
  // Called at each local optimum. A returned genotype (with its evaluation)
  // replaces the incumbent before the engine applies its perturbation.
  std::function<std::optional<GenotypeEval>(const GenotypeEval& local_optimum)>
      on_local_optimum;
  std::function<void(const TraceEvent&)> trace;
};

// Deterministic flat-index enumeration of the four neighborhoods. Counts for
// a given instance are fixed; candidate `idx` of an operator applied to a
// base genotype is a pure function of (op, idx, base).
class NeighborhoodIndex {
 public:
  explicit NeighborhoodIndex(const Instance& instance);

  std::uint64_t count(Operator op) const;

  // Positions of real activities within the sequence, in sequence order.
  std::vector<int> real_positions(const Genotype& base) const;

  // Writes candidate `idx` into `out` (a copy of `base` with one move applied).
  void make(Operator op, std::uint64_t idx, const Genotype& base,
            const std::vector<int>& positions, Genotype& out) const;

 private:
  const Instance* instance_;
  int real_count_;
  std::vector<std::uint64_t> pair_offset_;  // row starts of the (i<j) pair grid
  std::vector<int> multi_;                  // real activities with >= 2 modes
  std::vector<std::uint64_t> smc_prefix_;
  std::vector<std::pair<int, int>> tmc_pairs_;
  std::vector<std::uint64_t> tmc_prefix_;
  std::uint64_t pair_count_ = 0;
  std::uint64_t smc_count_ = 0;
  std::uint64_t tmc_count_ = 0;

  std::pair<int, int> unrank_pair(std::uint64_t idx) const;
};

// Acceptance rules: EX/INV strict improvement; SMC strict improvement and a
// feasible mode vector; TMC non-strict and feasible.
bool accepts(Operator op, const Evaluation& current, const Evaluation& candidate,
             bool candidate_modes_feasible);

// Activities ordered by earliest precedence-feasible start (minimum durations,
// releases, no resources), ties by ascending index.
std::vector<int> initial_sequence(const Instance& instance);

// Reassigns one random activity to another mode and repairs the vector. When
// no activity has an alternative mode, falls back to a random sequence swap.
// `label` (optional) receives "perturb" or "perturb-swap".
Genotype perturb(const Instance& instance, const Genotype& genotype, Rng& rng,
                 const RepairOptions& repair, const char** label = nullptr);

enum class PassStrategy { kExhaust, kSinglePass };

struct SearchState {
  Genotype incumbent;
  Evaluation incumbent_eval;
  Genotype best;
  Evaluation best_eval;
  Rng rng{0};
  int operator_cursor = 0;
};

struct SearchResult {
  Genotype genotype;
  Evaluation eval;
  Schedule schedule;
  std::uint64_t candidates = 0;
  std::uint64_t local_optima = 0;
  std::uint64_t perturbations = 0;
};

class VnsEngine {
 public:
  VnsEngine(const Instance& instance, const SearchConfig& config,
            SearchHooks hooks, Rng rng);

  // Builds the initial genotype (random repaired modes, lower-bound-ordered
  // sequence). Throws RepairExhausted if no feasible mode vector is found.
  void init(Budget& budget);

  // One neighborhood exploration; returns true when the incumbent strictly
  // improved. Accepted equal-value moves update the incumbent but do not
  // count as improvement.
  bool explore(Operator op, PassStrategy strategy, Budget& budget);

  // Full search loop; calls init() if not done yet.
  SearchResult run(Budget& budget);

  SearchState& state() { return state_; }
  const NeighborhoodIndex& index() const { return index_; }
  PassStrategy strategy() const;
  std::uint64_t local_optima() const { return local_optima_; }

 private:
  void emit(const char* label, const Evaluation& eval);
  void update_best(Budget& budget);

  const Instance& instance_;
  SearchConfig config_;
  SearchHooks hooks_;
  NeighborhoodIndex index_;
  SearchState state_;
  DecodeScratch scratch_;
  Genotype candidate_;
  std::chrono::steady_clock::time_point start_time_;
  std::uint64_t local_optima_ = 0;
  std::uint64_t perturbations_ = 0;
  bool initialized_ = false;
};

// Single-threaded iterated VNS run. The neighborhood strategy is chosen by
// instance size against config.small_instance_threshold.
SearchResult run_vns(const Instance& instance, const SearchConfig& config,
                     const SearchHooks& hooks = {});

}  // namespace rcmp
