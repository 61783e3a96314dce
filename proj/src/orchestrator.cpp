#include "rcmp/orchestrator.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#else
namespace {
int omp_get_thread_num() { return 0; }
}  // namespace
#endif

namespace rcmp {

bool SharedBest::offer(const Genotype& genotype, const Evaluation& eval) {
  std::lock_guard<std::mutex> lock(mutex_);
  if (has_value_ && eval.f >= best_.eval.f) return false;
  best_.genotype = genotype;
  best_.eval = eval;
  has_value_ = true;
  ++updates_;
  return true;
}

std::optional<GenotypeEval> SharedBest::get() const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (!has_value_) return std::nullopt;
  return best_;
}

std::uint64_t SharedBest::update_count() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return updates_;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> partition_ranges(
    std::uint64_t count, int parts) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
  ranges.reserve(parts);
  std::uint64_t base = count / parts;
  std::uint64_t remainder = count % parts;
  std::uint64_t begin = 0;
  for (int i = 0; i < parts; ++i) {
    std::uint64_t size = base + (static_cast<std::uint64_t>(i) < remainder ? 1 : 0);
    ranges.emplace_back(begin, begin + size);
    begin += size;
  }
  return ranges;
}

SearchResult run_parallel_small(const Instance& instance, const SearchConfig& config,
                                int worker_count, const ParallelHooks& hooks) {
  SharedBest shared;
  std::atomic<bool> stop{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::atomic<std::uint64_t> candidates{0}, local_optima{0}, perturbations{0};

  Budget prototype = make_budget(config);
  prototype.external_stop = &stop;

#pragma omp parallel num_threads(worker_count)
  {
    int worker = omp_get_thread_num();
    try {
      Budget budget = prototype;
      SearchHooks worker_hooks;
      worker_hooks.on_local_optimum =
          [&, worker](const GenotypeEval& local_optimum) -> std::optional<GenotypeEval> {
        shared.offer(local_optimum.genotype, local_optimum.eval);
        if (hooks.on_publish) hooks.on_publish(worker, local_optimum);
        return shared.get();  // resume from the shared best (then perturb)
      };
      VnsEngine engine(instance, config, worker_hooks,
                       Rng::for_worker(config.seed, worker));
      SearchResult result = engine.run(budget);
      shared.offer(result.genotype, result.eval);
      candidates += result.candidates;
      local_optima += result.local_optima;
      perturbations += result.perturbations;
    } catch (...) {
      {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
      stop.store(true, std::memory_order_relaxed);
    }
  }

  if (first_error) std::rethrow_exception(first_error);
  auto best = shared.get();
  if (!best) throw std::runtime_error("parallel search produced no solution");

  SearchResult result;
  result.genotype = best->genotype;
  result.eval = best->eval;
  result.schedule = decode(instance, result.genotype);
  result.candidates = candidates.load();
  result.local_optima = local_optima.load();
  result.perturbations = perturbations.load();
  return result;
}

namespace {

struct PassCandidate {
  bool accepted = false;
  Evaluation eval{};
  std::uint64_t idx = 0;
  std::uint64_t evaluated = 0;  // candidates actually inspected in the range
};

// Smallest f wins, ties by lowest enumeration index.
bool better_candidate(const PassCandidate& a, const PassCandidate& b) {
  if (!b.accepted) return a.accepted;
  if (!a.accepted) return false;
  if (a.eval.f != b.eval.f) return a.eval.f < b.eval.f;
  return a.idx < b.idx;
}

PassCandidate evaluate_range(const Instance& instance, const NeighborhoodIndex& index,
                             Operator op, const Genotype& base,
                             const std::vector<int>& positions,
                             const Evaluation& base_eval, std::uint64_t begin,
                             std::uint64_t end, const SearchConfig& config,
                             const Budget& budget) {
  PassCandidate best;
  DecodeScratch scratch;
  Genotype candidate;
  const bool mode_move =
      op == Operator::kSingleModeChange || op == Operator::kTwoModeChange;
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    if (budget.exhausted()) break;
    ++best.evaluated;
    index.make(op, idx, base, positions, candidate);
    bool feasible = true;
    Evaluation eval{};
    if (mode_move)
      feasible = nonrenewable_excess(instance, candidate.modes).feasible();
    if (feasible) {
      eval = decode_evaluate(instance, candidate, scratch, config.eval);
      if (config.debug_validate && idx % 256 == 0) {
        auto violations = check_schedule(instance, candidate.modes, scratch.start());
        if (!violations.empty())
          throw std::logic_error("decoded schedule violates invariants: " +
                                 violations.front().detail);
      }
    }
    if (accepts(op, base_eval, eval, feasible)) {
      PassCandidate found{true, eval, idx};
      if (better_candidate(found, best)) best = found;
    }
  }
  return best;
}

SearchResult run_large_impl(const Instance& instance, const SearchConfig& config,
                            int worker_count, bool use_parallel,
                            const ParallelHooks& hooks) {
  Budget budget = make_budget(config);
  Rng rng(config.seed);
  NeighborhoodIndex index(instance);
  DecodeScratch scratch;
  auto start_time = std::chrono::steady_clock::now();

  auto emit = [&](const char* label, const Evaluation& eval) {
    if (!hooks.trace) return;
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time)
            .count();
    hooks.trace(TraceEvent{elapsed, label, eval});
  };

  Genotype incumbent;
  incumbent.modes =
      repair_modes(instance, random_modes(instance, rng), rng, config.repair);
  incumbent.order = initial_sequence(instance);
  Evaluation incumbent_eval = decode_evaluate(instance, incumbent, scratch, config.eval);
  budget.charge(1);
  Genotype best = incumbent;
  Evaluation best_eval = incumbent_eval;
  budget.note_f(best_eval.f);

  std::uint64_t local_optima = 0, perturbations = 0;
  Genotype committed;

  while (!budget.exhausted()) {
    bool any_improvement = false;
    for (Operator op : kOperatorOrder) {
      std::uint64_t total = index.count(op);
      if (total == 0) continue;
      std::uint64_t allow = budget.allowance(total);
      if (allow == 0) break;
      std::vector<int> positions = index.real_positions(incumbent);

      PassCandidate winner;
      std::uint64_t evaluated = 0;
      if (use_parallel && worker_count > 1) {
        auto ranges = partition_ranges(allow, worker_count);
        std::vector<PassCandidate> local_best(ranges.size());
        std::exception_ptr pass_error;
        std::mutex error_mutex;
#pragma omp parallel num_threads(worker_count)
        {
          int worker = omp_get_thread_num();
          if (worker < static_cast<int>(ranges.size())) {
            try {
              local_best[worker] = evaluate_range(
                  instance, index, op, incumbent, positions, incumbent_eval,
                  ranges[worker].first, ranges[worker].second, config, budget);
            } catch (...) {
              std::lock_guard<std::mutex> lock(error_mutex);
              if (!pass_error) pass_error = std::current_exception();
            }
          }
        }
        if (pass_error) std::rethrow_exception(pass_error);
        for (const PassCandidate& c : local_best) {
          evaluated += c.evaluated;
          if (better_candidate(c, winner)) winner = c;
        }
      } else {
        winner = evaluate_range(instance, index, op, incumbent, positions,
                                incumbent_eval, 0, allow, config, budget);
        evaluated = winner.evaluated;
      }
      budget.charge(evaluated);

      if (winner.accepted) {
        if (winner.eval.f < incumbent_eval.f) any_improvement = true;
        index.make(op, winner.idx, incumbent, positions, committed);
        incumbent = committed;
        incumbent_eval = winner.eval;
        emit(operator_name(op), incumbent_eval);
        if (incumbent_eval.f < best_eval.f) {
          best = incumbent;
          best_eval = incumbent_eval;
          budget.note_f(best_eval.f);
        }
      }
      if (budget.exhausted()) break;
    }
    if (budget.exhausted()) break;
    if (any_improvement) continue;

    ++local_optima;
    const char* label = nullptr;
    Genotype perturbed = perturb(instance, incumbent, rng, config.repair, &label);
    if (label == nullptr) break;
    ++perturbations;
    incumbent = std::move(perturbed);
    incumbent_eval = decode_evaluate(instance, incumbent, scratch, config.eval);
    budget.charge(1);
    emit(label, incumbent_eval);
    if (incumbent_eval.f < best_eval.f) {
      best = incumbent;
      best_eval = incumbent_eval;
      budget.note_f(best_eval.f);
    }
  }

  SearchResult result;
  result.genotype = best;
  result.eval = best_eval;
  result.schedule = decode(instance, result.genotype);
  result.candidates = budget.used;
  result.local_optima = local_optima;
  result.perturbations = perturbations;
  return result;
}

}  // namespace

SearchResult run_parallel_large(const Instance& instance, const SearchConfig& config,
                                int worker_count, const ParallelHooks& hooks) {
  return run_large_impl(instance, config, worker_count, true, hooks);
}

SearchResult run_large_serial(const Instance& instance, const SearchConfig& config,
                              const ParallelHooks& hooks) {
  return run_large_impl(instance, config, 1, false, hooks);
}

SearchResult solve(const Instance& instance, const SearchConfig& config,
                   int worker_count) {
  if (instance.n < config.small_instance_threshold)
    return run_parallel_small(instance, config, worker_count);
  return run_parallel_large(instance, config, worker_count);
}

}  // namespace rcmp
