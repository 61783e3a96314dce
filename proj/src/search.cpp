#include "rcmp/search.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace rcmp {

const char* operator_name(Operator op) {
  switch (op) {
    case Operator::kExchange: return "EX";
    case Operator::kInversion: return "INV";
    case Operator::kSingleModeChange: return "SMC";
    case Operator::kTwoModeChange: return "TMC";
  }
  return "?";
}

Budget make_budget(const SearchConfig& config) {
  Budget budget;
  if (config.time_budget_seconds > 0)
    budget = Budget::wall_clock_seconds(config.time_budget_seconds);
  budget.candidate_cap = config.candidate_budget;
  budget.target_f = config.stop_at_f;
  return budget;
}

void write_trace_header(std::ostream& out) { out << "elapsed,operator,f,tpd,tms\n"; }

void write_trace_event(std::ostream& out, const TraceEvent& event) {
  out << event.elapsed_seconds << ',' << event.label << ',' << event.eval.f << ','
      << event.eval.tpd << ',' << event.eval.tms << '\n';
}

bool accepts(Operator op, const Evaluation& current, const Evaluation& candidate,
             bool candidate_modes_feasible) {
  switch (op) {
    case Operator::kExchange:
    case Operator::kInversion:
      return candidate.f < current.f;
    case Operator::kSingleModeChange:
      return candidate.f < current.f && candidate_modes_feasible;
    case Operator::kTwoModeChange:
      return candidate.f <= current.f && candidate_modes_feasible;
  }
  return false;
}

NeighborhoodIndex::NeighborhoodIndex(const Instance& instance)
    : instance_(&instance), real_count_(instance.real_count) {
  const int k = real_count_;
  pair_offset_.resize(k > 0 ? k : 1, 0);
  std::uint64_t offset = 0;
  for (int i = 0; i < k; ++i) {
    pair_offset_[i] = offset;
    offset += static_cast<std::uint64_t>(k - 1 - i);
  }
  pair_count_ = offset;

  smc_prefix_.push_back(0);
  for (int a = 1; a + 1 < instance.n; ++a)
    if (instance.mode_count(a) >= 2) {
      multi_.push_back(a);
      smc_prefix_.push_back(smc_prefix_.back() + instance.mode_count(a) - 1);
    }
  smc_count_ = smc_prefix_.back();

  tmc_prefix_.push_back(0);
  for (size_t i = 0; i < multi_.size(); ++i)
    for (size_t j = i + 1; j < multi_.size(); ++j) {
      tmc_pairs_.emplace_back(multi_[i], multi_[j]);
      std::uint64_t combos =
          static_cast<std::uint64_t>(instance.mode_count(multi_[i]) - 1) *
          static_cast<std::uint64_t>(instance.mode_count(multi_[j]) - 1);
      tmc_prefix_.push_back(tmc_prefix_.back() + combos);
    }
  tmc_count_ = tmc_prefix_.back();
}

std::uint64_t NeighborhoodIndex::count(Operator op) const {
  switch (op) {
    case Operator::kExchange:
    case Operator::kInversion:
      return pair_count_;
    case Operator::kSingleModeChange:
      return smc_count_;
    case Operator::kTwoModeChange:
      return tmc_count_;
  }
  return 0;
}

std::vector<int> NeighborhoodIndex::real_positions(const Genotype& base) const {
  std::vector<int> positions;
  positions.reserve(real_count_);
  for (size_t pos = 0; pos < base.order.size(); ++pos)
    if (instance_->is_real(base.order[pos])) positions.push_back(static_cast<int>(pos));
  return positions;
}

std::pair<int, int> NeighborhoodIndex::unrank_pair(std::uint64_t idx) const {
  auto it = std::upper_bound(pair_offset_.begin(), pair_offset_.end(), idx);
  int a = static_cast<int>(it - pair_offset_.begin()) - 1;
  int b = a + 1 + static_cast<int>(idx - pair_offset_[a]);
  return {a, b};
}

void NeighborhoodIndex::make(Operator op, std::uint64_t idx, const Genotype& base,
                             const std::vector<int>& positions, Genotype& out) const {
  out = base;
  switch (op) {
    case Operator::kExchange: {
      auto [a, b] = unrank_pair(idx);
      std::swap(out.order[positions[a]], out.order[positions[b]]);
      break;
    }
    case Operator::kInversion: {
      // Reverses the real entries between two sequence positions; dummies in
      // between keep their places.
      auto [a, b] = unrank_pair(idx);
      for (int i = a, j = b; i < j; ++i, --j)
        std::swap(out.order[positions[i]], out.order[positions[j]]);
      break;
    }
    case Operator::kSingleModeChange: {
      auto it = std::upper_bound(smc_prefix_.begin(), smc_prefix_.end(), idx);
      int slot = static_cast<int>(it - smc_prefix_.begin()) - 1;
      int activity = multi_[slot];
      int alt = static_cast<int>(idx - smc_prefix_[slot]);
      out.modes[activity] = alt < base.modes[activity] ? alt : alt + 1;
      break;
    }
    case Operator::kTwoModeChange: {
      auto it = std::upper_bound(tmc_prefix_.begin(), tmc_prefix_.end(), idx);
      int slot = static_cast<int>(it - tmc_prefix_.begin()) - 1;
      auto [x, y] = tmc_pairs_[slot];
      std::uint64_t local = idx - tmc_prefix_[slot];
      int y_width = instance_->mode_count(y) - 1;
      int x_alt = static_cast<int>(local / y_width);
      int y_alt = static_cast<int>(local % y_width);
      out.modes[x] = x_alt < base.modes[x] ? x_alt : x_alt + 1;
      out.modes[y] = y_alt < base.modes[y] ? y_alt : y_alt + 1;
      break;
    }
  }
}

std::vector<int> initial_sequence(const Instance& instance) {
  const int n = instance.n;
  std::vector<int> earliest(n, 0);
  std::vector<int> pending(n, 0);
  for (int a = 0; a < n; ++a) {
    earliest[a] = instance.release_of(a);
    pending[a] = static_cast<int>(instance.activities[a].predecessors.size());
  }

  // Pop eligible activities by (lower bound on start, index); the result is
  // a precedence-consistent order by construction.
  using Entry = std::pair<int, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> eligible;
  for (int a = 0; a < n; ++a)
    if (pending[a] == 0) eligible.push({earliest[a], a});

  std::vector<int> order;
  order.reserve(n);
  while (!eligible.empty()) {
    auto [est, a] = eligible.top();
    eligible.pop();
    order.push_back(a);
    int finish = est + instance.min_duration(a);
    for (int succ : instance.activities[a].successors) {
      earliest[succ] = std::max(earliest[succ], finish);
      if (--pending[succ] == 0) eligible.push({earliest[succ], succ});
    }
  }
  assert(static_cast<int>(order.size()) == n);
  return order;
}

Genotype perturb(const Instance& instance, const Genotype& genotype, Rng& rng,
                 const RepairOptions& repair, const char** label) {
  Genotype out = genotype;
  std::vector<int> multi;
  for (int a = 1; a + 1 < instance.n; ++a)
    if (instance.mode_count(a) >= 2) multi.push_back(a);

  if (!multi.empty()) {
    int activity = multi[rng.uniform_int(static_cast<int>(multi.size()))];
    int pick = rng.uniform_int(instance.mode_count(activity) - 1);
    out.modes[activity] = pick < out.modes[activity] ? pick : pick + 1;
    out.modes = repair_modes(instance, std::move(out.modes), rng, repair);
    if (label) *label = "perturb";
    return out;
  }

  // No mode freedom anywhere: swap two sequence entries instead so the
  // search can still leave the local optimum.
  if (instance.real_count >= 2) {
    int k = instance.real_count;
    std::vector<int> positions;
    positions.reserve(k);
    for (size_t pos = 0; pos < out.order.size(); ++pos)
      if (instance.is_real(out.order[pos])) positions.push_back(static_cast<int>(pos));
    int i = rng.uniform_int(k);
    int j = rng.uniform_int(k - 1);
    if (j >= i) ++j;
    std::swap(out.order[positions[i]], out.order[positions[j]]);
    if (label) *label = "perturb-swap";
    return out;
  }

  if (label) *label = nullptr;
  return out;
}

VnsEngine::VnsEngine(const Instance& instance, const SearchConfig& config,
                     SearchHooks hooks, Rng rng)
    : instance_(instance),
      config_(config),
      hooks_(std::move(hooks)),
      index_(instance),
      start_time_(std::chrono::steady_clock::now()) {
  state_.rng = rng;
}

PassStrategy VnsEngine::strategy() const {
  return instance_.n < config_.small_instance_threshold ? PassStrategy::kExhaust
                                                        : PassStrategy::kSinglePass;
}

void VnsEngine::emit(const char* label, const Evaluation& eval) {
  if (!hooks_.trace) return;
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                 start_time_)
                       .count();
  hooks_.trace(TraceEvent{elapsed, label, eval});
}

void VnsEngine::init(Budget& budget) {
  state_.incumbent.modes =
      repair_modes(instance_, random_modes(instance_, state_.rng), state_.rng,
                   config_.repair);
  state_.incumbent.order = initial_sequence(instance_);
  state_.incumbent_eval =
      decode_evaluate(instance_, state_.incumbent, scratch_, config_.eval);
  budget.charge(1);
  state_.best = state_.incumbent;
  state_.best_eval = state_.incumbent_eval;
  budget.note_f(state_.best_eval.f);
  initialized_ = true;
}

void VnsEngine::update_best(Budget& budget) {
  if (state_.incumbent_eval.f < state_.best_eval.f) {
    state_.best = state_.incumbent;
    state_.best_eval = state_.incumbent_eval;
    budget.note_f(state_.best_eval.f);
  }
}

bool VnsEngine::explore(Operator op, PassStrategy strategy, Budget& budget) {
  const std::uint64_t total = index_.count(op);
  if (total == 0) return false;
  const bool mode_move =
      op == Operator::kSingleModeChange || op == Operator::kTwoModeChange;

  // A strict improvement restarts the enumeration against the new incumbent;
  // an accepted equal-value move (the two-mode operator allows them) keeps
  // the sweep going, which drifts across plateaus without looping forever.
  // The neighborhood is done once a sweep completes with no improvement.
  bool improved_any = false;
  bool restart = true;
  while (restart) {
    restart = false;
    std::vector<int> positions = index_.real_positions(state_.incumbent);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      if (budget.exhausted()) return improved_any;
      index_.make(op, idx, state_.incumbent, positions, candidate_);
      bool feasible = true;
      Evaluation eval{};
      if (feasible && mode_move)
        feasible = nonrenewable_excess(instance_, candidate_.modes).feasible();
      if (feasible) {
        eval = decode_evaluate(instance_, candidate_, scratch_, config_.eval);
        if (config_.debug_validate && budget.used % 256 == 0) {
          auto violations = check_schedule(instance_, candidate_.modes, scratch_.start());
          if (!violations.empty())
            throw std::logic_error("decoded schedule violates invariants: " +
                                   violations.front().detail);
        }
      }
      budget.charge(1);
      if (accepts(op, state_.incumbent_eval, eval, feasible)) {
        bool strict = eval.f < state_.incumbent_eval.f;
        state_.incumbent = candidate_;
        state_.incumbent_eval = eval;
        improved_any |= strict;
        emit(operator_name(op), eval);
        update_best(budget);
        if (strict && strategy == PassStrategy::kExhaust) {
          restart = true;
          break;
        }
        // equal-value acceptances come from mode moves only, so the
        // sequence positions stay valid; position moves rebind
        if (op == Operator::kExchange || op == Operator::kInversion)
          positions = index_.real_positions(state_.incumbent);
      }
    }
    if (strategy == PassStrategy::kSinglePass) break;
  }
  return improved_any;
}

SearchResult VnsEngine::run(Budget& budget) {
  if (!initialized_) init(budget);
  const PassStrategy strat = strategy();

  while (!budget.exhausted()) {
    bool any_improved = false;
    for (int opi = 0; opi < 4; ++opi) {
      state_.operator_cursor = opi;
      if (explore(kOperatorOrder[opi], strat, budget)) any_improved = true;
      if (budget.exhausted()) break;
    }
    if (budget.exhausted()) break;
    if (any_improved) continue;

    // Local optimum: no operator improved the incumbent in a full cycle.
    ++local_optima_;
    update_best(budget);
    if (hooks_.on_local_optimum) {
      GenotypeEval here{state_.incumbent, state_.incumbent_eval};
      if (auto replacement = hooks_.on_local_optimum(here)) {
        state_.incumbent = std::move(replacement->genotype);
        state_.incumbent_eval = replacement->eval;
      }
      if (budget.exhausted()) break;
    }

    const char* label = nullptr;
    Genotype perturbed =
        perturb(instance_, state_.incumbent, state_.rng, config_.repair, &label);
    if (label == nullptr) break;  // nothing can move, the search is done
    ++perturbations_;
    state_.incumbent = std::move(perturbed);
    state_.incumbent_eval =
        decode_evaluate(instance_, state_.incumbent, scratch_, config_.eval);
    budget.charge(1);
    emit(label, state_.incumbent_eval);
    update_best(budget);
  }

  SearchResult result;
  result.genotype = state_.best;
  result.eval = state_.best_eval;
  result.schedule = decode(instance_, state_.best);
  result.candidates = budget.used;
  result.local_optima = local_optima_;
  result.perturbations = perturbations_;
  return result;
}

SearchResult run_vns(const Instance& instance, const SearchConfig& config,
                     const SearchHooks& hooks) {
  VnsEngine engine(instance, config, hooks, Rng(config.seed));
  Budget budget = make_budget(config);
  return engine.run(budget);
}

}  // namespace rcmp
