#include "rcmp/evaluation.hpp"

#include <algorithm>
#include <cassert>

namespace rcmp {

namespace {

// Earliest t >= lower_bound where the mode's renewable demands fit for the
// whole duration. Single left-to-right scan over the flat timetable: a
// conflict resets the run of consecutive feasible units, so every time unit
// is inspected at most once. The buffer is sized so the scan cannot leave it.
int earliest_fit(const int* usage, int stride, const std::vector<int>& caps,
                 const Mode& mode, int lower_bound) {
  if (mode.duration == 0 || mode.renewable.empty()) return lower_bound;
  int run = 0;
  for (int u = lower_bound;; ++u) {
    assert(u < stride);
    bool fits = true;
    for (const auto& [res, demand] : mode.renewable) {
      if (usage[static_cast<size_t>(res) * stride + u] + demand > caps[res]) {
        fits = false;
        break;
      }
    }
    if (!fits) {
      run = 0;
    } else if (++run == mode.duration) {
      return u - mode.duration + 1;
    }
  }
}

}  // namespace

void decode_times(const Instance& instance, const Genotype& genotype,
                  DecodeScratch& scratch) {
  const int n = instance.n;
  assert(static_cast<int>(genotype.modes.size()) == n);
  assert(static_cast<int>(genotype.order.size()) == n);

  scratch.start_.assign(n, 0);
  scratch.finish_.assign(n, 0);
  scratch.placed_.assign(n, 0);
  scratch.pending_preds_.resize(n);
  for (int a = 0; a < n; ++a)
    scratch.pending_preds_[a] = static_cast<int>(instance.activities[a].predecessors.size());

  // No serial placement can finish later than every chosen duration laid end
  // to end after the last release.
  int bound = 1;
  for (int a = 0; a < n; ++a) bound += instance.duration(a, genotype.modes[a]);
  int max_release = 0;
  for (int release : instance.project_release) max_release = std::max(max_release, release);
  bound += max_release;
  // Keep the stride stable so only the span dirtied by the previous decode
  // needs zeroing; a growing bound or a new resource layout forces a fresh
  // buffer.
  const int resources = static_cast<int>(instance.renewable_caps.size());
  if (resources != scratch.resources_ || bound > scratch.stride_) {
    scratch.stride_ = std::max(bound, scratch.stride_);
    scratch.resources_ = resources;
    scratch.usage_.assign(static_cast<size_t>(resources) * scratch.stride_, 0);
  } else {
    for (int res = 0; res < resources; ++res)
      std::fill_n(scratch.usage_.begin() + static_cast<size_t>(res) * scratch.stride_,
                  scratch.dirty_, 0);
  }

  // Repeatedly take the first entry of the sequence whose predecessors are
  // all placed; any permutation decodes this way.
  int scan_from = 0;
  for (int step = 0; step < n; ++step) {
    int chosen = -1;
    while (scratch.placed_[genotype.order[scan_from]]) ++scan_from;
    for (int pos = scan_from; pos < n; ++pos) {
      int a = genotype.order[pos];
      if (!scratch.placed_[a] && scratch.pending_preds_[a] == 0) {
        chosen = a;
        break;
      }
    }
    assert(chosen >= 0 && "precedence graph must be acyclic");

    const Mode& mode = instance.activities[chosen].modes[genotype.modes[chosen]];
    int lower = instance.release_of(chosen);
    for (int pred : instance.activities[chosen].predecessors)
      lower = std::max(lower, scratch.finish_[pred]);
    int start = earliest_fit(scratch.usage_.data(), scratch.stride_,
                             instance.renewable_caps, mode, lower);
    scratch.start_[chosen] = start;
    scratch.finish_[chosen] = start + mode.duration;
    for (const auto& [res, demand] : mode.renewable) {
      int* profile = scratch.usage_.data() + static_cast<size_t>(res) * scratch.stride_;
      for (int u = start; u < start + mode.duration; ++u) profile[u] += demand;
    }
    scratch.placed_[chosen] = 1;
    for (int succ : instance.activities[chosen].successors)
      --scratch.pending_preds_[succ];
  }

  scratch.dirty_ = 0;
  for (int a = 0; a < n; ++a)
    scratch.dirty_ = std::max(scratch.dirty_, scratch.finish_[a]);
}

Schedule decode(const Instance& instance, const Genotype& genotype,
                DecodeScratch& scratch) {
  decode_times(instance, genotype, scratch);
  Schedule schedule;
  schedule.start = scratch.start_;
  schedule.finish = scratch.finish_;
  int makespan = 0;
  for (int f : schedule.finish) makespan = std::max(makespan, f);
  schedule.renewable_usage.assign(instance.renewable_caps.size(),
                                  std::vector<int>(makespan, 0));
  for (int a = 0; a < instance.n; ++a) {
    const Mode& mode = instance.activities[a].modes[genotype.modes[a]];
    for (const auto& [res, demand] : mode.renewable)
      for (int u = schedule.start[a]; u < schedule.finish[a]; ++u)
        schedule.renewable_usage[res][u] += demand;
  }
  return schedule;
}

Schedule decode(const Instance& instance, const Genotype& genotype) {
  DecodeScratch scratch;
  return decode(instance, genotype, scratch);
}

namespace {

Evaluation evaluate_finish_times(const Instance& instance,
                                 const std::vector<int>& finish,
                                 const EvaluationConfig& config,
                                 std::vector<std::int64_t>& project_finish) {
  Evaluation eval;
  for (int a = 0; a < instance.n; ++a)
    eval.tms = std::max(eval.tms, static_cast<std::int64_t>(finish[a]));
  project_finish.assign(instance.project_count(), 0);
  for (int p = 0; p < instance.project_count(); ++p)
    project_finish[p] = instance.project_release[p];
  for (int a = 1; a + 1 < instance.n; ++a) {
    int p = instance.activities[a].project;
    project_finish[p] = std::max(project_finish[p], static_cast<std::int64_t>(finish[a]));
  }
  for (int p = 0; p < instance.project_count(); ++p)
    eval.tpd += project_finish[p] - instance.project_release[p] - instance.project_cpd[p];
  eval.f = combined_value(eval.tpd, eval.tms, config.alpha);
  return eval;
}

Evaluation evaluate_finish_times(const Instance& instance,
                                 const std::vector<int>& finish,
                                 const EvaluationConfig& config) {
  std::vector<std::int64_t> project_finish;
  return evaluate_finish_times(instance, finish, config, project_finish);
}

}  // namespace

Evaluation evaluate(const Instance& instance, const Schedule& schedule,
                    const EvaluationConfig& config) {
  return evaluate_finish_times(instance, schedule.finish, config);
}

Evaluation decode_evaluate(const Instance& instance, const Genotype& genotype,
                           DecodeScratch& scratch, const EvaluationConfig& config) {
  decode_times(instance, genotype, scratch);
  return evaluate_finish_times(instance, scratch.finish_, config, scratch.project_finish_);
}

Evaluation evaluate_start_times(const Instance& instance,
                                const std::vector<int>& modes,
                                const std::vector<int>& start,
                                const EvaluationConfig& config) {
  std::vector<int> finish(instance.n, 0);
  for (int a = 0; a < instance.n; ++a)
    finish[a] = start[a] + instance.duration(a, modes[a]);
  return evaluate_finish_times(instance, finish, config);
}

const char* violation_kind_name(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::kStructure: return "structure";
    case Violation::Kind::kRelease: return "release";
    case Violation::Kind::kPrecedence: return "precedence";
    case Violation::Kind::kRenewableCapacity: return "renewable-capacity";
    case Violation::Kind::kNonrenewableCapacity: return "nonrenewable-capacity";
  }
  return "unknown";
}

std::vector<Violation> check_schedule(const Instance& instance,
                                      const std::vector<int>& modes,
                                      const std::vector<int>& start) {
  std::vector<Violation> violations;
  const int n = instance.n;
  if (static_cast<int>(modes.size()) != n || static_cast<int>(start.size()) != n) {
    violations.push_back({Violation::Kind::kStructure, -1, -1, -1,
                          "mode or start vector length does not match instance"});
    return violations;
  }
  for (int a = 0; a < n; ++a) {
    if (modes[a] < 0 || modes[a] >= instance.mode_count(a)) {
      violations.push_back({Violation::Kind::kStructure, a, -1, -1,
                            "mode index " + std::to_string(modes[a] + 1) +
                                " out of range for activity " + std::to_string(a)});
      return violations;
    }
    if (start[a] < 0)
      violations.push_back({Violation::Kind::kStructure, a, -1, -1,
                            "negative start time"});
  }

  for (int a = 0; a < n; ++a) {
    if (start[a] < instance.release_of(a))
      violations.push_back({Violation::Kind::kRelease, a, -1, start[a],
                            "activity " + std::to_string(a) + " starts at " +
                                std::to_string(start[a]) + " before release " +
                                std::to_string(instance.release_of(a))});
    int finish_a = start[a] + instance.duration(a, modes[a]);
    for (int succ : instance.activities[a].successors)
      if (start[succ] < finish_a)
        violations.push_back({Violation::Kind::kPrecedence, succ, -1, start[succ],
                              "activity " + std::to_string(succ) + " starts at " +
                                  std::to_string(start[succ]) +
                                  " before predecessor " + std::to_string(a) +
                                  " finishes at " + std::to_string(finish_a)});
  }

  int horizon = 0;
  for (int a = 0; a < n; ++a)
    horizon = std::max(horizon, start[a] + instance.duration(a, modes[a]));
  std::vector<std::vector<int>> usage(instance.renewable_caps.size(),
                                      std::vector<int>(horizon, 0));
  for (int a = 0; a < n; ++a) {
    const Mode& mode = instance.activities[a].modes[modes[a]];
    for (const auto& [res, demand] : mode.renewable)
      for (int t = start[a]; t < start[a] + mode.duration; ++t) usage[res][t] += demand;
  }
  for (size_t res = 0; res < usage.size(); ++res)
    for (int t = 0; t < horizon; ++t)
      if (usage[res][t] > instance.renewable_caps[res]) {
        violations.push_back({Violation::Kind::kRenewableCapacity, -1,
                              static_cast<int>(res), t,
                              "renewable resource " + std::to_string(res + 1) +
                                  " over capacity at t=" + std::to_string(t) + " (" +
                                  std::to_string(usage[res][t]) + " > " +
                                  std::to_string(instance.renewable_caps[res]) + ")"});
        break;  // one report per resource keeps the list readable
      }

  std::vector<std::int64_t> nonrenewable_usage(instance.nonrenewable_caps.size(), 0);
  for (int a = 0; a < n; ++a) {
    const Mode& mode = instance.activities[a].modes[modes[a]];
    for (const auto& [res, demand] : mode.nonrenewable) nonrenewable_usage[res] += demand;
  }
  for (size_t res = 0; res < nonrenewable_usage.size(); ++res)
    if (nonrenewable_usage[res] > instance.nonrenewable_caps[res])
      violations.push_back({Violation::Kind::kNonrenewableCapacity, -1,
                            static_cast<int>(res), -1,
                            "non-renewable resource " + std::to_string(res + 1) +
                                " over capacity (" + std::to_string(nonrenewable_usage[res]) +
                                " > " + std::to_string(instance.nonrenewable_caps[res]) + ")"});
  return violations;
}

}  // namespace rcmp
