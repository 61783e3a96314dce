#include "rcmp/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "rcmp/modes.hpp"

namespace rcmp {

int horizon_bound(const Instance& instance) {
  int horizon = 0;
  for (int a = 0; a < instance.n; ++a) {
    int longest = 0;
    for (const Mode& mode : instance.activities[a].modes)
      longest = std::max(longest, mode.duration);
    horizon += longest;
  }
  int max_release = 0;
  for (int release : instance.project_release) max_release = std::max(max_release, release);
  return horizon + max_release;
}

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::vector<int> real_activities(const Instance& instance) {
  std::vector<int> reals(instance.real_count);
  std::iota(reals.begin(), reals.end(), 1);
  return reals;
}

}  // namespace

Evaluation best_over_permutations(const Instance& instance,
                                  const std::vector<int>& modes,
                                  const EvaluationConfig& config,
                                  const OracleLimits& limits) {
  if (instance.real_count > limits.max_activities)
    throw OracleLimitExceeded("instance exceeds the oracle activity cap");

  std::vector<int> perm = real_activities(instance);
  Genotype genotype;
  genotype.modes = modes;
  genotype.order.resize(instance.n);
  DecodeScratch scratch;

  Evaluation best;
  bool found = false;
  do {
    genotype.order[0] = instance.source();
    std::copy(perm.begin(), perm.end(), genotype.order.begin() + 1);
    genotype.order[instance.n - 1] = instance.sink();
    Evaluation eval = decode_evaluate(instance, genotype, scratch, config);
    if (!found || eval.f < best.f) {
      best = eval;
      found = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

OracleResult enumerate_genotypes(const Instance& instance,
                                 const EvaluationConfig& config,
                                 const OracleLimits& limits) {
  if (instance.real_count > limits.max_activities)
    throw OracleLimitExceeded("instance exceeds the oracle activity cap");

  std::uint64_t mode_combos = 1;
  for (int a = 1; a + 1 < instance.n; ++a)
    mode_combos = saturating_mul(mode_combos, instance.mode_count(a));
  std::uint64_t permutations = 1;
  for (int i = 2; i <= instance.real_count; ++i)
    permutations = saturating_mul(permutations, i);
  if (saturating_mul(mode_combos, permutations) > limits.max_total_genotypes)
    throw OracleLimitExceeded("genotype enumeration exceeds the size cap");

  Genotype genotype;
  genotype.modes.assign(instance.n, 0);
  genotype.order.resize(instance.n);
  DecodeScratch scratch;

  OracleResult result;
  bool found = false;
  std::vector<int> perm = real_activities(instance);

  // Odometer over mode vectors; sequences are enumerated per feasible vector.
  while (true) {
    if (nonrenewable_excess(instance, genotype.modes).feasible()) {
      std::sort(perm.begin(), perm.end());
      do {
        genotype.order[0] = instance.source();
        std::copy(perm.begin(), perm.end(), genotype.order.begin() + 1);
        genotype.order[instance.n - 1] = instance.sink();
        Evaluation eval = decode_evaluate(instance, genotype, scratch, config);
        ++result.enumerated;
        if (!found || eval.f < result.eval.f) {
          result.eval = eval;
          result.genotype = genotype;
          found = true;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    int a = 1;
    while (a + 1 < instance.n) {
      if (++genotype.modes[a] < instance.mode_count(a)) break;
      genotype.modes[a] = 0;
      ++a;
    }
    if (a + 1 >= instance.n) break;
  }

  if (!found) throw NoFeasibleGenotype("no feasible genotype");
  return result;
}

namespace {

// Depth-first exact search over start times for a fixed mode vector.
struct ScheduleSearch {
  const Instance& instance;
  const std::vector<int>& modes;
  const EvaluationConfig& config;
  const int horizon;
  const std::uint64_t node_limit;

  std::vector<int> topo;  // real activities in a precedence-compatible order
  std::vector<int> start, finish;
  std::vector<char> placed;
  std::vector<std::vector<int>> usage;
  std::vector<std::int64_t> project_lb;  // scratch for the bound

  Evaluation best{};
  bool found = false;
  std::uint64_t nodes = 0;

  ScheduleSearch(const Instance& inst, const std::vector<int>& m,
                 const EvaluationConfig& cfg, int hor, std::uint64_t limit)
      : instance(inst), modes(m), config(cfg), horizon(hor), node_limit(limit) {
    start.assign(inst.n, 0);
    finish.assign(inst.n, 0);
    placed.assign(inst.n, 0);
    placed[inst.source()] = 1;
    int max_duration = 0;
    for (int a = 0; a < inst.n; ++a)
      max_duration = std::max(max_duration, inst.duration(a, m[a]));
    usage.assign(inst.renewable_caps.size(),
                 std::vector<int>(horizon + max_duration + 1, 0));
    project_lb.resize(inst.project_count());

    std::vector<int> pending(inst.n, 0);
    for (int a = 1; a + 1 < inst.n; ++a) {
      for (int p : inst.activities[a].predecessors)
        if (inst.is_real(p)) ++pending[a];
    }
    std::vector<int> queue;
    for (int a = 1; a + 1 < inst.n; ++a)
      if (pending[a] == 0) queue.push_back(a);
    for (size_t i = 0; i < queue.size(); ++i) {
      topo.push_back(queue[i]);
      for (int s : instance.activities[queue[i]].successors)
        if (instance.is_real(s) && --pending[s] == 0) queue.push_back(s);
    }
  }

  // f lower bound for the current prefix with topo[depth] tentatively at its
  // current start; ignores resources for the unplaced suffix.
  std::int64_t bound(size_t depth) {
    std::int64_t tms = 0;
    for (int p = 0; p < instance.project_count(); ++p)
      project_lb[p] = instance.project_release[p];
    for (size_t d = 0; d <= depth && d < topo.size(); ++d) {
      int a = topo[d];
      tms = std::max<std::int64_t>(tms, finish[a]);
      project_lb[instance.activities[a].project] =
          std::max<std::int64_t>(project_lb[instance.activities[a].project], finish[a]);
    }
    // forward pass over the suffix with chosen durations, no resources
    std::vector<int> lb_finish(instance.n, 0);
    for (size_t d = 0; d <= depth && d < topo.size(); ++d)
      lb_finish[topo[d]] = finish[topo[d]];
    for (size_t d = depth + 1; d < topo.size(); ++d) {
      int a = topo[d];
      int est = instance.release_of(a);
      for (int p : instance.activities[a].predecessors)
        est = std::max(est, lb_finish[p]);
      lb_finish[a] = est + instance.duration(a, modes[a]);
      tms = std::max<std::int64_t>(tms, lb_finish[a]);
      project_lb[instance.activities[a].project] = std::max<std::int64_t>(
          project_lb[instance.activities[a].project], lb_finish[a]);
    }
    std::int64_t tpd = 0;
    for (int p = 0; p < instance.project_count(); ++p)
      tpd += project_lb[p] - instance.project_release[p] - instance.project_cpd[p];
    return combined_value(tpd, tms, config.alpha);
  }

  bool fits(int a, int t) const {
    const Mode& mode = instance.activities[a].modes[modes[a]];
    for (const auto& [res, demand] : mode.renewable)
      for (int u = t; u < t + mode.duration; ++u)
        if (usage[res][u] + demand > instance.renewable_caps[res]) return false;
    return true;
  }

  void occupy(int a, int t, int sign) {
    const Mode& mode = instance.activities[a].modes[modes[a]];
    for (const auto& [res, demand] : mode.renewable)
      for (int u = t; u < t + mode.duration; ++u) usage[res][u] += sign * demand;
  }

  void dfs(size_t depth) {
    if (depth == topo.size()) {
      Evaluation eval = evaluate_start_times(instance, modes, start, config);
      if (!found || eval.f < best.f) {
        best = eval;
        found = true;
      }
      return;
    }
    int a = topo[depth];
    int est = instance.release_of(a);
    for (int p : instance.activities[a].predecessors)
      est = std::max(est, placed[p] ? finish[p] : 0);
    for (int t = est; t <= horizon; ++t) {
      if (++nodes > node_limit)
        throw OracleLimitExceeded("schedule enumeration exceeds the node cap");
      start[a] = t;
      finish[a] = t + instance.duration(a, modes[a]);
      // the bound grows with t, so everything past the first cutoff is dead
      if (found && bound(depth) >= best.f) break;
      if (!fits(a, t)) continue;
      occupy(a, t, +1);
      placed[a] = 1;
      dfs(depth + 1);
      placed[a] = 0;
      occupy(a, t, -1);
    }
    start[a] = 0;
    finish[a] = 0;
  }
};

}  // namespace

Evaluation enumerate_schedules(const Instance& instance, const std::vector<int>& modes,
                               const EvaluationConfig& config, int horizon,
                               const OracleLimits& limits) {
  if (instance.real_count > limits.max_activities)
    throw OracleLimitExceeded("instance exceeds the oracle activity cap");
  if (horizon < 0) horizon = horizon_bound(instance);

  ScheduleSearch search(instance, modes, config, horizon, limits.max_schedule_nodes);
  search.dfs(0);
  if (!search.found) throw HorizonExhausted("horizon exhausted");
  return search.best;
}

int left_shift_count(const Instance& instance, const std::vector<int>& modes,
                     const std::vector<int>& start) {
  int makespan = 0;
  for (int a = 0; a < instance.n; ++a)
    makespan = std::max(makespan, start[a] + instance.duration(a, modes[a]));
  std::vector<std::vector<int>> usage(instance.renewable_caps.size(),
                                      std::vector<int>(makespan + 1, 0));
  for (int a = 0; a < instance.n; ++a) {
    const Mode& mode = instance.activities[a].modes[modes[a]];
    for (const auto& [res, demand] : mode.renewable)
      for (int t = start[a]; t < start[a] + mode.duration; ++t) usage[res][t] += demand;
  }

  int shiftable = 0;
  for (int a = 0; a < instance.n; ++a) {
    int candidate = start[a] - 1;
    if (candidate < instance.release_of(a)) continue;
    bool blocked = false;
    for (int p : instance.activities[a].predecessors)
      if (start[p] + instance.duration(p, modes[p]) > candidate) {
        blocked = true;
        break;
      }
    if (blocked) continue;
    // only the newly covered time unit can fail; the rest was already in use
    const Mode& mode = instance.activities[a].modes[modes[a]];
    if (mode.duration > 0) {
      for (const auto& [res, demand] : mode.renewable)
        if (usage[res][candidate] + demand > instance.renewable_caps[res]) {
          blocked = true;
          break;
        }
    }
    if (!blocked) ++shiftable;
  }
  return shiftable;
}

}  // namespace rcmp
