#include "rcmp/modes.hpp"

#include <algorithm>

namespace rcmp {

std::vector<int> random_modes(const Instance& instance, Rng& rng) {
  std::vector<int> modes(instance.n, 0);
  for (int a = 1; a + 1 < instance.n; ++a)
    modes[a] = rng.uniform_int(instance.mode_count(a));
  return modes;
}

ExcessReport nonrenewable_excess(const Instance& instance,
                                 const std::vector<int>& modes) {
  ExcessReport report;
  std::vector<std::int64_t> usage(instance.nonrenewable_caps.size(), 0);
  for (int a = 0; a < instance.n; ++a) {
    const Mode& mode = instance.activities[a].modes[modes[a]];
    for (const auto& [res, demand] : mode.nonrenewable) usage[res] += demand;
  }
  report.per_resource.resize(usage.size());
  for (size_t res = 0; res < usage.size(); ++res) {
    report.per_resource[res] =
        std::max<std::int64_t>(0, usage[res] - instance.nonrenewable_caps[res]);
    report.total_excess += report.per_resource[res];
  }
  return report;
}

namespace {

// Incremental view of non-renewable usage for the repair walk.
struct UsageTracker {
  const Instance& instance;
  std::vector<std::int64_t> usage;
  std::int64_t total_excess = 0;

  UsageTracker(const Instance& inst, const std::vector<int>& modes)
      : instance(inst) {
    reset(modes);
  }

  void reset(const std::vector<int>& modes) {
    usage.assign(instance.nonrenewable_caps.size(), 0);
    total_excess = 0;
    for (int a = 0; a < instance.n; ++a) add(a, modes[a], +1);
    for (size_t res = 0; res < usage.size(); ++res)
      total_excess +=
          std::max<std::int64_t>(0, usage[res] - instance.nonrenewable_caps[res]);
  }

  void add(int activity, int mode, int sign) {
    for (const auto& [res, demand] : instance.activities[activity].modes[mode].nonrenewable)
      usage[res] += sign * demand;
  }

  // Total excess if `activity` switched from `from` to `to`.
  std::int64_t excess_after_switch(int activity, int from, int to) {
    add(activity, from, -1);
    add(activity, to, +1);
    std::int64_t result = 0;
    for (size_t res = 0; res < usage.size(); ++res)
      result += std::max<std::int64_t>(0, usage[res] - instance.nonrenewable_caps[res]);
    add(activity, to, -1);
    add(activity, from, +1);
    return result;
  }

  void commit_switch(int activity, int from, int to) {
    add(activity, from, -1);
    add(activity, to, +1);
    total_excess = 0;
    for (size_t res = 0; res < usage.size(); ++res)
      total_excess += std::max<std::int64_t>(0, usage[res] - instance.nonrenewable_caps[res]);
  }
};

}  // namespace

std::vector<int> repair_modes(const Instance& instance, std::vector<int> modes,
                              Rng& rng, const RepairOptions& options,
                              const RepairObserver* observer) {
  const int max_attempts =
      options.max_attempts > 0 ? options.max_attempts : 50 * std::max(1, instance.n);

  std::vector<int> multi_mode;
  for (int a = 1; a + 1 < instance.n; ++a)
    if (instance.mode_count(a) >= 2) multi_mode.push_back(a);

  UsageTracker tracker(instance, modes);
  if (tracker.total_excess == 0) return modes;
  if (multi_mode.empty())
    throw RepairExhausted("mode repair exhausted: no alternative modes exist");

  int restarts = 0;
  int unsuccessful = 0;
  while (true) {
    int activity = multi_mode[rng.uniform_int(static_cast<int>(multi_mode.size()))];
    int current = modes[activity];
    int pick = rng.uniform_int(instance.mode_count(activity) - 1);
    int candidate = pick < current ? pick : pick + 1;

    std::int64_t after = tracker.excess_after_switch(activity, current, candidate);
    if (after <= tracker.total_excess) {
      bool strict = after < tracker.total_excess;
      tracker.commit_switch(activity, current, candidate);
      modes[activity] = candidate;
      if (observer && observer->on_accept) observer->on_accept(tracker.total_excess);
      if (tracker.total_excess == 0) return modes;
      unsuccessful = strict ? 0 : unsuccessful + 1;
    } else {
      ++unsuccessful;
    }

    if (unsuccessful >= max_attempts) {
      if (++restarts > options.max_restarts)
        throw RepairExhausted("mode repair exhausted after " +
                              std::to_string(options.max_restarts) + " restarts");
      modes = random_modes(instance, rng);
      tracker.reset(modes);
      if (observer && observer->on_restart) observer->on_restart();
      if (tracker.total_excess == 0) return modes;
      unsuccessful = 0;
    }
  }
}

}  // namespace rcmp
