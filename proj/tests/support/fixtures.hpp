// Shared test fixtures: the T1 reference instance, small builders, a seeded
// generator of tiny feasible instances, and independent reference
// computations used as oracles against the library.
#pragma once

#include <algorithm>
#include <vector>

#include "rcmp/evaluation.hpp"
#include "rcmp/instance.hpp"
#include "rcmp/rng.hpp"

namespace fixtures {

// Reference instance T1: one project, one global renewable resource (cap 2),
// one non-renewable resource (cap 4), chain 1 -> 2 -> 3, two modes each.
inline const char* kT1Text = R"(# T1 reference instance
global_renewable 1 2
projects 1
project 1 release 0 renewable_local 0 nonrenewable_local 1 4 activities 3
activity 1 modes 2 successors 1 2
mode 2 gr 2 lr nr 1
mode 4 gr 1 lr nr 1
activity 2 modes 2 successors 1 3
mode 3 gr 2 lr nr 2
mode 5 gr 1 lr nr 1
activity 3 modes 2 successors 0
mode 1 gr 1 lr nr 1
mode 1 gr 2 lr nr 2
)";

inline rcmp::ProblemSet t1_problem() { return rcmp::parse_problem(kT1Text); }
inline rcmp::Instance t1() { return rcmp::flatten(t1_problem()); }

inline rcmp::ModeSpec mode(int duration, std::vector<int> gr = {},
                           std::vector<int> lr = {}, std::vector<int> nr = {}) {
  rcmp::ModeSpec m;
  m.duration = duration;
  m.global_renewable = std::move(gr);
  m.local_renewable = std::move(lr);
  m.nonrenewable = std::move(nr);
  return m;
}

inline rcmp::ActivitySpec activity(std::vector<rcmp::ModeSpec> modes,
                                   std::vector<int> successors = {}) {
  rcmp::ActivitySpec a;
  a.modes = std::move(modes);
  a.successors = std::move(successors);
  return a;
}

inline rcmp::ProblemSet single_project(std::vector<int> global_caps,
                                       std::vector<int> local_nr_caps,
                                       std::vector<rcmp::ActivitySpec> activities,
                                       int release = 0,
                                       std::vector<int> local_renewable_caps = {}) {
  rcmp::ProblemSet ps;
  ps.global_renewable_caps = std::move(global_caps);
  rcmp::ProjectSpec project;
  project.id = 0;
  project.release = release;
  project.local_renewable_caps = std::move(local_renewable_caps);
  project.local_nonrenewable_caps = std::move(local_nr_caps);
  for (size_t i = 0; i < activities.size(); ++i) activities[i].local_id = static_cast<int>(i);
  project.activities = std::move(activities);
  ps.projects.push_back(std::move(project));
  return ps;
}

// Single project, one mode per activity, chain precedence, no resources.
inline rcmp::Instance chain_instance(const std::vector<int>& durations) {
  std::vector<rcmp::ActivitySpec> acts;
  for (size_t i = 0; i < durations.size(); ++i) {
    std::vector<int> succs;
    if (i + 1 < durations.size()) succs.push_back(static_cast<int>(i) + 1);
    acts.push_back(activity({mode(durations[i])}, succs));
  }
  return rcmp::flatten(single_project({}, {}, std::move(acts)));
}

// Random tiny feasible instance: 1-2 projects, 4-6 real activities in total,
// up to 3 modes each, 1-2 global renewable resources, one non-renewable per
// project. Non-renewable capacities cover the cheapest mode of every
// activity, so a feasible mode vector always exists.
inline rcmp::ProblemSet random_tiny_problem(rcmp::Rng& rng) {
  rcmp::ProblemSet ps;
  int renewables = 1 + rng.uniform_int(2);
  for (int r = 0; r < renewables; ++r)
    ps.global_renewable_caps.push_back(2 + rng.uniform_int(3));

  int project_count = 1 + rng.uniform_int(2);
  int total = 4 + rng.uniform_int(3);
  std::vector<int> sizes;
  if (project_count == 1) {
    sizes = {total};
  } else {
    int first = 1 + rng.uniform_int(total - 1);
    sizes = {first, total - first};
  }

  for (int p = 0; p < project_count; ++p) {
    rcmp::ProjectSpec project;
    project.id = p;
    project.release = p == 0 ? 0 : rng.uniform_int(6);
    int min_demand_sum = 0;
    for (int a = 0; a < sizes[p]; ++a) {
      rcmp::ActivitySpec act;
      act.local_id = a;
      int mode_count = 1 + rng.uniform_int(3);
      int cheapest = 1 << 20;
      for (int k = 0; k < mode_count; ++k) {
        rcmp::ModeSpec m;
        m.duration = rng.uniform_int(5);
        for (int cap : ps.global_renewable_caps)
          m.global_renewable.push_back(rng.uniform_int(cap + 1));
        m.nonrenewable.push_back(rng.uniform_int(4));
        cheapest = std::min(cheapest, m.nonrenewable[0]);
        act.modes.push_back(std::move(m));
      }
      min_demand_sum += cheapest;
      for (int s = a + 1; s < sizes[p]; ++s)
        if (rng.uniform_int(100) < 35) act.successors.push_back(s);
      project.activities.push_back(std::move(act));
    }
    project.local_nonrenewable_caps = {min_demand_sum + rng.uniform_int(3)};
    ps.projects.push_back(std::move(project));
  }
  return ps;
}

inline rcmp::Instance random_tiny_instance(std::uint64_t seed) {
  rcmp::Rng rng(seed);
  return rcmp::flatten(random_tiny_problem(rng));
}

// Genotype from 1-based real-activity mode indices; the order defaults to
// source, reals in index order, sink.
inline rcmp::Genotype make_genotype(const rcmp::Instance& instance,
                                    const std::vector<int>& real_modes_1based) {
  rcmp::Genotype g;
  g.modes.assign(instance.n, 0);
  for (size_t i = 0; i < real_modes_1based.size(); ++i)
    g.modes[1 + i] = real_modes_1based[i] - 1;
  g.order.resize(instance.n);
  for (int a = 0; a < instance.n; ++a) g.order[a] = a;
  return g;
}

inline std::vector<int> shuffled_order(const rcmp::Instance& instance, rcmp::Rng& rng) {
  std::vector<int> order(instance.n);
  for (int a = 0; a < instance.n; ++a) order[a] = a;
  for (int i = instance.n - 1; i > 0; --i) {
    int j = rng.uniform_int(i + 1);
    std::swap(order[i], order[j]);
  }
  return order;
}

// Earliest precedence-feasible start times computed by plain relaxation
// sweeps, as a reference for the priority-queue pass in the library.
inline std::vector<int> reference_earliest_starts(const rcmp::Instance& instance) {
  std::vector<int> est(instance.n, 0);
  for (int a = 0; a < instance.n; ++a) est[a] = instance.release_of(a);
  for (int round = 0; round < instance.n; ++round) {
    bool changed = false;
    for (int a = 0; a < instance.n; ++a)
      for (int p : instance.activities[a].predecessors) {
        int bound = est[p] + instance.min_duration(p);
        if (bound > est[a]) {
          est[a] = bound;
          changed = true;
        }
      }
    if (!changed) break;
  }
  return est;
}

// Longest min-duration path of a project by exhaustive path enumeration.
inline int brute_force_cpd(const rcmp::ProjectSpec& project) {
  const int count = static_cast<int>(project.activities.size());
  std::vector<int> min_duration(count);
  for (int a = 0; a < count; ++a) {
    int best = 1 << 20;
    for (const rcmp::ModeSpec& m : project.activities[a].modes)
      best = std::min(best, m.duration);
    min_duration[a] = count == 0 ? 0 : best;
  }
  int longest = 0;
  // depth-first over every path from every activity
  std::vector<std::pair<int, int>> stack;  // (activity, accumulated length)
  for (int a = 0; a < count; ++a) stack.push_back({a, min_duration[a]});
  while (!stack.empty()) {
    auto [a, length] = stack.back();
    stack.pop_back();
    longest = std::max(longest, length);
    for (int s : project.activities[a].successors)
      stack.push_back({s, length + min_duration[s]});
  }
  return longest;
}

}  // namespace fixtures
