// Problem model: multi-project input files, validation, and the flattened
// single super-project the solver works on.
//
// Instance file format (UTF-8, line oriented, '#' starts a comment,
// whitespace separated tokens, all indices 1-based):
//
//   global_renewable <G> <cap_1> ... <cap_G>
//   projects <P>
//   project <p> release <r> renewable_local <L> <caps...>
//           nonrenewable_local <N> <caps...> activities <A>
//   activity <a> modes <K> successors <cnt> <s_1> ... <s_cnt>
//   mode <duration> gr <G demands> lr <L demands> nr <N demands>
//
// Each `activity` line is followed by exactly K `mode` lines. Renewable
// resources renew every time unit; global ones are shared by all projects,
// local renewable and non-renewable resources belong to a single project.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rcmp {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct ModeSpec {
  int duration = 0;
  std::vector<int> global_renewable;  // aligned with the global caps
  std::vector<int> local_renewable;   // aligned with the project's local caps
  std::vector<int> nonrenewable;      // aligned with the project's caps

  bool operator==(const ModeSpec&) const = default;
};

struct ActivitySpec {
  int local_id = 0;                // 0-based position within the project
  std::vector<ModeSpec> modes;     // nonempty
  std::vector<int> successors;     // 0-based local ids, no dups, no self loop

  bool operator==(const ActivitySpec&) const = default;
};

struct ProjectSpec {
  int id = 0;  // 0-based
  int release = 0;
  std::vector<int> local_renewable_caps;
  std::vector<int> local_nonrenewable_caps;
  std::vector<ActivitySpec> activities;

  bool operator==(const ProjectSpec&) const = default;
};

struct ProblemSet {
  std::vector<int> global_renewable_caps;
  std::vector<ProjectSpec> projects;

  bool operator==(const ProblemSet&) const = default;
};

inline constexpr int kDummyProject = -1;

// One execution option of a flattened activity. Demands are stored sparsely
// against the instance-wide flat resource tables; zero demands are dropped.
struct Mode {
  int duration = 0;
  std::vector<std::pair<int, int>> renewable;     // (flat resource id, demand)
  std::vector<std::pair<int, int>> nonrenewable;  // (flat resource id, demand)

  bool operator==(const Mode&) const = default;
};

struct Activity {
  int project = kDummyProject;
  std::vector<Mode> modes;
  std::vector<int> predecessors;  // global indices, ascending
  std::vector<int> successors;    // global indices, ascending

  bool operator==(const Activity&) const = default;
};

// Flattened super-project. Index 0 is the dummy source, n-1 the dummy sink;
// real activities occupy 1..n-2 in file order, which is also their external
// 1-based numbering.
struct Instance {
  int n = 0;
  int real_count = 0;
  std::vector<Activity> activities;

  int global_renewable_count = 0;
  std::vector<int> renewable_caps;     // global resources, then per-project locals
  std::vector<int> nonrenewable_caps;  // per-project blocks

  std::vector<int> project_release;
  std::vector<int> project_cpd;                  // critical-path lower bounds
  std::vector<int> project_renewable_offset;     // size P+1, into renewable_caps
  std::vector<int> project_nonrenewable_offset;  // size P+1, into nonrenewable_caps

  bool operator==(const Instance&) const = default;

  int source() const { return 0; }
  int sink() const { return n - 1; }
  bool is_dummy(int a) const { return a == 0 || a == n - 1; }
  bool is_real(int a) const { return a > 0 && a < n - 1; }
  int project_count() const { return static_cast<int>(project_release.size()); }
  int project_of(int a) const { return activities[a].project; }
  int release_of(int a) const {
    int p = activities[a].project;
    return p == kDummyProject ? 0 : project_release[p];
  }
  int mode_count(int a) const { return static_cast<int>(activities[a].modes.size()); }
  int duration(int a, int mode) const { return activities[a].modes[mode].duration; }
  int min_duration(int a) const;
};

ProblemSet parse_problem(std::istream& in);
ProblemSet parse_problem(const std::string& text);

// Relabels all projects into one super-project with dummy endpoints.
Instance flatten(const ProblemSet& problem);

// Longest path through the project's activities using minimum mode durations,
// ignoring releases and resources.
int critical_path_bound(const Instance& instance, int project);

// parse_problem + flatten on a file. Throws ParseError or std::runtime_error.
Instance load_instance(const std::string& path);

}  // namespace rcmp
