#include "rcmp/instance.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

namespace rcmp {

int Instance::min_duration(int a) const {
  int best = std::numeric_limits<int>::max();
  for (const Mode& m : activities[a].modes) best = std::min(best, m.duration);
  return best;
}

namespace {

struct Token {
  std::string text;
  int line = 0;
  int col = 0;
};

class TokenStream {
 public:
  explicit TokenStream(std::istream& in) {
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos)
        line.resize(hash);
      size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        size_t begin = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > begin)
          tokens_.push_back({line.substr(begin, i - begin),
                             line_no, static_cast<int>(begin) + 1});
      }
      last_line_ = line_no;
    }
  }

  bool done() const { return pos_ >= tokens_.size(); }

  const Token& next(const char* expected_what) {
    if (done())
      throw ParseError(std::string("syntax error: unexpected end of input, expected ") +
                           expected_what,
                       last_line_ + 1, 1);
    return tokens_[pos_++];
  }

  void expect_keyword(const char* keyword) {
    const Token& t = next(keyword);
    if (t.text != keyword)
      throw ParseError("syntax error: expected '" + std::string(keyword) +
                           "', got '" + t.text + "'",
                       t.line, t.col);
  }

  // Any integer token; the caller validates the sign.
  long long expect_int(const char* what, int* line = nullptr, int* col = nullptr) {
    const Token& t = next(what);
    long long value = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size())
      throw ParseError("syntax error: expected integer for " + std::string(what) +
                           ", got '" + t.text + "'",
                       t.line, t.col);
    if (line) *line = t.line;
    if (col) *col = t.col;
    return value;
  }

  // Integer that must be >= 0 (counts, capacities, demands, durations).
  int expect_nonneg(const char* what) {
    int line = 0, col = 0;
    long long v = expect_int(what, &line, &col);
    if (v < 0)
      throw ParseError("semantic error: negative number for " + std::string(what),
                       line, col);
    if (v > std::numeric_limits<int>::max())
      throw ParseError("semantic error: value too large for " + std::string(what),
                       line, col);
    return static_cast<int>(v);
  }

  int current_line() const {
    return pos_ < tokens_.size() ? tokens_[pos_].line : last_line_;
  }

 private:
  std::vector<Token> tokens_;
  size_t pos_ = 0;
  int last_line_ = 0;
};

void check_acyclic(const ProjectSpec& project) {
  const int a_count = static_cast<int>(project.activities.size());
  std::vector<int> indegree(a_count, 0);
  for (const ActivitySpec& act : project.activities)
    for (int s : act.successors) ++indegree[s];
  std::vector<int> queue;
  for (int a = 0; a < a_count; ++a)
    if (indegree[a] == 0) queue.push_back(a);
  int visited = 0;
  while (!queue.empty()) {
    int a = queue.back();
    queue.pop_back();
    ++visited;
    for (int s : project.activities[a].successors)
      if (--indegree[s] == 0) queue.push_back(s);
  }
  if (visited != a_count)
    throw ParseError("semantic error: cycle detected in project " +
                         std::to_string(project.id + 1),
                     1, 1);
}

}  // namespace

ProblemSet parse_problem(std::istream& in) {
  TokenStream ts(in);
  ProblemSet ps;

  ts.expect_keyword("global_renewable");
  int global_count = ts.expect_nonneg("global renewable count");
  ps.global_renewable_caps.reserve(global_count);
  for (int r = 0; r < global_count; ++r)
    ps.global_renewable_caps.push_back(ts.expect_nonneg("global renewable capacity"));

  ts.expect_keyword("projects");
  int project_count = ts.expect_nonneg("project count");
  ps.projects.reserve(project_count);

  for (int p = 0; p < project_count; ++p) {
    ts.expect_keyword("project");
    int declared = ts.expect_nonneg("project index");
    if (declared != p + 1)
      throw ParseError("semantic error: expected project " + std::to_string(p + 1) +
                           ", got " + std::to_string(declared),
                       ts.current_line(), 1);
    ProjectSpec project;
    project.id = p;
    ts.expect_keyword("release");
    project.release = ts.expect_nonneg("release date");
    ts.expect_keyword("renewable_local");
    int local_renew = ts.expect_nonneg("local renewable count");
    for (int r = 0; r < local_renew; ++r)
      project.local_renewable_caps.push_back(ts.expect_nonneg("local renewable capacity"));
    ts.expect_keyword("nonrenewable_local");
    int nonrenew = ts.expect_nonneg("non-renewable count");
    for (int r = 0; r < nonrenew; ++r)
      project.local_nonrenewable_caps.push_back(ts.expect_nonneg("non-renewable capacity"));
    ts.expect_keyword("activities");
    int activity_count = ts.expect_nonneg("activity count");

    for (int a = 0; a < activity_count; ++a) {
      ts.expect_keyword("activity");
      int a_declared = ts.expect_nonneg("activity index");
      if (a_declared != a + 1)
        throw ParseError("semantic error: expected activity " + std::to_string(a + 1) +
                             ", got " + std::to_string(a_declared),
                         ts.current_line(), 1);
      ActivitySpec act;
      act.local_id = a;
      ts.expect_keyword("modes");
      int mode_count = ts.expect_nonneg("mode count");
      if (mode_count == 0)
        throw ParseError("semantic error: activity " + std::to_string(a + 1) +
                             " of project " + std::to_string(p + 1) + " has no modes",
                         ts.current_line(), 1);
      ts.expect_keyword("successors");
      int succ_count = ts.expect_nonneg("successor count");
      for (int s = 0; s < succ_count; ++s) {
        int line = 0, col = 0;
        long long succ = ts.expect_int("successor index", &line, &col);
        if (succ == a + 1)
          throw ParseError("semantic error: activity " + std::to_string(a + 1) +
                               " lists itself as successor (self-reference)",
                           line, col);
        if (succ < 1 || succ > activity_count)
          throw ParseError("semantic error: dangling successor " + std::to_string(succ) +
                               " in activity " + std::to_string(a + 1) + " of project " +
                               std::to_string(p + 1),
                           line, col);
        int succ0 = static_cast<int>(succ) - 1;
        if (std::find(act.successors.begin(), act.successors.end(), succ0) !=
            act.successors.end())
          throw ParseError("semantic error: duplicate successor " + std::to_string(succ) +
                               " in activity " + std::to_string(a + 1),
                           line, col);
        act.successors.push_back(succ0);
      }

      for (int k = 0; k < mode_count; ++k) {
        ts.expect_keyword("mode");
        ModeSpec mode;
        mode.duration = ts.expect_nonneg("duration");
        ts.expect_keyword("gr");
        for (int r = 0; r < global_count; ++r)
          mode.global_renewable.push_back(ts.expect_nonneg("global renewable demand"));
        ts.expect_keyword("lr");
        for (int r = 0; r < local_renew; ++r)
          mode.local_renewable.push_back(ts.expect_nonneg("local renewable demand"));
        ts.expect_keyword("nr");
        for (int r = 0; r < nonrenew; ++r)
          mode.nonrenewable.push_back(ts.expect_nonneg("non-renewable demand"));
        act.modes.push_back(std::move(mode));
      }
      project.activities.push_back(std::move(act));
    }
    ps.projects.push_back(std::move(project));
  }

  if (!ts.done()) {
    const Token& t = ts.next("end of input");
    throw ParseError("syntax error: trailing input '" + t.text + "'", t.line, t.col);
  }

  // Semantic checks that need the whole project in hand.
  for (const ProjectSpec& project : ps.projects) {
    check_acyclic(project);
    for (const ActivitySpec& act : project.activities) {
      for (const ModeSpec& mode : act.modes) {
        for (size_t r = 0; r < mode.global_renewable.size(); ++r)
          if (mode.global_renewable[r] > ps.global_renewable_caps[r])
            throw ParseError("semantic error: renewable demand exceeds capacity of global resource " +
                                 std::to_string(r + 1) + " in project " +
                                 std::to_string(project.id + 1),
                             1, 1);
        for (size_t r = 0; r < mode.local_renewable.size(); ++r)
          if (mode.local_renewable[r] > project.local_renewable_caps[r])
            throw ParseError("semantic error: renewable demand exceeds capacity of local resource " +
                                 std::to_string(r + 1) + " in project " +
                                 std::to_string(project.id + 1),
                             1, 1);
      }
    }
  }
  return ps;
}

ProblemSet parse_problem(const std::string& text) {
  std::istringstream in(text);
  return parse_problem(in);
}

namespace {

int project_critical_path(const ProjectSpec& project) {
  const int a_count = static_cast<int>(project.activities.size());
  std::vector<std::vector<int>> preds(a_count);
  std::vector<int> indegree(a_count, 0);
  for (int a = 0; a < a_count; ++a)
    for (int s : project.activities[a].successors) {
      preds[s].push_back(a);
      ++indegree[s];
    }
  std::vector<int> order;
  order.reserve(a_count);
  for (int a = 0; a < a_count; ++a)
    if (indegree[a] == 0) order.push_back(a);
  for (size_t i = 0; i < order.size(); ++i)
    for (int s : project.activities[order[i]].successors)
      if (--indegree[s] == 0) order.push_back(s);

  std::vector<int> earliest_finish(a_count, 0);
  int bound = 0;
  for (int a : order) {
    int min_duration = std::numeric_limits<int>::max();
    for (const ModeSpec& m : project.activities[a].modes)
      min_duration = std::min(min_duration, m.duration);
    int start = 0;
    for (int p : preds[a]) start = std::max(start, earliest_finish[p]);
    earliest_finish[a] = start + min_duration;
    bound = std::max(bound, earliest_finish[a]);
  }
  return bound;
}

}  // namespace

Instance flatten(const ProblemSet& problem) {
  Instance inst;
  const int project_count = static_cast<int>(problem.projects.size());

  int real_count = 0;
  std::vector<int> base(project_count);
  for (int p = 0; p < project_count; ++p) {
    base[p] = 1 + real_count;
    real_count += static_cast<int>(problem.projects[p].activities.size());
  }
  inst.real_count = real_count;
  inst.n = real_count + 2;
  inst.activities.resize(inst.n);

  inst.global_renewable_count = static_cast<int>(problem.global_renewable_caps.size());
  inst.renewable_caps = problem.global_renewable_caps;
  inst.project_renewable_offset.resize(project_count + 1);
  inst.project_nonrenewable_offset.resize(project_count + 1);
  for (int p = 0; p < project_count; ++p) {
    const ProjectSpec& project = problem.projects[p];
    inst.project_renewable_offset[p] = static_cast<int>(inst.renewable_caps.size());
    inst.renewable_caps.insert(inst.renewable_caps.end(),
                               project.local_renewable_caps.begin(),
                               project.local_renewable_caps.end());
    inst.project_nonrenewable_offset[p] = static_cast<int>(inst.nonrenewable_caps.size());
    inst.nonrenewable_caps.insert(inst.nonrenewable_caps.end(),
                                  project.local_nonrenewable_caps.begin(),
                                  project.local_nonrenewable_caps.end());
    inst.project_release.push_back(project.release);
    inst.project_cpd.push_back(project_critical_path(project));
  }
  inst.project_renewable_offset[project_count] = static_cast<int>(inst.renewable_caps.size());
  inst.project_nonrenewable_offset[project_count] =
      static_cast<int>(inst.nonrenewable_caps.size());

  const int source = 0;
  const int sink = inst.n - 1;
  Mode dummy_mode;  // duration 0, no demands
  inst.activities[source].modes = {dummy_mode};
  inst.activities[sink].modes = {dummy_mode};

  for (int p = 0; p < project_count; ++p) {
    const ProjectSpec& project = problem.projects[p];
    const int renew_offset = inst.project_renewable_offset[p];
    const int nonrenew_offset = inst.project_nonrenewable_offset[p];
    for (size_t a = 0; a < project.activities.size(); ++a) {
      const ActivitySpec& spec = project.activities[a];
      Activity& act = inst.activities[base[p] + static_cast<int>(a)];
      act.project = p;
      for (const ModeSpec& ms : spec.modes) {
        Mode mode;
        mode.duration = ms.duration;
        for (size_t r = 0; r < ms.global_renewable.size(); ++r)
          if (ms.global_renewable[r] > 0)
            mode.renewable.emplace_back(static_cast<int>(r), ms.global_renewable[r]);
        for (size_t r = 0; r < ms.local_renewable.size(); ++r)
          if (ms.local_renewable[r] > 0)
            mode.renewable.emplace_back(renew_offset + static_cast<int>(r),
                                        ms.local_renewable[r]);
        for (size_t r = 0; r < ms.nonrenewable.size(); ++r)
          if (ms.nonrenewable[r] > 0)
            mode.nonrenewable.emplace_back(nonrenew_offset + static_cast<int>(r),
                                           ms.nonrenewable[r]);
        act.modes.push_back(std::move(mode));
      }
      for (int s : spec.successors) {
        int global_succ = base[p] + s;
        act.successors.push_back(global_succ);
        inst.activities[global_succ].predecessors.push_back(base[p] + static_cast<int>(a));
      }
    }
  }

  // Dummy endpoints: source feeds every activity without predecessors, every
  // activity without successors feeds the sink.
  for (int a = 1; a < sink; ++a) {
    if (inst.activities[a].predecessors.empty()) {
      inst.activities[a].predecessors.push_back(source);
      inst.activities[source].successors.push_back(a);
    }
    if (inst.activities[a].successors.empty()) {
      inst.activities[a].successors.push_back(sink);
      inst.activities[sink].predecessors.push_back(a);
    }
  }
  if (real_count == 0) {
    inst.activities[source].successors.push_back(sink);
    inst.activities[sink].predecessors.push_back(source);
  }

  for (Activity& act : inst.activities) {
    std::sort(act.predecessors.begin(), act.predecessors.end());
    std::sort(act.successors.begin(), act.successors.end());
  }
  return inst;
}

int critical_path_bound(const Instance& instance, int project) {
  return instance.project_cpd[project];
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  return flatten(parse_problem(in));
}

}  // namespace rcmp
