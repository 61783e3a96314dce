#include "rcmp/solution_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace rcmp {

void write_solution(const Instance& instance, const Genotype& genotype,
                    const Schedule& schedule, const EvaluationConfig& config,
                    std::uint64_t seed, std::ostream& out) {
  Evaluation eval = evaluate(instance, schedule, config);
  out << "# tpd=" << eval.tpd << " tms=" << eval.tms << " f=" << eval.f
      << " seed=" << seed << "\n";
  for (int a = 1; a + 1 < instance.n; ++a)
    out << a << ' ' << genotype.modes[a] + 1 << ' ' << schedule.start[a] << "\n";
}

void write_solution_file(const Instance& instance, const Genotype& genotype,
                         const Schedule& schedule, const EvaluationConfig& config,
                         std::uint64_t seed, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open solution file for writing: " + path);
  write_solution(instance, genotype, schedule, config, seed, out);
  if (!out) throw std::runtime_error("failed writing solution file: " + path);
}

SolutionValidation validate_solution(const Instance& instance, std::istream& in,
                                     const EvaluationConfig& config) {
  SolutionValidation result;
  std::vector<int> modes(instance.n, 0);
  std::vector<int> start(instance.n, 0);
  std::vector<char> seen(instance.n, 0);

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    long long id, mode, start_time;
    if (!(fields >> id)) continue;  // blank line
    if (!(fields >> mode >> start_time))
      throw ParseError("syntax error: expected '<id> <mode> <start>'", line_no, 1);
    long long trailing;
    if (fields >> trailing)
      throw ParseError("syntax error: trailing fields on solution line", line_no, 1);

    if (id < 1 || id > instance.real_count) {
      result.violations.push_back({Violation::Kind::kStructure, -1, -1, -1,
                                   "unknown activity id " + std::to_string(id)});
      continue;
    }
    int a = static_cast<int>(id);
    if (seen[a]) {
      result.violations.push_back({Violation::Kind::kStructure, a, -1, -1,
                                   "duplicate entry for activity " + std::to_string(id)});
      continue;
    }
    seen[a] = 1;
    if (mode < 1 || mode > instance.mode_count(a)) {
      result.violations.push_back({Violation::Kind::kStructure, a, -1, -1,
                                   "mode index " + std::to_string(mode) +
                                       " out of range for activity " + std::to_string(id)});
      continue;
    }
    if (start_time < 0) {
      result.violations.push_back({Violation::Kind::kStructure, a, -1, -1,
                                   "negative start time for activity " + std::to_string(id)});
      continue;
    }
    modes[a] = static_cast<int>(mode) - 1;
    start[a] = static_cast<int>(start_time);
  }

  for (int a = 1; a + 1 < instance.n; ++a)
    if (!seen[a])
      result.violations.push_back({Violation::Kind::kStructure, a, -1, -1,
                                   "missing entry for activity " + std::to_string(a)});
  if (!result.violations.empty()) return result;

  // Dummy endpoints are implicit: the source at 0, the sink at the last finish.
  start[instance.source()] = 0;
  int sink_start = 0;
  for (int a = 1; a + 1 < instance.n; ++a)
    sink_start = std::max(sink_start, start[a] + instance.duration(a, modes[a]));
  start[instance.sink()] = sink_start;

  result.violations = check_schedule(instance, modes, start);
  if (result.violations.empty()) {
    result.ok = true;
    result.eval = evaluate_start_times(instance, modes, start, config);
  }
  return result;
}

SolutionValidation validate_solution_file(const Instance& instance,
                                          const std::string& path,
                                          const EvaluationConfig& config) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open solution file: " + path);
  return validate_solution(instance, in, config);
}

}  // namespace rcmp
