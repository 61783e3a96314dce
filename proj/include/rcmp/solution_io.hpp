// Solution files and their independent validation.
//
// Format: a header comment, then one line per real activity in ascending
// global index (1-based ids, 1-based mode indices):
//
//   # tpd=<v> tms=<v> f=<v> seed=<v>
//   <global_id> <mode_index> <start_time>
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rcmp/evaluation.hpp"
#include "rcmp/instance.hpp"

namespace rcmp {

void write_solution(const Instance& instance, const Genotype& genotype,
                    const Schedule& schedule, const EvaluationConfig& config,
                    std::uint64_t seed, std::ostream& out);
void write_solution_file(const Instance& instance, const Genotype& genotype,
                         const Schedule& schedule, const EvaluationConfig& config,
                         std::uint64_t seed, const std::string& path);

struct SolutionValidation {
  bool ok = false;
  Evaluation eval;  // recomputed from scratch, meaningful when ok
  std::vector<Violation> violations;
};

// Recomputes every schedule constraint and the evaluation from the file
// alone. Structural problems (unknown ids, duplicate ids, mode out of range)
// are reported as violations; unreadable files throw ParseError.
SolutionValidation validate_solution(const Instance& instance, std::istream& in,
                                     const EvaluationConfig& config = {});
SolutionValidation validate_solution_file(const Instance& instance,
                                          const std::string& path,
                                          const EvaluationConfig& config = {});

}  // namespace rcmp
