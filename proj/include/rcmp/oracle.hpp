// Exhaustive reference solvers for tiny instances. These deliberately avoid
// the decoder's machinery wherever possible so they can serve as independent
// ground truth: genotype enumeration walks every feasible (modes, sequence)
// pair, schedule enumeration branches over raw start times.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rcmp/evaluation.hpp"
#include "rcmp/instance.hpp"

namespace rcmp {

struct OracleLimits {
  int max_activities = 7;  // real activities
  std::uint64_t max_total_genotypes = 20'000'000;
  std::uint64_t max_schedule_nodes = 200'000'000;
};

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OracleLimitExceeded : public OracleError {
 public:
  using OracleError::OracleError;
};

class NoFeasibleGenotype : public OracleError {
 public:
  using OracleError::OracleError;
};

class HorizonExhausted : public OracleError {
 public:
  using OracleError::OracleError;
};

struct OracleResult {
  Genotype genotype;
  Evaluation eval;
  std::uint64_t enumerated = 0;
};

// Upper bound on any left-shifted schedule's makespan: sum of maximum mode
// durations plus the largest release date.
int horizon_bound(const Instance& instance);

// Minimum f over all sequence permutations for a fixed mode vector.
Evaluation best_over_permutations(const Instance& instance,
                                  const std::vector<int>& modes,
                                  const EvaluationConfig& config,
                                  const OracleLimits& limits = {});

// Minimum f over every feasible mode vector and every permutation of the
// real activities.
OracleResult enumerate_genotypes(const Instance& instance,
                                 const EvaluationConfig& config,
                                 const OracleLimits& limits = {});

// Minimum f over all start-time assignments satisfying precedence, release
// and renewable constraints, for a fixed mode vector. Exact branch and bound;
// horizon < 0 selects horizon_bound(instance).
Evaluation enumerate_schedules(const Instance& instance, const std::vector<int>& modes,
                               const EvaluationConfig& config, int horizon = -1,
                               const OracleLimits& limits = {});

// Number of activities that could start one time unit earlier with all other
// start times fixed; zero for every decoded schedule.
int left_shift_count(const Instance& instance, const std::vector<int>& modes,
                     const std::vector<int>& start);

}  // namespace rcmp
