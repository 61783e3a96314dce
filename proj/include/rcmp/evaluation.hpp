// Genotype decoding and objective evaluation. A genotype is decoded into an
// active schedule by a serial scheduling scheme: activities are placed one at
// a time, each at the earliest start where its renewable demands fit, with
// scheduling conflicts resolved by the order of the sequence vector.
#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "rcmp/instance.hpp"

namespace rcmp {

// A solution encoding: one mode index per activity (0-based) plus a
// permutation of all activity indices giving placement priority.
struct Genotype {
  std::vector<int> modes;
  std::vector<int> order;

  bool operator==(const Genotype&) const = default;
};

struct EvaluationConfig {
  std::int64_t alpha = 100000;  // weight of total project delay in f
};

struct Evaluation {
  std::int64_t tpd = 0;  // total project delay
  std::int64_t tms = 0;  // total makespan
  std::int64_t f = 0;    // alpha * tpd + tms

  bool operator==(const Evaluation&) const = default;
};

inline std::int64_t combined_value(std::int64_t tpd, std::int64_t tms,
                                   std::int64_t alpha) {
  return alpha * tpd + tms;
}

// Total project delay over total makespan.
inline std::strong_ordering lex_compare(const Evaluation& a, const Evaluation& b) {
  if (auto c = a.tpd <=> b.tpd; c != 0) return c;
  return a.tms <=> b.tms;
}

struct Schedule {
  std::vector<int> start;
  std::vector<int> finish;
  // usage[flat renewable resource][t], sized to the schedule makespan
  std::vector<std::vector<int>> renewable_usage;
};

// Reusable per-worker buffers for decoding. Start/finish times of the most
// recent decode stay readable, which the debug revalidation path uses. The
// usage timetable is one flat buffer of `stride` time units per resource,
// sized per decode to a bound the serial placement cannot exceed.
class DecodeScratch {
 public:
  const std::vector<int>& start() const { return start_; }
  const std::vector<int>& finish() const { return finish_; }

 private:
  friend Schedule decode(const Instance&, const Genotype&, DecodeScratch&);
  friend Evaluation decode_evaluate(const Instance&, const Genotype&,
                                    DecodeScratch&, const EvaluationConfig&);
  friend void decode_times(const Instance&, const Genotype&, DecodeScratch&);

  std::vector<int> start_;
  std::vector<int> finish_;
  std::vector<int> pending_preds_;
  std::vector<char> placed_;
  std::vector<int> usage_;
  int stride_ = 0;
  int resources_ = -1;
  int dirty_ = 0;  // timetable span written by the previous decode
  std::vector<std::int64_t> project_finish_;
};

Schedule decode(const Instance& instance, const Genotype& genotype);
Schedule decode(const Instance& instance, const Genotype& genotype,
                DecodeScratch& scratch);

Evaluation evaluate(const Instance& instance, const Schedule& schedule,
                    const EvaluationConfig& config);

// Fused decode + evaluate without materializing a Schedule; the search inner
// loop lives on this.
Evaluation decode_evaluate(const Instance& instance, const Genotype& genotype,
                           DecodeScratch& scratch, const EvaluationConfig& config);

// Evaluation from explicit start times (no decoding involved).
Evaluation evaluate_start_times(const Instance& instance,
                                const std::vector<int>& modes,
                                const std::vector<int>& start,
                                const EvaluationConfig& config);

struct Violation {
  enum class Kind {
    kStructure,
    kRelease,
    kPrecedence,
    kRenewableCapacity,
    kNonrenewableCapacity,
  };
  Kind kind;
  int activity = -1;  // global index, -1 when not activity specific
  int resource = -1;  // flat resource id, -1 when not resource specific
  int time = -1;      // time unit, -1 when not time specific
  std::string detail;
};

const char* violation_kind_name(Violation::Kind kind);

// Recomputes every schedule constraint from scratch: mode validity, releases,
// precedence, renewable capacities per time unit, non-renewable capacities.
std::vector<Violation> check_schedule(const Instance& instance,
                                      const std::vector<int>& modes,
                                      const std::vector<int>& start);

}  // namespace rcmp
