// Mode-vector construction and repair. A mode vector is feasible when no
// non-renewable resource is used beyond its capacity; the repair walk flips
// one random mode per attempt and never lets the total excess grow.
#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "rcmp/evaluation.hpp"
#include "rcmp/instance.hpp"
#include "rcmp/rng.hpp"

namespace rcmp {

struct ExcessReport {
  std::int64_t total_excess = 0;
  std::vector<std::int64_t> per_resource;  // flat non-renewable ids

  bool feasible() const { return total_excess == 0; }
};

struct RepairOptions {
  // Consecutive attempts without a strict excess decrease before the vector
  // is rebuilt from scratch. 0 selects the default of 50 * n.
  int max_attempts = 0;
  // Rebuilds allowed before giving up on the instance.
  int max_restarts = 1000;
};

class RepairExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Observer for repair progress, used by tests and diagnostics.
struct RepairObserver {
  std::function<void(std::int64_t excess_after_step)> on_accept;
  std::function<void()> on_restart;
};

// One uniformly drawn mode per activity; dummies keep their single mode.
std::vector<int> random_modes(const Instance& instance, Rng& rng);

ExcessReport nonrenewable_excess(const Instance& instance,
                                 const std::vector<int>& modes);

// Returns a mode vector with zero excess. Throws RepairExhausted when the
// restart budget runs out, which signals a possibly infeasible instance.
std::vector<int> repair_modes(const Instance& instance, std::vector<int> modes,
                              Rng& rng, const RepairOptions& options = {},
                              const RepairObserver* observer = nullptr);

}  // namespace rcmp
