#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mrta/cost.hpp"
#include "mrta/model.hpp"

namespace mrta {

/// Robot cells of the cost-weighted tessellation.
///
/// `phi[i]` holds the tasks robot i+1 reaches at minimal estimated cost
/// among all robots (its domain), `psi[j]` the robots achieving that minimum
/// for task j+1 (its dominants). Both lists are kept in ascending id order;
/// `psi` entries of tasks that are no longer remaining stay empty. `valid`
/// flags whether a robot's domain still reflects its position and capacity.
struct DomainMap {
  std::vector<std::vector<TaskId>> phi;
  std::vector<std::vector<RobotId>> psi;
  std::vector<bool> valid;

  std::span<const TaskId> domain_of(RobotId r) const { return phi[r.index()]; }
  std::span<const RobotId> dominants_of(TaskId t) const { return psi[t.index()]; }
  bool is_valid(RobotId r) const { return valid[r.index()]; }
  void invalidate(RobotId r) { valid[r.index()] = false; }

  /// Invalidates every robot that dominated a task that was just taken.
  void set_as_not_valid(std::span<const RobotId> dominants) {
    for (RobotId r : dominants) invalidate(r);
  }

  friend bool operator==(const DomainMap&, const DomainMap&) = default;
};

/// For every remaining task, collects the robots whose estimated cost is
/// minimal (ties within `tie_tolerance`, relative). Throws
/// InfeasibleTaskError if some remaining task has no finite-cost robot.
DomainMap compute_domain(std::span<const RobotState> states, const CostContext& ctx,
                         double tie_tolerance = kRelTol);

/// compute_domain with memory: edge costs of robots whose position and
/// capacity are unchanged since the previous call are reused, and a task's
/// dominants are rescanned only when its minimum cost may have moved. Costs
/// whose travel-time lower bound already exceeds the tie band stay unevaluated
/// until a rescan needs them.
/// Results are identical to compute_domain. Bind one cache to one CostContext.
class DomainCache {
 public:
  /// The returned map is owned by the cache and overwritten by the next call.
  DomainMap& compute(std::span<const RobotState> states, const CostContext& ctx,
                     double tie_tolerance = kRelTol);

 private:
  std::vector<Seconds> costs_;  // robot-major: costs_[robot * tasks + task]
  std::vector<char> bound_;     // same layout: costs_ holds only a lower bound
  std::vector<char> member_;    // same layout: robot is among the task's dominants
  std::vector<Seconds> best_;   // per task: exact minimum over robots
  std::vector<Seconds> band_;   // per task: costs above this cannot tie best_
  std::vector<char> live_;      // per task: psi holds current dominants
  std::vector<char> rescan_;    // per task: minimum must be recomputed
  std::vector<Point> pos_;
  std::vector<Load> gamma_;
  const CostContext* ctx_ = nullptr;
  std::uint64_t epoch_ = 0;
  double tolerance_ = 0.0;
  DomainMap map_;
};

/// Cheapest remaining task of `phi_r` from the robot's position; ties go to
/// the lowest task id. Tasks no longer in `ctx` are skipped.
/// Precondition: at least one task of `phi_r` is remaining.
TaskId min_cost_task(std::span<const TaskId> phi_r, const RobotState& state, const CostContext& ctx);

}  // namespace mrta
