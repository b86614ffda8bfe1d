#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "mrta/model.hpp"

namespace mrta {

/// Mutable solver-side view of one robot.
struct RobotState {
  Robot robot;
  Point pos;
  Load gamma = 0;  // variable load capacity left before the next delivery
  bool executing = false;
  Route route;

  static RobotState initial(const Robot& robot) {
    return RobotState{robot, robot.start, robot.max_capacity, false, {}};
  }
};

std::vector<RobotState> initial_states(const Instance& inst);

/// The estimator's "infinite" cost. Compares above every finite cost.
inline constexpr Seconds kInfeasible = std::numeric_limits<Seconds>::infinity();

/// Which branch of the five-case estimator produced a cost.
enum class CostCase {
  Unreachable = 1,         // demand above the robot's maximum capacity
  Direct = 2,              // station, or pick with more picks feasible afterwards
  DirectThenDeliver = 3,   // pick now, but a station visit must follow
  DeliverThenDirect = 4,   // station visit first, more picks feasible afterwards
  DeliverBothSides = 5,    // station before and after
};

struct EdgeCost {
  Seconds seconds = kInfeasible;
  CostCase which = CostCase::Unreachable;

  bool finite() const { return which != CostCase::Unreachable; }
};

/// Unassigned picking tasks plus the cached lookups the estimator needs.
/// Holds a reference to the instance, which must outlive the context.
class CostContext {
 public:
  CostContext(const Instance& inst, std::vector<TaskId> remaining);
  /// Every task of the instance is still unassigned.
  static CostContext all_tasks(const Instance& inst);

  const Instance& instance() const { return *inst_; }
  std::span<const DeliveryStation> stations() const { return inst_->stations; }

  /// Ascending task ids.
  std::span<const TaskId> remaining() const { return remaining_; }
  bool empty() const { return remaining_.empty(); }
  std::size_t size() const { return remaining_.size(); }
  bool contains(TaskId t) const { return t.index() < member_.size() && member_[t.index()] != 0; }
  void remove(TaskId t);

  /// Smallest demand among remaining tasks other than `excluded`.
  std::optional<Load> min_demand_excluding(TaskId excluded) const;

  const DeliveryStation& nearest_station_to_task(TaskId t) const;

  /// Changes whenever min_demand_excluding may answer differently.
  std::uint64_t demand_epoch() const { return demand_epoch_; }

 private:
  void refresh_smallest();

  const Instance* inst_;
  std::vector<TaskId> remaining_;
  std::vector<char> member_;
  std::vector<StationId> nearest_to_task_;
  // Two smallest (demand, id) pairs among remaining tasks; ids of 0 mean absent.
  TaskId smallest_id_[2];
  Load smallest_demand_[2] = {0, 0};
  std::uint64_t demand_epoch_ = 0;
};

/// Station closest to `pos` in Manhattan distance; ties go to the lowest id.
/// Precondition: `stations` is non-empty.
const DeliveryStation& nearest_station(Point pos, std::span<const DeliveryStation> stations);

/// Feasibility of the next task for a robot. Deliveries are always feasible; a
/// pick is feasible when the variable capacity covers it, or when it opens a
/// fresh sequence and the maximum capacity covers it.
bool is_feasible(StepKind kind, Load demand, const RobotState& state, bool first_pick);

/// Estimated cost for the robot in `state`, standing at `from`, to serve
/// `target`. Picks that force a station visit before and/or after them are
/// charged the extra legs; picks above the robot's maximum capacity are
/// infeasible.
EdgeCost edge_cost(Point from, RouteStep target, const RobotState& state, const CostContext& ctx);

/// Same estimate with the station nearest `from` supplied by the caller, for
/// loops that evaluate many targets from one position.
EdgeCost edge_cost(Point from, RouteStep target, const RobotState& state, const CostContext& ctx,
                   const DeliveryStation& near_from);

}  // namespace mrta
