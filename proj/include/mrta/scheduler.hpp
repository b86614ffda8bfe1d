#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mrta/cost.hpp"
#include "mrta/domain.hpp"
#include "mrta/model.hpp"

namespace mrta {

struct SchedulerConfig {
  double tie_tolerance = kRelTol;
  /// Progress guard on domain recomputations; 0 selects 10 * |T|.
  std::size_t max_outer_iterations = 0;
};

/// Observability counters for one solve.
struct SchedulerStats {
  std::size_t domain_computations = 0;
  std::size_t pick_assignments = 0;
  std::size_t delivery_assignments = 0;
};

struct ArrivalSlot {
  RobotId robot;
  Seconds time = 0.0;          // simulated time until the robot reaches its last assignment
  std::size_t dominated = 0;   // |phi[robot]| when the queue was last prepared

  friend bool operator==(const ArrivalSlot&, const ArrivalSlot&) = default;
};

/// Arrival queue: one slot per robot, ascending by time, then by descending
/// domain size, then by robot id.
struct ArrivalQueue {
  std::vector<ArrivalSlot> slots;

  bool initialized() const { return !slots.empty(); }
  ArrivalSlot* find(RobotId r);
  const ArrivalSlot* find(RobotId r) const;
  void sort();

  friend bool operator==(const ArrivalQueue&, const ArrivalQueue&) = default;
};

/// First call (empty queue) creates a zero-time slot per robot; later calls
/// keep the stored times. Domain sizes are refreshed from `dom` and the
/// queue is re-sorted.
ArrivalQueue prepare_aq(ArrivalQueue queue, std::span<const RobotState> states, const DomainMap& dom);

/// Advances the simulated clock by the head's stored time. Other slots are
/// reduced by that time, floored at zero; a slot that hits zero while the
/// clock moves has its domain invalidated. The head's domain is always
/// invalidated.
void decrease_arrival_time(RobotId head, ArrivalQueue& queue, DomainMap& dom,
                           double tie_tolerance = kRelTol);

/// Stores the travel time of the robot's new assignment and re-sorts.
void set_arrival_time(RobotId robot, Seconds time, ArrivalQueue& queue);

/// Nearest delivery station (ties: lowest id).
const DeliveryStation& best_depot(Point pos, std::span<const DeliveryStation> stations);

struct LastDepots {
  Seconds added_cost = 0.0;
  std::int64_t added_visits = 0;
};

/// Closes every non-empty route that does not already end at a station with
/// a visit to the station nearest its final position.
LastDepots add_last_depots(const Instance& inst, std::span<RobotState> states);

/// DoNe-CPTA. Precondition: validate_instance(inst) is empty. Throws
/// InfeasibleTaskError for tasks no robot can carry.
Solution solve(const Instance& inst, const SchedulerConfig& cfg = {}, SchedulerStats* stats = nullptr);

}  // namespace mrta
