#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mrta {

/// Dense, 1-based identifier. The tag keeps task, station and robot ids apart.
template <class Tag>
class Id {
 public:
  using value_type = std::uint32_t;

  constexpr Id() = default;
  constexpr explicit Id(value_type value) : value_(value) {}

  constexpr value_type value() const { return value_; }
  /// Position in the owning instance vector.
  constexpr std::size_t index() const { return value_ - 1; }

  static constexpr Id from_index(std::size_t index) {
    return Id(static_cast<value_type>(index + 1));
  }

  friend constexpr auto operator<=>(Id, Id) = default;

 private:
  value_type value_ = 0;
};

using TaskId = Id<struct TaskTag>;
using StationId = Id<struct StationTag>;
using RobotId = Id<struct RobotTag>;

/// Payload mass in kilograms.
using Load = std::int64_t;
/// Travel time; the canonical cost unit.
using Seconds = double;

/// Relative tolerance used for every cost-equality comparison.
inline constexpr double kRelTol = 1e-9;

/// |a-b| <= tol * max(|a|, |b|). Infinite values compare equal only to themselves.
bool nearly_equal(double a, double b, double rel_tol = kRelTol);

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

/// Grid distance in meters.
constexpr std::int64_t manhattan(Point a, Point b) {
  const std::int64_t dx = a.x > b.x ? a.x - b.x : b.x - a.x;
  const std::int64_t dy = a.y > b.y ? a.y - b.y : b.y - a.y;
  return dx + dy;
}

struct PickingTask {
  TaskId id;
  Point pos;
  Load demand = 1;

  friend bool operator==(const PickingTask&, const PickingTask&) = default;
};

struct DeliveryStation {
  StationId id;
  Point pos;

  friend bool operator==(const DeliveryStation&, const DeliveryStation&) = default;
};

struct Robot {
  RobotId id;
  Point start;
  Load max_capacity = 1;
  double speed = 1.0;  // m/s
  std::string model_name;

  friend bool operator==(const Robot&, const Robot&) = default;
};

/// Dataset families: single depot vs. many stations, homogeneous vs.
/// heterogeneous fleet.
enum class Family { XMT, RMT, WMT, SMT };

std::string_view to_string(Family family);
std::optional<Family> parse_family(std::string_view text);
/// Single delivery station with every robot parked on it.
constexpr bool is_single_depot(Family f) { return f == Family::XMT || f == Family::RMT; }
/// All robots share capacity and speed.
constexpr bool is_homogeneous(Family f) { return f == Family::XMT || f == Family::WMT; }

/// Immutable problem description. Entities are stored in id order, so
/// `tasks[i].id == TaskId::from_index(i)` for a valid instance.
struct Instance {
  std::string name;
  Family family = Family::SMT;
  std::vector<PickingTask> tasks;
  std::vector<DeliveryStation> stations;
  std::vector<Robot> robots;

  const PickingTask& task(TaskId id) const { return tasks[id.index()]; }
  const DeliveryStation& station(StationId id) const { return stations[id.index()]; }
  const Robot& robot(RobotId id) const { return robots[id.index()]; }

  Load max_demand() const;
  Load max_capacity() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

enum class StepKind { Pick, Deliver };

struct RouteStep {
  StepKind kind = StepKind::Pick;
  std::uint32_t ref = 0;

  static constexpr RouteStep pick(TaskId t) { return {StepKind::Pick, t.value()}; }
  static constexpr RouteStep deliver(StationId s) { return {StepKind::Deliver, s.value()}; }

  constexpr bool is_pick() const { return kind == StepKind::Pick; }
  constexpr TaskId task() const { return TaskId(ref); }
  constexpr StationId station() const { return StationId(ref); }

  friend constexpr auto operator<=>(const RouteStep&, const RouteStep&) = default;
};

using Route = std::vector<RouteStep>;

/// Per-robot routes plus the aggregate metrics. `routes[i]` belongs to
/// `instance.robots[i]`; unused robots keep an empty route.
struct Solution {
  std::vector<Route> routes;
  Seconds total_cost = 0.0;
  std::int64_t depot_visits = 0;
  std::int64_t used_robots = 0;
  Seconds wall_time = 0.0;
  std::string algorithm;
  std::uint64_t seed = 0;

  friend bool operator==(const Solution&, const Solution&) = default;
};

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string message) { violations.push_back(std::move(message)); }
  /// True when some violation contains `needle`.
  bool mentions(std::string_view needle) const;
};

Point position_of(const Instance& inst, RouteStep step);

ValidationReport validate_instance(const Instance& inst);

/// Checks coverage, capacity trajectories, terminal deliveries, counters and
/// recomputes the total cost from route legs.
ValidationReport validate_solution(const Instance& inst, const Solution& sol);

/// Sum of leg travel times robot.start -> step1 -> step2 -> ...
Seconds route_cost(const Instance& inst, const Robot& robot, std::span<const RouteStep> route);

/// Fills total_cost, depot_visits and used_robots from the routes.
void recompute_metrics(const Instance& inst, Solution& sol);

}  // namespace mrta

template <class Tag>
struct std::hash<mrta::Id<Tag>> {
  std::size_t operator()(mrta::Id<Tag> id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value());
  }
};
