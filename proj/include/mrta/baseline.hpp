#pragma once

#include <span>
#include <vector>

#include "mrta/cost.hpp"
#include "mrta/model.hpp"

namespace mrta {

/// Capacity-bounded group of picks built for one robot.
struct FeasibleCluster {
  RobotId robot;
  std::vector<TaskId> picks;
  Load total_demand = 0;
};

enum class RouteImprover {
  NearestNeighbour,  // keep the greedy construction order
  TwoOpt,            // 2-opt to a local optimum
};

struct AncarConfig {
  RouteImprover improver = RouteImprover::TwoOpt;
};

/// Greedy nearest-neighbour growth from the robot's position: repeatedly
/// appends the closest remaining pick whose demand fits the residual
/// capacity (starting from the robot's variable capacity). Ties go to the
/// lowest task id. May return an empty cluster.
FeasibleCluster build_feasible_cluster(const RobotState& state, const CostContext& remaining);

/// Travel time from the robot position through `picks` in order and on to
/// the station nearest the last pick.
Seconds open_route_cost(const Instance& inst, const RobotState& state, std::span<const TaskId> picks);

/// Reorders the cluster to shorten its open route. Never returns an order
/// that costs more than the cluster's own order.
std::vector<TaskId> improve_route(const Instance& inst, const FeasibleCluster& cluster,
                                  const RobotState& state,
                                  RouteImprover improver = RouteImprover::TwoOpt);

/// Adapted nearest-neighbour clustering and routing: every round builds one
/// candidate route per robot and commits the cheapest, closing it at the
/// station nearest its last pick. Throws InfeasibleTaskError for tasks no
/// robot can carry.
Solution solve_ancar(const Instance& inst, const AncarConfig& cfg = {});

}  // namespace mrta
