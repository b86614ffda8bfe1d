#include "mrta/baseline.hpp"

#include <algorithm>
#include <chrono>
#include <optional>

#include "mrta/error.hpp"

namespace mrta {

FeasibleCluster build_feasible_cluster(const RobotState& state, const CostContext& remaining) {
  const Instance& inst = remaining.instance();
  FeasibleCluster cluster{state.robot.id, {}, 0};
  std::vector<char> taken(inst.tasks.size(), 0);
  Load residual = state.gamma;
  Point at = state.pos;

  for (;;) {
    std::optional<TaskId> nearest;
    std::int64_t nearest_d = 0;
    for (TaskId t : remaining.remaining()) {
      const PickingTask& task = inst.task(t);
      if (taken[t.index()] || task.demand > residual) continue;
      const std::int64_t d = manhattan(at, task.pos);
      if (!nearest || d < nearest_d) {
        nearest = t;
        nearest_d = d;
      }
    }
    if (!nearest) break;
    const PickingTask& task = inst.task(*nearest);
    taken[nearest->index()] = 1;
    cluster.picks.push_back(*nearest);
    cluster.total_demand += task.demand;
    residual -= task.demand;
    at = task.pos;
  }
  return cluster;
}

Seconds open_route_cost(const Instance& inst, const RobotState& state, std::span<const TaskId> picks) {
  if (picks.empty()) return 0.0;
  std::int64_t meters = 0;
  Point at = state.pos;
  for (TaskId t : picks) {
    const Point next = inst.task(t).pos;
    meters += manhattan(at, next);
    at = next;
  }
  meters += manhattan(at, nearest_station(at, inst.stations).pos);
  return static_cast<double>(meters) / state.robot.speed;
}

namespace {

// Open path start -> p[0] -> ... -> p[k-1] -> nearest station of p[k-1].
// Works in integer meters; speed is a common factor.
class OpenPath {
 public:
  OpenPath(const Instance& inst, Point start, std::span<const TaskId> picks) : start_(start) {
    pts_.reserve(picks.size());
    tail_.reserve(picks.size());
    for (TaskId t : picks) {
      const Point p = inst.task(t).pos;
      pts_.push_back(p);
      tail_.push_back(manhattan(p, nearest_station(p, inst.stations).pos));
    }
  }

  // 2-opt over node indices; `order` is a permutation of 0..k-1.
  void two_opt(std::vector<std::size_t>& order) const {
    const std::size_t k = order.size();
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t i = 0; i + 1 < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
          // Reverse order[i..j]; only the two boundary legs change.
          const Point before = i == 0 ? start_ : pts_[order[i - 1]];
          const std::size_t a = order[i];
          const std::size_t b = order[j];
          std::int64_t old_cost = manhattan(before, pts_[a]);
          std::int64_t new_cost = manhattan(before, pts_[b]);
          if (j + 1 < k) {
            const Point after = pts_[order[j + 1]];
            old_cost += manhattan(pts_[b], after);
            new_cost += manhattan(pts_[a], after);
          } else {
            old_cost += tail_[b];
            new_cost += tail_[a];
          }
          if (new_cost < old_cost) {
            std::reverse(order.begin() + static_cast<std::ptrdiff_t>(i),
                         order.begin() + static_cast<std::ptrdiff_t>(j) + 1);
            improved = true;
          }
        }
      }
    }
  }

 private:
  Point start_;
  std::vector<Point> pts_;
  std::vector<std::int64_t> tail_;
};

}  // namespace

std::vector<TaskId> improve_route(const Instance& inst, const FeasibleCluster& cluster,
                                  const RobotState& state, RouteImprover improver) {
  if (improver == RouteImprover::NearestNeighbour || cluster.picks.size() < 2) return cluster.picks;

  std::vector<std::size_t> order(cluster.picks.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  OpenPath(inst, state.pos, cluster.picks).two_opt(order);

  std::vector<TaskId> out;
  out.reserve(order.size());
  for (std::size_t i : order) out.push_back(cluster.picks[i]);
  return out;
}

Solution solve_ancar(const Instance& inst, const AncarConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  const Load fleet_cap = inst.max_capacity();
  for (const auto& t : inst.tasks) {
    if (t.demand > fleet_cap) throw InfeasibleTaskError(t.id.value());
  }

  std::vector<RobotState> states = initial_states(inst);
  CostContext remaining = CostContext::all_tasks(inst);

  while (!remaining.empty()) {
    std::optional<std::size_t> best_robot;
    std::vector<TaskId> best_picks;
    Seconds best_cost = kInfeasible;

    for (std::size_t i = 0; i < states.size(); ++i) {
      const FeasibleCluster cluster = build_feasible_cluster(states[i], remaining);
      if (cluster.picks.empty()) continue;
      std::vector<TaskId> picks = improve_route(inst, cluster, states[i], cfg.improver);
      const Seconds cost = open_route_cost(inst, states[i], picks);
      if (!best_robot || cost < best_cost) {
        best_robot = i;
        best_cost = cost;
        best_picks = std::move(picks);
      }
    }
    if (!best_robot) throw InfeasibleTaskError(remaining.remaining().front().value());

    RobotState& state = states[*best_robot];
    for (TaskId t : best_picks) {
      state.route.push_back(RouteStep::pick(t));
      state.pos = inst.task(t).pos;
      remaining.remove(t);
    }
    const DeliveryStation& station = nearest_station(state.pos, inst.stations);
    state.route.push_back(RouteStep::deliver(station.id));
    state.pos = station.pos;
    state.gamma = state.robot.max_capacity;
  }

  Solution sol;
  sol.routes.reserve(states.size());
  for (auto& s : states) sol.routes.push_back(std::move(s.route));
  recompute_metrics(inst, sol);
  sol.algorithm = "a-ncar";
  sol.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return sol;
}

}  // namespace mrta
