#include "mrta/oracle.hpp"

#include <chrono>
#include <limits>

#include "mrta/error.hpp"

namespace mrta {

namespace {

constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max() / 4;

// Optimal multi-trip routes of one robot for every subset of tasks, in meters.
// Locations: 0 is the robot start, 1..p are the stations.
class RobotTable {
 public:
  RobotTable(const Instance& inst, const Robot& robot) : inst_(inst), m_(inst.tasks.size()) {
    locs_.push_back(robot.start);
    for (const auto& s : inst.stations) locs_.push_back(s.pos);
    const std::size_t subsets = std::size_t{1} << m_;
    const std::size_t p = inst.stations.size();

    std::vector<Load> demand(subsets, 0);
    for (std::size_t mask = 1; mask < subsets; ++mask) {
      const std::size_t low = lowest(mask);
      demand[mask] = demand[mask & (mask - 1)] + inst.tasks[low].demand;
    }

    // Shortest path from each location through a subset, ending at a given task.
    path_.assign(locs_.size() * subsets * m_, kUnreachable);
    parent_.assign(path_.size(), -1);
    for (std::size_t loc = 0; loc < locs_.size(); ++loc) {
      for (std::size_t j = 0; j < m_; ++j) {
        path(loc, std::size_t{1} << j, j) = manhattan(locs_[loc], task_pos(j));
      }
      for (std::size_t mask = 1; mask < subsets; ++mask) {
        for (std::size_t j = 0; j < m_; ++j) {
          const std::int64_t here = path(loc, mask, j);
          if (!(mask >> j & 1) || here >= kUnreachable) continue;
          for (std::size_t k = 0; k < m_; ++k) {
            if (mask >> k & 1) continue;
            const std::size_t next = mask | (std::size_t{1} << k);
            const std::int64_t cand = here + manhattan(task_pos(j), task_pos(k));
            if (cand < path(loc, next, k)) {
              path(loc, next, k) = cand;
              parent_[index(loc, next, k)] = static_cast<int>(j);
            }
          }
        }
      }
    }

    // One trip: from a location through a capacity-feasible subset to a station.
    trip_.assign(locs_.size() * subsets * p, kUnreachable);
    trip_last_.assign(trip_.size(), -1);
    for (std::size_t loc = 0; loc < locs_.size(); ++loc) {
      for (std::size_t mask = 1; mask < subsets; ++mask) {
        if (demand[mask] > robot.max_capacity) continue;
        for (std::size_t st = 0; st < p; ++st) {
          for (std::size_t j = 0; j < m_; ++j) {
            if (!(mask >> j & 1)) continue;
            const std::int64_t cand = path(loc, mask, j) + manhattan(task_pos(j), locs_[st + 1]);
            std::size_t at = (loc * subsets + mask) * p + st;
            if (cand < trip_[at]) {
              trip_[at] = cand;
              trip_last_[at] = static_cast<int>(j);
            }
          }
        }
      }
    }

    // Whole route from a location covering a subset: a sequence of trips.
    route_.assign(locs_.size() * subsets, kUnreachable);
    choice_.assign(route_.size(), {0, 0});
    for (std::size_t loc = 0; loc < locs_.size(); ++loc) route_[loc * subsets] = 0;
    for (std::size_t mask = 1; mask < subsets; ++mask) {
      for (std::size_t loc = 0; loc < locs_.size(); ++loc) {
        std::int64_t& best = route_[loc * subsets + mask];
        for (std::size_t sub = mask; sub != 0; sub = (sub - 1) & mask) {
          for (std::size_t st = 0; st < p; ++st) {
            const std::int64_t first = trip_[(loc * subsets + sub) * p + st];
            const std::int64_t rest = route_[(st + 1) * subsets + (mask ^ sub)];
            if (first >= kUnreachable || rest >= kUnreachable) continue;
            if (first + rest < best) {
              best = first + rest;
              choice_[loc * subsets + mask] = {sub, st};
            }
          }
        }
      }
    }
  }

  /// Meters for the robot to serve exactly `mask` from its start.
  std::int64_t meters(std::size_t mask) const { return route_[mask]; }

  Route reconstruct(std::size_t mask) const {
    Route route;
    const std::size_t subsets = std::size_t{1} << m_;
    const std::size_t p = inst_.stations.size();
    std::size_t loc = 0;
    while (mask != 0) {
      const auto [sub, st] = choice_[loc * subsets + mask];
      int j = trip_last_[(loc * subsets + sub) * p + st];
      Route trip;
      std::size_t left = sub;
      while (j >= 0) {
        trip.push_back(RouteStep::pick(inst_.tasks[static_cast<std::size_t>(j)].id));
        const int prev = parent_[index(loc, left, static_cast<std::size_t>(j))];
        left &= ~(std::size_t{1} << j);
        j = prev;
      }
      route.insert(route.end(), trip.rbegin(), trip.rend());
      route.push_back(RouteStep::deliver(inst_.stations[st].id));
      loc = st + 1;
      mask ^= sub;
    }
    return route;
  }

 private:
  static std::size_t lowest(std::size_t mask) {
    std::size_t i = 0;
    while (!(mask >> i & 1)) ++i;
    return i;
  }
  Point task_pos(std::size_t j) const { return inst_.tasks[j].pos; }
  std::size_t index(std::size_t loc, std::size_t mask, std::size_t j) const {
    return ((loc << m_) + mask) * m_ + j;
  }
  std::int64_t& path(std::size_t loc, std::size_t mask, std::size_t j) { return path_[index(loc, mask, j)]; }

  const Instance& inst_;
  std::size_t m_;
  std::vector<Point> locs_;
  std::vector<std::int64_t> path_;
  std::vector<int> parent_;
  std::vector<std::int64_t> trip_;
  std::vector<int> trip_last_;
  std::vector<std::int64_t> route_;
  std::vector<std::pair<std::size_t, std::size_t>> choice_;
};

}  // namespace

Solution brute_force_optimum(const Instance& inst) {
  const auto started = std::chrono::steady_clock::now();
  if (inst.tasks.size() > kOracleMaxTasks || inst.robots.size() > kOracleMaxRobots) {
    throw Error("brute_force_optimum accepts at most " + std::to_string(kOracleMaxTasks) +
                " tasks and " + std::to_string(kOracleMaxRobots) + " robots");
  }
  const std::size_t m = inst.tasks.size();
  const std::size_t n = inst.robots.size();
  const std::size_t subsets = std::size_t{1} << m;
  const std::size_t full = subsets - 1;

  std::vector<RobotTable> tables;
  tables.reserve(n);
  for (const auto& r : inst.robots) tables.emplace_back(inst, r);

  // best[k][mask]: cheapest way for the first k robots to cover mask.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> best(n + 1, std::vector<double>(subsets, inf));
  std::vector<std::vector<std::size_t>> take(n + 1, std::vector<std::size_t>(subsets, 0));
  best[0][0] = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const Robot& robot = inst.robots[k - 1];
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      for (std::size_t sub = mask;; sub = (sub - 1) & mask) {
        const std::int64_t meters = tables[k - 1].meters(sub);
        const double prior = best[k - 1][mask ^ sub];
        if (meters < kUnreachable && prior < inf) {
          const double cand = prior + static_cast<double>(meters) / robot.speed;
          if (cand < best[k][mask]) {
            best[k][mask] = cand;
            take[k][mask] = sub;
          }
        }
        if (sub == 0) break;
      }
    }
  }
  if (!(best[n][full] < inf)) {
    for (const auto& t : inst.tasks) {
      if (t.demand > inst.max_capacity()) throw InfeasibleTaskError(t.id.value());
    }
    throw Error("brute_force_optimum: no feasible solution");
  }

  Solution sol;
  sol.routes.resize(n);
  std::size_t mask = full;
  for (std::size_t k = n; k >= 1; --k) {
    const std::size_t sub = take[k][mask];
    sol.routes[k - 1] = tables[k - 1].reconstruct(sub);
    mask ^= sub;
  }
  recompute_metrics(inst, sol);
  sol.algorithm = "optimum";
  sol.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return sol;
}

}  // namespace mrta
