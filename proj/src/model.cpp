#include "mrta/model.hpp"

#include <algorithm>
#include <cmath>

namespace mrta {

bool nearly_equal(double a, double b, double rel_tol) {
  if (a == b) return true;
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::XMT: return "XMT";
    case Family::RMT: return "RMT";
    case Family::WMT: return "WMT";
    case Family::SMT: return "SMT";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view text) {
  for (Family f : {Family::XMT, Family::RMT, Family::WMT, Family::SMT}) {
    if (to_string(f) == text) return f;
  }
  return std::nullopt;
}

Load Instance::max_demand() const {
  Load best = 0;
  for (const auto& t : tasks) best = std::max(best, t.demand);
  return best;
}

Load Instance::max_capacity() const {
  Load best = 0;
  for (const auto& r : robots) best = std::max(best, r.max_capacity);
  return best;
}

bool ValidationReport::mentions(std::string_view needle) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

Point position_of(const Instance& inst, RouteStep step) {
  return step.is_pick() ? inst.task(step.task()).pos : inst.station(step.station()).pos;
}

namespace {

template <class Entity>
bool ids_dense(const std::vector<Entity>& items) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].id.index() != i || items[i].id.value() == 0) return false;
  }
  return true;
}

std::string tid(std::uint32_t v) { return "t" + std::to_string(v); }
std::string rid(std::size_t i) { return "r" + std::to_string(i + 1); }

}  // namespace

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport report;
  if (!ids_dense(inst.tasks)) report.add("task ids are not dense 1..m in order");
  if (!ids_dense(inst.stations)) report.add("station ids are not dense 1..p in order");
  if (!ids_dense(inst.robots)) report.add("robot ids are not dense 1..n in order");

  if (inst.stations.empty()) report.add("no delivery station");
  if (inst.robots.empty()) report.add("no robot");

  for (const auto& t : inst.tasks) {
    if (t.demand < 1) report.add("non-positive demand on " + tid(t.id.value()));
  }
  for (const auto& r : inst.robots) {
    if (r.max_capacity < 1) report.add("non-positive capacity on r" + std::to_string(r.id.value()));
    if (!(r.speed > 0.0) || !std::isfinite(r.speed)) {
      report.add("non-positive speed on r" + std::to_string(r.id.value()));
    }
  }

  if (!inst.robots.empty() && inst.max_demand() > inst.max_capacity()) {
    report.add("demand exceeds fleet max capacity (" + std::to_string(inst.max_demand()) + " > " +
               std::to_string(inst.max_capacity()) + ")");
  }

  if (is_single_depot(inst.family)) {
    if (inst.stations.size() != 1) {
      report.add("family/station-count mismatch: " + std::string(to_string(inst.family)) +
                 " requires exactly one station, found " + std::to_string(inst.stations.size()));
    } else {
      const Point depot = inst.stations.front().pos;
      for (const auto& r : inst.robots) {
        if (r.start != depot) {
          report.add("family/robot-start mismatch: r" + std::to_string(r.id.value()) +
                     " does not start at the depot");
        }
      }
    }
  }
  if (is_homogeneous(inst.family) && !inst.robots.empty()) {
    const auto& first = inst.robots.front();
    for (const auto& r : inst.robots) {
      if (r.max_capacity != first.max_capacity || r.speed != first.speed) {
        report.add("family/fleet mismatch: r" + std::to_string(r.id.value()) +
                   " differs from r1 in a homogeneous family");
      }
    }
  }
  return report;
}

Seconds route_cost(const Instance& inst, const Robot& robot, std::span<const RouteStep> route) {
  Seconds total = 0.0;
  Point at = robot.start;
  for (const RouteStep& step : route) {
    const Point next = position_of(inst, step);
    total += static_cast<double>(manhattan(at, next)) / robot.speed;
    at = next;
  }
  return total;
}

void recompute_metrics(const Instance& inst, Solution& sol) {
  sol.total_cost = 0.0;
  sol.depot_visits = 0;
  sol.used_robots = 0;
  for (std::size_t i = 0; i < sol.routes.size() && i < inst.robots.size(); ++i) {
    const Route& route = sol.routes[i];
    sol.total_cost += route_cost(inst, inst.robots[i], route);
    bool used = false;
    for (const RouteStep& s : route) {
      if (s.is_pick()) used = true;
      else ++sol.depot_visits;
    }
    if (used) ++sol.used_robots;
  }
}

ValidationReport validate_solution(const Instance& inst, const Solution& sol) {
  ValidationReport report;
  if (sol.routes.size() != inst.robots.size()) {
    report.add("route count mismatch: " + std::to_string(sol.routes.size()) + " routes for " +
               std::to_string(inst.robots.size()) + " robots");
  }

  std::vector<int> covered(inst.tasks.size(), 0);
  bool ids_ok = true;
  Seconds recomputed = 0.0;
  std::int64_t deliveries = 0;
  std::int64_t used = 0;

  const std::size_t n = std::min(sol.routes.size(), inst.robots.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Robot& robot = inst.robots[i];
    const Route& route = sol.routes[i];
    Load load = 0;
    bool has_pick = false;
    bool route_ids_ok = true;
    for (const RouteStep& step : route) {
      if (step.is_pick()) {
        if (step.ref == 0 || step.ref > inst.tasks.size()) {
          report.add("unknown task id " + tid(step.ref) + " in route of " + rid(i));
          route_ids_ok = false;
          continue;
        }
        has_pick = true;
        ++covered[step.task().index()];
        load += inst.task(step.task()).demand;
        if (load > robot.max_capacity) {
          report.add("capacity exceeded on " + rid(i) + " at " + tid(step.ref) + ": load " +
                     std::to_string(load) + " > " + std::to_string(robot.max_capacity));
        }
      } else {
        if (step.ref == 0 || step.ref > inst.stations.size()) {
          report.add("unknown station id h" + std::to_string(step.ref) + " in route of " + rid(i));
          route_ids_ok = false;
          continue;
        }
        ++deliveries;
        load = 0;
      }
    }
    if (!route.empty() && route.back().is_pick()) {
      report.add("route of " + rid(i) + " does not end with a delivery");
    }
    if (has_pick) ++used;
    if (route_ids_ok) recomputed += route_cost(inst, robot, route);
    ids_ok = ids_ok && route_ids_ok;
  }

  for (std::size_t j = 0; j < covered.size(); ++j) {
    if (covered[j] == 0) report.add("task not covered: " + tid(static_cast<std::uint32_t>(j + 1)));
    if (covered[j] > 1) {
      report.add("task covered more than once: " + tid(static_cast<std::uint32_t>(j + 1)));
    }
  }
  if (used != sol.used_robots) {
    report.add("used robot count mismatch: reported " + std::to_string(sol.used_robots) +
               ", routes use " + std::to_string(used));
  }
  if (deliveries != sol.depot_visits) {
    report.add("depot visit count mismatch: reported " + std::to_string(sol.depot_visits) +
               ", routes contain " + std::to_string(deliveries));
  }
  if (ids_ok && !nearly_equal(recomputed, sol.total_cost)) {
    report.add("cost mismatch: reported " + std::to_string(sol.total_cost) + ", legs sum to " +
               std::to_string(recomputed));
  }
  return report;
}

}  // namespace mrta
