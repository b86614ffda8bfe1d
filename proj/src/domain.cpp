#include "mrta/domain.hpp"

#include <algorithm>
#include <cassert>

#include "mrta/error.hpp"

namespace mrta {

DomainMap compute_domain(std::span<const RobotState> states, const CostContext& ctx,
                         double tie_tolerance) {
  DomainCache cache;
  return std::move(cache.compute(states, ctx, tie_tolerance));
}

namespace {

// Anything within the tolerance lies below this cutoff.
Seconds tie_cutoff(Seconds best, double tie_tolerance) {
  return tie_tolerance < 0.5 ? best * (1.0 + 4.0 * tie_tolerance) : kInfeasible;
}

bool ties(Seconds cost, Seconds best, Seconds cutoff, double tie_tolerance) {
  return cost <= cutoff && nearly_equal(cost, best, tie_tolerance);
}

}  // namespace

DomainMap& DomainCache::compute(std::span<const RobotState> states, const CostContext& ctx,
                               double tie_tolerance) {
  const Instance& inst = ctx.instance();
  const std::size_t robots = states.size();
  const std::size_t tasks = inst.tasks.size();
  DomainMap& dom = map_;

  const bool fresh = ctx_ != &ctx || tolerance_ != tie_tolerance || pos_.size() != robots ||
                     costs_.size() != tasks * robots;
  if (fresh) {
    costs_.assign(tasks * robots, kInfeasible);
    bound_.assign(tasks * robots, 0);
    member_.assign(tasks * robots, 0);
    best_.assign(tasks, kInfeasible);
    band_.assign(tasks, kInfeasible);
    live_.assign(tasks, 0);
    rescan_.assign(tasks, 0);
    dom.psi.assign(tasks, {});
    pos_.assign(robots, Point{});
    gamma_.assign(robots, 0);
  } else if (epoch_ != ctx.demand_epoch()) {
    // Tasks are only ever removed, so the smallest other demand can only
    // grow, which never lowers a cost: cached costs remain lower bounds.
    for (std::size_t k = 0; k < costs_.size(); ++k) {
      if (costs_[k] != kInfeasible) bound_[k] = 1;
    }
    std::fill(member_.begin(), member_.end(), 0);
    std::fill(live_.begin(), live_.end(), 0);
    for (auto& p : dom.psi) p.clear();
  }
  ctx_ = &ctx;
  epoch_ = ctx.demand_epoch();
  tolerance_ = tie_tolerance;

  // Tasks taken since the last call lose their dominants.
  for (std::size_t j = 0; j < tasks; ++j) {
    if (!live_[j] || ctx.contains(TaskId::from_index(j))) continue;
    for (RobotId r : dom.psi[j]) member_[r.index() * tasks + j] = 0;
    dom.psi[j].clear();
    live_[j] = 0;
  }
  for (TaskId t : ctx.remaining()) {
    if (!live_[t.index()]) rescan_[t.index()] = 1;
  }

  // Station nearest each robot, looked up on first use.
  std::vector<const DeliveryStation*> near(robots, nullptr);
  auto exact = [&](std::size_t i, std::size_t j) {
    if (!near[i]) near[i] = &nearest_station(states[i].pos, ctx.stations());
    const std::size_t k = i * tasks + j;
    costs_[k] = edge_cost(states[i].pos, RouteStep::pick(TaskId::from_index(j)), states[i], ctx, *near[i]).seconds;
    bound_[k] = 0;
  };

  // Every case costs at least the straight trip, so a robot whose straight
  // trip is outside a task's tie band is stored as a bound and not evaluated.
  for (std::size_t i = 0; i < robots; ++i) {
    const RobotState& s = states[i];
    if (!fresh && pos_[i] == s.pos && gamma_[i] == s.gamma) continue;
    pos_[i] = s.pos;
    gamma_[i] = s.gamma;
    Seconds* row = costs_.data() + i * tasks;
    char* bound = bound_.data() + i * tasks;
    char* member = member_.data() + i * tasks;

    for (TaskId t : ctx.remaining()) {
      const std::size_t j = t.index();
      const PickingTask& task = inst.tasks[j];
      if (task.demand > s.robot.max_capacity) {
        row[j] = kInfeasible;
        bound[j] = 0;
        if (member[j]) rescan_[j] = 1;
        continue;
      }
      const Seconds trip = static_cast<double>(manhattan(s.pos, task.pos)) / s.robot.speed;
      if (!member[j] && trip > band_[j]) {
        row[j] = trip;
        bound[j] = 1;
        continue;
      }
      if (rescan_[j]) {
        // Resolved in the rescan below.
        row[j] = trip;
        bound[j] = 1;
        continue;
      }
      const Seconds before = row[j];
      const bool held = member[j] && before == best_[j];
      if (trip > band_[j]) {
        row[j] = trip;
        bound[j] = 1;
      } else {
        exact(i, j);
      }
      if ((!bound[j] && row[j] < best_[j]) || (held && (bound[j] || row[j] != before))) {
        rescan_[j] = 1;
        continue;
      }
      // Minimum unchanged: only this robot's tie membership can move.
      const bool wanted = !bound[j] && ties(row[j], best_[j], band_[j], tie_tolerance);
      if (wanted == (member[j] != 0)) continue;
      auto& dominants = dom.psi[j];
      const RobotId r = RobotId::from_index(i);
      const auto at = std::lower_bound(dominants.begin(), dominants.end(), r);
      if (wanted) {
        dominants.insert(at, r);
      } else {
        dominants.erase(at);
      }
      member[j] = wanted;
    }
  }

  dom.phi.resize(robots);
  for (auto& p : dom.phi) p.clear();
  dom.valid.assign(robots, true);
  std::vector<std::size_t> candidates;
  for (TaskId t : ctx.remaining()) {
    const std::size_t j = t.index();
    auto& dominants = dom.psi[j];
    if (rescan_[j]) {
      auto cost = [&](std::size_t i) { return costs_[i * tasks + j]; };
      auto is_bound = [&](std::size_t i) { return bound_[i * tasks + j] != 0; };
      Seconds low = kInfeasible;
      std::size_t first = robots;
      for (std::size_t i = 0; i < robots; ++i) {
        if (!is_bound(i)) {
          low = std::min(low, cost(i));
        } else if (first == robots || cost(i) < cost(first)) {
          first = i;
        }
      }
      if (low == kInfeasible && first < robots) {
        // Only bounds are finite: resolve the smallest to seed the band.
        exact(first, j);
        low = cost(first);
      }
      // Bounds inside the band must be resolved. The band only shrinks as
      // `low` drops, so bounds skipped earlier stay outside it and every
      // final tie is among the candidates.
      Seconds cut = tie_cutoff(low, tie_tolerance);
      candidates.clear();
      for (std::size_t i = 0; i < robots; ++i) {
        if (cost(i) > cut) continue;
        if (is_bound(i)) exact(i, j);
        if (cost(i) > cut) continue;
        candidates.push_back(i);
        if (cost(i) < low) {
          low = cost(i);
          cut = tie_cutoff(low, tie_tolerance);
        }
      }
      if (low == kInfeasible) throw InfeasibleTaskError(t.value());

      for (RobotId r : dominants) member_[r.index() * tasks + j] = 0;
      dominants.clear();
      for (std::size_t i : candidates) {
        if (ties(cost(i), low, cut, tie_tolerance)) {
          dominants.push_back(RobotId::from_index(i));
          member_[i * tasks + j] = 1;
        }
      }
      best_[j] = low;
      band_[j] = cut;
      live_[j] = 1;
      rescan_[j] = 0;
    }
    for (RobotId r : dominants) dom.phi[r.index()].push_back(t);
  }
  return dom;
}

TaskId min_cost_task(std::span<const TaskId> phi_r, const RobotState& state, const CostContext& ctx) {
  TaskId best_task;
  Seconds best = kInfeasible;
  for (TaskId t : phi_r) {
    if (!ctx.contains(t)) continue;
    const Seconds c = edge_cost(state.pos, RouteStep::pick(t), state, ctx).seconds;
    // phi is id-ordered, so strict improvement keeps the lowest id on ties.
    if (best_task.value() == 0 || (c < best && !nearly_equal(c, best))) {
      best = c;
      best_task = t;
    }
  }
  assert(best_task.value() != 0);
  return best_task;
}

}  // namespace mrta
