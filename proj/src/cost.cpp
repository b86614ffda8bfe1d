#include "mrta/cost.hpp"

#include <algorithm>
#include <cassert>

namespace mrta {

std::vector<RobotState> initial_states(const Instance& inst) {
  std::vector<RobotState> states;
  states.reserve(inst.robots.size());
  for (const auto& r : inst.robots) states.push_back(RobotState::initial(r));
  return states;
}

const DeliveryStation& nearest_station(Point pos, std::span<const DeliveryStation> stations) {
  assert(!stations.empty());
  const DeliveryStation* best = &stations.front();
  std::int64_t best_d = manhattan(pos, best->pos);
  for (const auto& s : stations.subspan(1)) {
    const std::int64_t d = manhattan(pos, s.pos);
    if (d < best_d || (d == best_d && s.id < best->id)) {
      best = &s;
      best_d = d;
    }
  }
  return *best;
}

CostContext::CostContext(const Instance& inst, std::vector<TaskId> remaining)
    : inst_(&inst), remaining_(std::move(remaining)), member_(inst.tasks.size(), 0) {
  std::sort(remaining_.begin(), remaining_.end());
  remaining_.erase(std::unique(remaining_.begin(), remaining_.end()), remaining_.end());
  for (TaskId t : remaining_) member_[t.index()] = 1;

  nearest_to_task_.reserve(inst.tasks.size());
  for (const auto& t : inst.tasks) {
    nearest_to_task_.push_back(inst.stations.empty() ? StationId{}
                                                     : nearest_station(t.pos, inst.stations).id);
  }
  refresh_smallest();
}

CostContext CostContext::all_tasks(const Instance& inst) {
  std::vector<TaskId> ids;
  ids.reserve(inst.tasks.size());
  for (const auto& t : inst.tasks) ids.push_back(t.id);
  return CostContext(inst, std::move(ids));
}

void CostContext::remove(TaskId t) {
  if (!contains(t)) return;
  member_[t.index()] = 0;
  remaining_.erase(std::lower_bound(remaining_.begin(), remaining_.end(), t));
  if (t == smallest_id_[0] || t == smallest_id_[1]) refresh_smallest();
}

void CostContext::refresh_smallest() {
  const TaskId old_id = smallest_id_[0];
  const std::optional<Load> old_first = smallest_id_[0].value() ? std::optional(smallest_demand_[0]) : std::nullopt;
  const std::optional<Load> old_second = smallest_id_[1].value() ? std::optional(smallest_demand_[1]) : std::nullopt;
  smallest_id_[0] = smallest_id_[1] = TaskId{};
  for (TaskId t : remaining_) {
    const Load d = inst_->task(t).demand;
    if (smallest_id_[0].value() == 0 || d < smallest_demand_[0]) {
      smallest_id_[1] = smallest_id_[0];
      smallest_demand_[1] = smallest_demand_[0];
      smallest_id_[0] = t;
      smallest_demand_[0] = d;
    } else if (smallest_id_[1].value() == 0 || d < smallest_demand_[1]) {
      smallest_id_[1] = t;
      smallest_demand_[1] = d;
    }
  }
  // Answers change unless both values survive and either they are equal or
  // the smallest task is the same one.
  const std::optional<Load> first = smallest_id_[0].value() ? std::optional(smallest_demand_[0]) : std::nullopt;
  const std::optional<Load> second = smallest_id_[1].value() ? std::optional(smallest_demand_[1]) : std::nullopt;
  if (first != old_first || second != old_second || (first != second && smallest_id_[0] != old_id)) {
    ++demand_epoch_;
  }
}

std::optional<Load> CostContext::min_demand_excluding(TaskId excluded) const {
  const int slot = (smallest_id_[0] == excluded) ? 1 : 0;
  if (smallest_id_[slot].value() == 0) return std::nullopt;
  return smallest_demand_[slot];
}

const DeliveryStation& CostContext::nearest_station_to_task(TaskId t) const {
  return inst_->station(nearest_to_task_[t.index()]);
}

bool is_feasible(StepKind kind, Load demand, const RobotState& state, bool first_pick) {
  if (kind == StepKind::Deliver) return true;
  if (first_pick && state.robot.max_capacity >= demand) return true;
  return state.gamma >= demand;
}

EdgeCost edge_cost(Point from, RouteStep target, const RobotState& state, const CostContext& ctx) {
  if (target.is_pick() && ctx.instance().task(target.task()).demand > state.gamma) {
    return edge_cost(from, target, state, ctx, nearest_station(from, ctx.stations()));
  }
  return edge_cost(from, target, state, ctx, ctx.stations().front());
}

EdgeCost edge_cost(Point from, RouteStep target, const RobotState& state, const CostContext& ctx,
                   const DeliveryStation& near_from) {
  const double speed = state.robot.speed;
  auto seconds = [speed](std::int64_t meters) { return static_cast<double>(meters) / speed; };

  if (!target.is_pick()) {
    return {seconds(manhattan(from, ctx.instance().station(target.station()).pos)), CostCase::Direct};
  }

  const PickingTask& task = ctx.instance().task(target.task());
  const Load cap = state.robot.max_capacity;
  if (task.demand > cap) return {kInfeasible, CostCase::Unreachable};

  const std::optional<Load> next_demand = ctx.min_demand_excluding(task.id);
  auto unload_after = [&] { return manhattan(task.pos, ctx.nearest_station_to_task(task.id).pos); };

  if (task.demand <= state.gamma) {
    const std::int64_t reach = manhattan(from, task.pos);
    // Another pick stays feasible once this one is loaded.
    if (next_demand && *next_demand <= state.gamma - task.demand) return {seconds(reach), CostCase::Direct};
    return {seconds(reach + unload_after()), CostCase::DirectThenDeliver};
  }

  // Capacity shortfall: unload at the station nearest to `from` first.
  const std::int64_t via_station = manhattan(from, near_from.pos) + manhattan(near_from.pos, task.pos);
  if (next_demand && *next_demand <= cap - task.demand) return {seconds(via_station), CostCase::DeliverThenDirect};
  return {seconds(via_station + unload_after()), CostCase::DeliverBothSides};
}

}  // namespace mrta
