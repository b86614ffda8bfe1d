#include "mrta/scheduler.hpp"

#include <algorithm>
#include <chrono>

#include "mrta/error.hpp"

namespace mrta {

ArrivalSlot* ArrivalQueue::find(RobotId r) {
  auto it = std::find_if(slots.begin(), slots.end(), [r](const ArrivalSlot& s) { return s.robot == r; });
  return it == slots.end() ? nullptr : &*it;
}

const ArrivalSlot* ArrivalQueue::find(RobotId r) const {
  return const_cast<ArrivalQueue*>(this)->find(r);
}

void ArrivalQueue::sort() {
  std::sort(slots.begin(), slots.end(), [](const ArrivalSlot& a, const ArrivalSlot& b) {
    if (a.time != b.time) return a.time < b.time;
    if (a.dominated != b.dominated) return a.dominated > b.dominated;
    return a.robot < b.robot;
  });
}

ArrivalQueue prepare_aq(ArrivalQueue queue, std::span<const RobotState> states, const DomainMap& dom) {
  if (!queue.initialized()) {
    queue.slots.reserve(states.size());
    for (const auto& s : states) queue.slots.push_back({s.robot.id, 0.0, 0});
  }
  for (auto& slot : queue.slots) slot.dominated = dom.domain_of(slot.robot).size();
  queue.sort();
  return queue;
}

void decrease_arrival_time(RobotId head, ArrivalQueue& queue, DomainMap& dom, double tie_tolerance) {
  const ArrivalSlot* head_slot = queue.find(head);
  const Seconds elapsed = head_slot ? head_slot->time : 0.0;
  for (auto& slot : queue.slots) {
    if (slot.robot == head) {
      slot.time = 0.0;
      dom.invalidate(head);
      continue;
    }
    const Seconds before = slot.time;
    Seconds after = before - elapsed;
    if (after <= tie_tolerance * std::max(before, elapsed)) after = 0.0;
    slot.time = after;
    if (after == 0.0 && (before > 0.0 || elapsed > 0.0)) dom.invalidate(slot.robot);
  }
}

void set_arrival_time(RobotId robot, Seconds time, ArrivalQueue& queue) {
  if (ArrivalSlot* slot = queue.find(robot)) slot->time = time;
  queue.sort();
}

const DeliveryStation& best_depot(Point pos, std::span<const DeliveryStation> stations) {
  return nearest_station(pos, stations);
}

LastDepots add_last_depots(const Instance& inst, std::span<RobotState> states) {
  LastDepots added;
  for (auto& state : states) {
    if (state.route.empty() || !state.route.back().is_pick()) continue;
    const DeliveryStation& station = best_depot(state.pos, inst.stations);
    added.added_cost += static_cast<double>(manhattan(state.pos, station.pos)) / state.robot.speed;
    ++added.added_visits;
    state.route.push_back(RouteStep::deliver(station.id));
    state.pos = station.pos;
    state.gamma = state.robot.max_capacity;
  }
  return added;
}

namespace {

// First slot whose robot dominates something. Robots with empty domains sit
// out until the next recomputation.
const ArrivalSlot* head_with_domain(const ArrivalQueue& queue, const DomainMap& dom) {
  for (const auto& slot : queue.slots) {
    if (!dom.domain_of(slot.robot).empty()) return &slot;
  }
  return nullptr;
}

}  // namespace

Solution solve(const Instance& inst, const SchedulerConfig& cfg, SchedulerStats* stats) {
  const auto started = std::chrono::steady_clock::now();
  SchedulerStats local;
  SchedulerStats& st = stats ? *stats : local;
  st = {};

  std::vector<RobotState> states = initial_states(inst);
  CostContext ctx = CostContext::all_tasks(inst);
  ArrivalQueue queue;
  DomainCache domains;

  const std::size_t guard =
      cfg.max_outer_iterations ? cfg.max_outer_iterations : 10 * inst.tasks.size();
  std::size_t outer = 0;

  while (!ctx.empty()) {
    if (++outer > guard) {
      throw Error("scheduler made no progress within " + std::to_string(guard) +
                  " domain recomputations");
    }
    DomainMap& dom = domains.compute(states, ctx, cfg.tie_tolerance);
    ++st.domain_computations;
    queue = prepare_aq(std::move(queue), states, dom);
    for (const auto& slot : queue.slots) {
      if (slot.time == 0.0) states[slot.robot.index()].executing = false;
    }

    while (!ctx.empty()) {
      const ArrivalSlot* head = head_with_domain(queue, dom);
      if (head == nullptr || !dom.is_valid(head->robot)) break;
      const RobotId current = head->robot;
      decrease_arrival_time(current, queue, dom, cfg.tie_tolerance);

      RobotState& state = states[current.index()];
      const TaskId task_id = min_cost_task(dom.domain_of(current), state, ctx);
      const PickingTask& task = inst.task(task_id);

      Point next;
      if (state.gamma < task.demand) {
        const DeliveryStation& station = best_depot(state.pos, inst.stations);
        state.route.push_back(RouteStep::deliver(station.id));
        state.gamma = state.robot.max_capacity;
        next = station.pos;
        ++st.delivery_assignments;
      } else {
        state.route.push_back(RouteStep::pick(task_id));
        state.gamma -= task.demand;
        ctx.remove(task_id);
        dom.set_as_not_valid(dom.dominants_of(task_id));
        next = task.pos;
        ++st.pick_assignments;
      }
      const Seconds travel = static_cast<double>(manhattan(state.pos, next)) / state.robot.speed;
      set_arrival_time(current, travel, queue);
      state.executing = travel > 0.0;
      state.pos = next;
    }
  }

  add_last_depots(inst, states);

  Solution sol;
  sol.routes.reserve(states.size());
  for (auto& s : states) sol.routes.push_back(std::move(s.route));
  recompute_metrics(inst, sol);
  sol.algorithm = "done-cpta";
  sol.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return sol;
}

}  // namespace mrta
