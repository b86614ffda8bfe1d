#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mrta/error.hpp"
#include "mrta/scheduler.hpp"

namespace {

using namespace mrta;
using fixtures::Builder;

Route steps(std::initializer_list<RouteStep> s) { return Route(s); }
RouteStep P(std::uint32_t t) { return RouteStep::pick(TaskId(t)); }
RouteStep D(std::uint32_t s) { return RouteStep::deliver(StationId(s)); }

TEST(Solve, SinglePick) {
  const Instance inst = fixtures::single_pick();
  const Solution sol = solve(inst);
  ASSERT_EQ(sol.routes.size(), 1u);
  EXPECT_EQ(sol.routes[0], steps({P(1), D(1)}));
  EXPECT_DOUBLE_EQ(sol.total_cost, 5.0);
  EXPECT_EQ(sol.depot_visits, 1);
  EXPECT_EQ(sol.used_robots, 1);
  EXPECT_EQ(sol.algorithm, "done-cpta");
}

TEST(Solve, CapacityForcesMidRouteDelivery) {
  const Instance inst = fixtures::split_pair();
  const Solution sol = solve(inst);
  // 3 to t1, 2 to the station, 1 back to t2, 1 to the station.
  EXPECT_EQ(sol.routes[0], steps({P(1), D(1), P(2), D(1)}));
  EXPECT_DOUBLE_EQ(sol.total_cost, 7.0);
  EXPECT_EQ(sol.depot_visits, 2);
  EXPECT_TRUE(validate_solution(inst, sol).ok());
}

TEST(Solve, NoTasks) {
  const Instance inst = Builder().station(0, 0).robot(0, 0, 10).robot(1, 1, 10).build();
  const Solution sol = solve(inst);
  EXPECT_EQ(sol.routes, std::vector<Route>(2));
  EXPECT_EQ(sol.total_cost, 0.0);
  EXPECT_EQ(sol.used_robots, 0);
  EXPECT_EQ(sol.depot_visits, 0);
}

TEST(Solve, NearbyRobotsSplitWork) {
  const Instance inst = Builder().task(1, 0, 1).task(19, 0, 1).station(10, 0)
                            .robot(0, 0, 10).robot(20, 0, 10).build();
  const Solution sol = solve(inst);
  EXPECT_EQ(sol.routes[0], steps({P(1), D(1)}));
  EXPECT_EQ(sol.routes[1], steps({P(2), D(1)}));
  EXPECT_DOUBLE_EQ(sol.total_cost, 20.0);
}

TEST(Solve, StatsCountAssignments) {
  SchedulerStats stats;
  solve(fixtures::split_pair(), {}, &stats);
  EXPECT_EQ(stats.pick_assignments, 2u);
  EXPECT_GE(stats.domain_computations, 1u);
  EXPECT_LE(stats.delivery_assignments, stats.pick_assignments);
}

TEST(Solve, GuardSurfacesAsError) {
  SchedulerConfig cfg;
  cfg.max_outer_iterations = 1;
  Rng rng(3);
  const Instance inst = fixtures::random_instance(rng, 40, 3, 2);
  EXPECT_THROW(solve(inst, cfg), Error);
}

TEST(PrepareAq, FreshQueueOrdersByDomainSize) {
  const Instance inst = Builder().task(1, 0, 1).task(2, 0, 1).task(30, 0, 1).station(0, 0)
                            .robot(0, 0, 10).robot(30, 0, 10).robot(100, 100, 10).build();
  const auto states = initial_states(inst);
  const DomainMap dom = compute_domain(states, CostContext::all_tasks(inst));
  const ArrivalQueue q = prepare_aq({}, states, dom);
  ASSERT_EQ(q.slots.size(), 3u);
  EXPECT_EQ(q.slots[0].robot, RobotId(1));  // two tasks
  EXPECT_EQ(q.slots[1].robot, RobotId(2));  // one task
  EXPECT_EQ(q.slots[2].robot, RobotId(3));  // none
  for (const auto& s : q.slots) EXPECT_EQ(s.time, 0.0);
}

TEST(PrepareAq, KeepsTimesAndSortsAscending) {
  const Instance inst = Builder().task(1, 0, 1).station(0, 0).robot(0, 0, 10).robot(0, 0, 10).build();
  const auto states = initial_states(inst);
  const DomainMap dom = compute_domain(states, CostContext::all_tasks(inst));
  ArrivalQueue q;
  q.slots = {{RobotId(1), 2.0, 0}, {RobotId(2), 0.0, 0}};
  q = prepare_aq(q, states, dom);
  EXPECT_EQ(q.slots[0].robot, RobotId(2));
  EXPECT_EQ(q.slots[1].time, 2.0);
}

TEST(PrepareAq, EqualTimesPreferLargerDomain) {
  ArrivalQueue q;
  q.slots = {{RobotId(2), 1.0, 1}, {RobotId(1), 1.0, 3}};
  q.sort();
  EXPECT_EQ(q.slots[0].robot, RobotId(1));
}

DomainMap all_valid(std::size_t robots) {
  DomainMap dom;
  dom.phi.resize(robots);
  dom.valid.assign(robots, true);
  return dom;
}

TEST(DecreaseArrivalTime, SubtractsHeadTime) {
  ArrivalQueue q;
  q.slots = {{RobotId(1), 3.0, 0}, {RobotId(3), 3.0, 0}, {RobotId(2), 5.0, 0}};
  DomainMap dom = all_valid(3);
  decrease_arrival_time(RobotId(1), q, dom);
  EXPECT_EQ(q.find(RobotId(2))->time, 2.0);
  EXPECT_EQ(q.find(RobotId(3))->time, 0.0);
  EXPECT_TRUE(dom.is_valid(RobotId(2)));
  EXPECT_FALSE(dom.is_valid(RobotId(3)));
  EXPECT_FALSE(dom.is_valid(RobotId(1)));
}

TEST(DecreaseArrivalTime, ZeroHeadChangesNothingElse) {
  ArrivalQueue q;
  q.slots = {{RobotId(1), 0.0, 0}, {RobotId(2), 0.0, 0}, {RobotId(3), 4.0, 0}};
  DomainMap dom = all_valid(3);
  decrease_arrival_time(RobotId(1), q, dom);
  EXPECT_EQ(q.find(RobotId(3))->time, 4.0);
  EXPECT_TRUE(dom.is_valid(RobotId(2)));
  EXPECT_TRUE(dom.is_valid(RobotId(3)));
  EXPECT_FALSE(dom.is_valid(RobotId(1)));
}

TEST(DecreaseArrivalTime, FloorsAtZero) {
  ArrivalQueue q;
  q.slots = {{RobotId(1), 10.0, 0}, {RobotId(2), 4.0, 0}};
  DomainMap dom = all_valid(2);
  decrease_arrival_time(RobotId(1), q, dom);
  EXPECT_EQ(q.find(RobotId(2))->time, 0.0);
  EXPECT_FALSE(dom.is_valid(RobotId(2)));
}

TEST(SetArrivalTime, ReinsertsInOrder) {
  ArrivalQueue q;
  q.slots = {{RobotId(1), 0.0, 0}, {RobotId(2), 1.0, 0}};
  set_arrival_time(RobotId(1), 2.5, q);
  EXPECT_EQ(q.slots[0].robot, RobotId(2));
  EXPECT_EQ(q.slots[1].time, 2.5);
}

TEST(BestDepot, DelegatesToNearestStation) {
  const Instance inst = Builder().station(0, 0).station(10, 0).robot(0, 0, 1).build();
  EXPECT_EQ(best_depot({5, 0}, inst.stations).id, StationId(1));
  EXPECT_EQ(best_depot({6, 0}, inst.stations).id, StationId(2));
}

TEST(AddLastDepots, ClosesOpenRoutesOnly) {
  const Instance inst = Builder().task(4, 0, 1).station(2, 0).robot(0, 0, 10).robot(0, 0, 10).robot(0, 0, 10).build();
  std::vector<RobotState> states = initial_states(inst);
  states[0].route = {P(1)};
  states[0].pos = {4, 0};
  states[1].route = {P(1), D(1)};
  states[1].pos = {2, 0};
  const LastDepots added = add_last_depots(inst, states);
  EXPECT_DOUBLE_EQ(added.added_cost, 2.0);
  EXPECT_EQ(added.added_visits, 1);
  EXPECT_EQ(states[0].route, steps({P(1), D(1)}));
  EXPECT_EQ(states[1].route, steps({P(1), D(1)}));
  EXPECT_TRUE(states[2].route.empty());
}

TEST(SolveProperties, ValidDeterministicAndCapacityConserving) {
  Rng rng(7);
  for (int round = 0; round < 40; ++round) {
    const Instance inst = fixtures::random_instance(rng, 1 + rng.below(60), 1 + rng.below(6), 1 + rng.below(4));
    const Solution sol = solve(inst);
    const ValidationReport report = validate_solution(inst, sol);
    ASSERT_TRUE(report.ok()) << report.violations.front();
    Solution again = solve(inst);
    again.wall_time = sol.wall_time;
    EXPECT_EQ(again, sol);

    std::int64_t non_empty = 0;
    for (std::size_t i = 0; i < sol.routes.size(); ++i) {
      Load gamma = inst.robots[i].max_capacity;
      for (const RouteStep& s : sol.routes[i]) {
        if (s.is_pick()) {
          const Load before = gamma;
          gamma -= inst.task(s.task()).demand;
          ASSERT_GE(before, inst.task(s.task()).demand);
          ASSERT_EQ(gamma, before - inst.task(s.task()).demand);
        } else {
          gamma = inst.robots[i].max_capacity;
        }
      }
      if (!sol.routes[i].empty()) ++non_empty;
    }
    EXPECT_LE(sol.used_robots, static_cast<std::int64_t>(inst.robots.size()));
    EXPECT_GE(sol.depot_visits, non_empty);
  }
}

}  // namespace
