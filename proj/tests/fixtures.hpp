#pragma once

#include <cstdint>
#include <string>

#include "mrta/datagen.hpp"
#include "mrta/model.hpp"

namespace fixtures {

using namespace mrta;

/// Fluent builder; ids are assigned in insertion order.
class Builder {
 public:
  explicit Builder(Family family = Family::SMT) { inst_.family = family; inst_.name = "fixture"; }

  Builder& task(std::int64_t x, std::int64_t y, Load demand) {
    inst_.tasks.push_back({TaskId::from_index(inst_.tasks.size()), {x, y}, demand});
    return *this;
  }
  Builder& station(std::int64_t x, std::int64_t y) {
    inst_.stations.push_back({StationId::from_index(inst_.stations.size()), {x, y}});
    return *this;
  }
  Builder& robot(std::int64_t x, std::int64_t y, Load capacity, double speed = 1.0,
                 std::string model = {}) {
    inst_.robots.push_back({RobotId::from_index(inst_.robots.size()), {x, y}, capacity, speed, std::move(model)});
    return *this;
  }
  Instance build() const { return inst_; }

 private:
  Instance inst_;
};

/// One robot at (0,0), Gamma 10, speed 1; station at (5,0); pick d=5 at (3,0).
inline Instance single_pick() {
  return Builder().robot(0, 0, 10).station(5, 0).task(3, 0, 5).build();
}

/// As single_pick but with two picks of demand 6 at (3,0) and (4,0).
inline Instance split_pair() {
  return Builder().robot(0, 0, 10).station(5, 0).task(3, 0, 6).task(4, 0, 6).build();
}

/// Random SMT-style instance: distinct-free positions on a grid x grid board.
inline Instance random_instance(Rng& rng, std::size_t tasks, std::size_t robots, std::size_t stations,
                                std::int64_t grid = 50, Load max_demand = 40) {
  Builder b;
  for (std::size_t i = 0; i < tasks; ++i) {
    b.task(rng.between(0, grid), rng.between(0, grid), rng.between(1, max_demand));
  }
  for (std::size_t i = 0; i < stations; ++i) b.station(rng.between(0, grid), rng.between(0, grid));
  for (std::size_t i = 0; i < robots; ++i) {
    const double speeds[] = {0.5, 1.0, 1.5, 2.0};
    b.robot(rng.between(0, grid), rng.between(0, grid), rng.between(max_demand, 3 * max_demand),
            speeds[rng.below(4)]);
  }
  return b.build();
}

}  // namespace fixtures
