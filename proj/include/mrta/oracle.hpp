#pragma once

#include <cstddef>

#include "mrta/model.hpp"

namespace mrta {

inline constexpr std::size_t kOracleMaxTasks = 8;
inline constexpr std::size_t kOracleMaxRobots = 3;

/// Exact minimum-cost solution for desk-sized instances: every assignment of
/// tasks to robots, every visiting order and every choice of station between
/// capacity-feasible trips is considered (routes must end at a station).
/// Throws mrta::Error above kOracleMaxTasks tasks or kOracleMaxRobots robots.
Solution brute_force_optimum(const Instance& inst);

}  // namespace mrta
