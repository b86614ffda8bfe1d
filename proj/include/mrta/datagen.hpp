#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mrta/model.hpp"

namespace mrta {

/// splitmix64 finalizer; spreads nearby seeds over the whole state space.
constexpr std::uint64_t splitmix64_mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Portable generator: mt19937_64 seeded through splitmix64, with
/// distributions written out here so results do not depend on the standard
/// library's (unspecified) distribution algorithms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64_mix(seed)) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n), rejection sampled. n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  /// Uniform in [0, 1) with 53 random bits.
  double unit();
  /// Box-Muller.
  double normal(double mean, double stddev);

 private:
  std::mt19937_64 engine_;
};

struct RobotCatalogEntry {
  std::string model_name;
  Load capacity = 1;
  double speed = 1.0;

  friend bool operator==(const RobotCatalogEntry&, const RobotCatalogEntry&) = default;
};

/// The shipped 25-model catalog (data/robot_catalog.csv, embedded at build time).
const std::vector<RobotCatalogEntry>& default_catalog();

/// A normal draw not above `draw_upper` selects among models with capacity
/// up to `capacity_ceiling`.
struct FleetStratum {
  double draw_upper;
  Load capacity_ceiling;
};

struct FleetSampling {
  double mean = 17.0;
  double stddev = 578.0;
  /// Ascending by draw_upper. Draws above the last stratum pick from the
  /// whole catalog.
  std::vector<FleetStratum> strata = {{17, 18},   {55, 55},   {80, 80},    {100, 100},
                                      {200, 300}, {500, 500}, {750, 1000}};
};

/// Number of delivery stations for m picking tasks: max(1, floor(ln m - 1)).
std::size_t delivery_count(std::size_t m);

/// Base demand rescaled to a fleet of mean capacity mu_gamma, rounded half up
/// and kept at least 1.
Load adapt_demand(double mu_gamma, Load d, Load base_capacity);

/// Draws n robots from the catalog. Robots get ids 1..n and a start of (0,0).
std::vector<Robot> sample_fleet(const std::vector<RobotCatalogEntry>& catalog, std::size_t n,
                                Rng& rng, const FleetSampling& sampling = {});
std::vector<Robot> sample_fleet(const std::vector<RobotCatalogEntry>& catalog, std::size_t n,
                                std::uint64_t seed, const FleetSampling& sampling = {});

struct GenSpec {
  Instance base;  // single-depot CVRP semantics
  Family family = Family::SMT;
  std::uint64_t seed = 0;
  std::vector<RobotCatalogEntry> catalog = default_catalog();
  FleetSampling sampling;
};

/// Derives one family instance from a CVRP base. Task positions always come
/// from the base; the family decides stations, robot starts and the fleet.
/// The name is `<FAMILY>-t<N>-r<n>-d<p>` where N counts the base's nodes
/// (tasks plus depot) and p = delivery_count(N) for multi-station families.
/// Throws GenerationError when the base bounding box has too few free cells.
Instance generate_instance(const GenSpec& spec);

/// Random X-style CVRP base: m tasks on a 1000x1000 grid, depot at the
/// centre, demands 1..100, k co-located robots whose common capacity is
/// ceil(total demand / k) (at least the largest demand).
Instance synthesize_base(std::size_t m, std::size_t k, std::uint64_t seed);

}  // namespace mrta
