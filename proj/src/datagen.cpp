#include "mrta/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "mrta/error.hpp"
#include "mrta/io.hpp"
#include "robot_catalog_data.hpp"

namespace mrta {

std::uint64_t Rng::below(std::uint64_t n) {
  // Reject the top partial bucket so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (span == std::numeric_limits<std::uint64_t>::max()) return static_cast<std::int64_t>(engine_());
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + below(span + 1));
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal(double mean, double stddev) {
  const double u1 = 1.0 - unit();
  const double u2 = unit();
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  return mean + stddev * z;
}

const std::vector<RobotCatalogEntry>& default_catalog() {
  static const std::vector<RobotCatalogEntry> catalog = parse_catalog(kRobotCatalogCsv);
  return catalog;
}

std::size_t delivery_count(std::size_t m) {
  if (m < 1) return 1;
  const double p = std::floor(std::log(static_cast<double>(m)) - 1.0);
  return p < 1.0 ? 1 : static_cast<std::size_t>(p);
}

Load adapt_demand(double mu_gamma, Load d, Load base_capacity) {
  const double scaled = mu_gamma * static_cast<double>(d) / static_cast<double>(base_capacity);
  const auto rounded = static_cast<Load>(std::floor(scaled + 0.5));
  return std::max<Load>(1, rounded);
}

std::vector<Robot> sample_fleet(const std::vector<RobotCatalogEntry>& catalog, std::size_t n,
                                Rng& rng, const FleetSampling& sampling) {
  if (catalog.empty()) throw GenerationError("robot catalog is empty");
  Load top = 0;
  for (const auto& e : catalog) top = std::max(top, e.capacity);

  std::vector<Robot> fleet;
  fleet.reserve(n);
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < n; ++i) {
    double draw;
    do {
      draw = rng.normal(sampling.mean, sampling.stddev);
    } while (draw < 0.0 || draw > static_cast<double>(top));

    pool.clear();
    auto stratum = std::find_if(sampling.strata.begin(), sampling.strata.end(),
                                [draw](const FleetStratum& s) { return draw <= s.draw_upper; });
    for (; stratum != sampling.strata.end() && pool.empty(); ++stratum) {
      for (std::size_t e = 0; e < catalog.size(); ++e) {
        if (catalog[e].capacity <= stratum->capacity_ceiling) pool.push_back(e);
      }
    }
    if (pool.empty()) {
      for (std::size_t e = 0; e < catalog.size(); ++e) pool.push_back(e);
    }

    const RobotCatalogEntry& pick = catalog[pool[rng.below(pool.size())]];
    fleet.push_back(Robot{RobotId::from_index(i), {0, 0}, pick.capacity, pick.speed, pick.model_name});
  }
  return fleet;
}

std::vector<Robot> sample_fleet(const std::vector<RobotCatalogEntry>& catalog, std::size_t n,
                                std::uint64_t seed, const FleetSampling& sampling) {
  Rng rng(seed);
  return sample_fleet(catalog, n, rng, sampling);
}

namespace {

struct Box {
  Point lo, hi;

  // Coordinates are bounded by 1e9, so the count fits in 64 bits.
  std::uint64_t cells() const {
    return static_cast<std::uint64_t>(hi.x - lo.x + 1) *
           static_cast<std::uint64_t>(hi.y - lo.y + 1);
  }
};

// Distinct random cells of the box that are not yet occupied; marks them occupied.
std::vector<Point> place(std::size_t count, const Box& box, std::set<Point>& occupied, Rng& rng) {
  if (count == 0) return {};
  const std::uint64_t free = box.cells() - occupied.size();
  if (free < count) {
    throw GenerationError("bounding box too small: " + std::to_string(count) +
                          " free positions needed");
  }
  std::vector<Point> out;
  out.reserve(count);
  if (free >= 2 * static_cast<std::uint64_t>(count)) {
    while (out.size() < count) {
      const Point p{rng.between(box.lo.x, box.hi.x), rng.between(box.lo.y, box.hi.y)};
      if (occupied.insert(p).second) out.push_back(p);
    }
    return out;
  }
  // Crowded box: the free cells are few enough to list.
  std::vector<Point> cells;
  for (std::int64_t y = box.lo.y; y <= box.hi.y; ++y) {
    for (std::int64_t x = box.lo.x; x <= box.hi.x; ++x) {
      if (!occupied.contains({x, y})) cells.push_back({x, y});
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(cells[i], cells[i + rng.below(cells.size() - i)]);
    occupied.insert(cells[i]);
    out.push_back(cells[i]);
  }
  return out;
}

}  // namespace

Instance generate_instance(const GenSpec& spec) {
  const Instance& base = spec.base;
  if (base.stations.size() != 1 || base.robots.empty() || base.tasks.empty()) {
    throw GenerationError("base must be a single-depot CVRP instance with tasks and robots");
  }
  const std::size_t m = base.tasks.size();
  const std::size_t n = base.robots.size();
  const Load base_capacity = base.robots.front().max_capacity;
  const Point depot = base.stations.front().pos;
  // Names and station counts follow the base's node count (tasks plus
  // depot), so X-n181-k23 yields t181 and delivery_count(181).
  const std::size_t nodes = m + 1;
  const bool single = is_single_depot(spec.family);
  const std::size_t p = single ? 1 : delivery_count(nodes);

  Rng rng(spec.seed);
  Instance out;
  out.family = spec.family;
  out.name = std::string(to_string(spec.family)) + "-t" + std::to_string(nodes) + "-r" +
             std::to_string(n) + "-d" + std::to_string(p);
  out.tasks = base.tasks;

  if (is_homogeneous(spec.family)) {
    for (std::size_t i = 0; i < n; ++i) {
      out.robots.push_back(Robot{RobotId::from_index(i), depot, base_capacity, 1.0, {}});
    }
  } else {
    out.robots = sample_fleet(spec.catalog, n, rng, spec.sampling);
    const auto top = std::max_element(spec.catalog.begin(), spec.catalog.end(),
                                      [](const auto& a, const auto& b) { return a.capacity < b.capacity; });
    // Replace robots from the back with the largest model until the fleet can
    // carry every adapted demand.
    for (std::size_t replaced = 0;; ++replaced) {
      double total = 0.0;
      for (const auto& r : out.robots) total += static_cast<double>(r.max_capacity);
      const double mu = total / static_cast<double>(n);
      for (std::size_t i = 0; i < m; ++i) {
        out.tasks[i].demand = adapt_demand(mu, base.tasks[i].demand, base_capacity);
      }
      if (out.max_demand() <= out.max_capacity()) break;
      if (replaced == n) throw GenerationError("no catalog model carries the largest adapted demand");
      Robot& slot = out.robots[n - 1 - replaced];
      slot.max_capacity = top->capacity;
      slot.speed = top->speed;
      slot.model_name = top->model_name;
    }
  }

  out.stations.push_back(DeliveryStation{StationId(1), depot});
  if (!single) {
    Box box{depot, depot};
    std::set<Point> occupied{depot};
    for (const auto& t : base.tasks) {
      box.lo = {std::min(box.lo.x, t.pos.x), std::min(box.lo.y, t.pos.y)};
      box.hi = {std::max(box.hi.x, t.pos.x), std::max(box.hi.y, t.pos.y)};
      occupied.insert(t.pos);
    }
    const std::vector<Point> stations = place(p - 1, box, occupied, rng);
    for (std::size_t i = 0; i < stations.size(); ++i) {
      out.stations.push_back(DeliveryStation{StationId::from_index(i + 1), stations[i]});
    }
    const std::vector<Point> starts = place(n, box, occupied, rng);
    for (std::size_t i = 0; i < n; ++i) out.robots[i].start = starts[i];
  } else {
    for (auto& r : out.robots) r.start = depot;
  }
  return out;
}

Instance synthesize_base(std::size_t m, std::size_t k, std::uint64_t seed) {
  if (m == 0 || k == 0) throw GenerationError("synthesize_base needs at least one task and one robot");
  constexpr std::int64_t kGrid = 1000;
  Rng rng(seed);
  const Point depot{kGrid / 2, kGrid / 2};
  std::set<Point> occupied{depot};
  const std::vector<Point> spots = place(m, Box{{0, 0}, {kGrid, kGrid}}, occupied, rng);

  Instance base;
  base.family = Family::XMT;
  base.name = "X-n" + std::to_string(m + 1) + "-k" + std::to_string(k);
  Load total = 0;
  Load largest = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const Load d = rng.between(1, 100);
    total += d;
    largest = std::max(largest, d);
    base.tasks.push_back(PickingTask{TaskId::from_index(i), spots[i], d});
  }
  const auto kk = static_cast<Load>(k);
  const Load capacity = std::max(largest, (total + kk - 1) / kk);
  base.stations.push_back(DeliveryStation{StationId(1), depot});
  for (std::size_t i = 0; i < k; ++i) {
    base.robots.push_back(Robot{RobotId::from_index(i), depot, capacity, 1.0, {}});
  }
  return base;
}

}  // namespace mrta
