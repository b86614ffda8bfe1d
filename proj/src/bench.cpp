#include "mrta/bench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "mrta/baseline.hpp"
#include "mrta/io.hpp"
#include "mrta/oracle.hpp"
#include "mrta/scheduler.hpp"

namespace mrta {

namespace {

constexpr std::size_t kExactLimit = 20;

// Midranks of the pooled sample, doubled so they stay integral.
std::vector<std::int64_t> doubled_midranks(const std::vector<double>& pooled) {
  std::vector<std::size_t> order(pooled.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });
  std::vector<std::int64_t> rank2(pooled.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    // Positions i..j share ranks i+1..j+1; twice their mean is i+j+2.
    for (std::size_t k = i; k <= j; ++k) rank2[order[k]] = static_cast<std::int64_t>(i + j + 2);
    i = j + 1;
  }
  return rank2;
}

double exact_p(const std::vector<std::int64_t>& rank2, std::size_t n1, std::int64_t observed) {
  const std::size_t n = rank2.size();
  const std::int64_t total = std::accumulate(rank2.begin(), rank2.end(), std::int64_t{0});
  // ways[k][s]: subsets of size k whose doubled rank sum is s.
  std::vector<std::vector<double>> ways(n1 + 1, std::vector<double>(static_cast<std::size_t>(total) + 1, 0.0));
  ways[0][0] = 1.0;
  for (std::int64_t r : rank2) {
    for (std::size_t k = n1; k >= 1; --k) {
      for (std::int64_t s = total; s >= r; --s) {
        ways[k][static_cast<std::size_t>(s)] += ways[k - 1][static_cast<std::size_t>(s - r)];
      }
    }
  }
  const std::int64_t centre = static_cast<std::int64_t>(n1 * (n + 1));
  const std::int64_t dev = std::abs(observed - centre);
  double extreme = 0.0;
  double all = 0.0;
  for (std::int64_t s = 0; s <= total; ++s) {
    const double w = ways[n1][static_cast<std::size_t>(s)];
    all += w;
    if (std::abs(s - centre) >= dev) extreme += w;
  }
  return std::min(1.0, extreme / all);
}

}  // namespace

MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::vector<std::int64_t> rank2 = doubled_midranks(pooled);
  const std::int64_t sum2 = std::accumulate(rank2.begin(), rank2.begin() + static_cast<std::ptrdiff_t>(n1),
                                            std::int64_t{0});
  const double d1 = static_cast<double>(n1);
  const double d2 = static_cast<double>(n2);
  const double u = static_cast<double>(sum2) / 2.0 - d1 * (d1 + 1.0) / 2.0;
  if (n1 == 0 || n2 == 0) return {u, 1.0};

  if (n1 + n2 <= kExactLimit) return {u, exact_p(rank2, n1, sum2)};

  const double n = d1 + d2;
  double ties = 0.0;
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    ties += t * t * t - t;
    i = j;
  }
  const double variance = d1 * d2 / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
  if (variance <= 0.0) return {u, 1.0};
  const double z = std::max(0.0, std::fabs(u - d1 * d2 / 2.0) - 0.5) / std::sqrt(variance);
  return {u, std::min(1.0, std::erfc(z / std::sqrt(2.0)))};
}

std::string_view to_string(Algorithm algo) {
  return algo == Algorithm::DoneCpta ? "done-cpta" : "a-ncar";
}

std::optional<Algorithm> parse_algorithm(std::string_view text) {
  if (text == "done-cpta") return Algorithm::DoneCpta;
  if (text == "a-ncar") return Algorithm::Ancar;
  return std::nullopt;
}

Solution run_algorithm(const Instance& inst, Algorithm algo, std::uint64_t seed) {
  Solution sol = algo == Algorithm::DoneCpta ? solve(inst) : solve_ancar(inst);
  sol.seed = seed;
  return sol;
}

namespace {

std::string file_safe(std::string_view name) {
  std::string out;
  for (char c : name) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                      c == '-' || c == '_' || c == '.';
    out += keep ? c : '_';
  }
  return out;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string opt_double(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.variations < 1) throw Error("variations must be at least 1");
  if (cfg.solution_dir) std::filesystem::create_directories(*cfg.solution_dir);

  ExperimentResult result;
  for (std::size_t src = 0; src < cfg.sources.size(); ++src) {
    const InstanceSource& source = cfg.sources[src];
    std::vector<std::vector<RunRecord>> by_algo(cfg.algorithms.size());

    for (std::size_t k = 0; k < cfg.variations; ++k) {
      const std::uint64_t seed = variation_seed(cfg.base_seed, k);
      const Instance inst = source.family
                                ? generate_instance(GenSpec{source.instance, *source.family, seed, cfg.catalog, {}})
                                : source.instance;
      std::optional<Seconds> optimum;
      if (inst.tasks.size() <= kOracleMaxTasks && inst.robots.size() <= kOracleMaxRobots) {
        optimum = brute_force_optimum(inst).total_cost;
      }

      for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
        const Algorithm algo = cfg.algorithms[a];
        const Solution sol = run_algorithm(inst, algo, seed);
        const ValidationReport report = validate_solution(inst, sol);
        if (!report.ok()) {
          throw ValidationFailure(std::string(to_string(algo)) + " produced an invalid solution for " +
                                      inst.name + " (seed " + std::to_string(seed) +
                                      "): " + report.violations.front(),
                                  seed);
        }
        RunRecord rec{inst.name, src,          algo,          k,      seed, sol.total_cost,
                      sol.used_robots, sol.depot_visits, sol.wall_time, optimum, {}};
        if (cfg.solution_dir) {
          const auto path = *cfg.solution_dir / ("s" + std::to_string(src) + "-" + file_safe(inst.name) + "-" +
                                                 std::string(to_string(algo)) + "-v" + std::to_string(k) + ".json");
          write_text(path, write_solution(sol));
          rec.solution_file = path.generic_string();
        }
        by_algo[a].push_back(std::move(rec));
      }
    }

    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
      const auto& runs = by_algo[a];
      SummaryRow row;
      row.instance = runs.front().instance;
      row.algorithm = cfg.algorithms[a];
      row.variations = runs.size();
      row.seed = cfg.base_seed;
      row.min_cost = runs.front().cost;
      row.max_cost = runs.front().cost;
      double optimum_sum = 0.0;
      bool all_optimum = true;
      for (const auto& r : runs) {
        row.mean_cost += r.cost;
        row.min_cost = std::min(row.min_cost, r.cost);
        row.max_cost = std::max(row.max_cost, r.cost);
        row.mean_wall_time += r.wall_time;
        row.mean_used_robots += static_cast<double>(r.used_robots);
        row.mean_depot_visits += static_cast<double>(r.depot_visits);
        if (r.optimum) optimum_sum += *r.optimum; else all_optimum = false;
      }
      const double count = static_cast<double>(runs.size());
      row.mean_cost /= count;
      row.mean_wall_time /= count;
      row.mean_used_robots /= count;
      row.mean_depot_visits /= count;
      if (all_optimum) row.mean_optimum = optimum_sum / count;
      result.runs.insert(result.runs.end(), runs.begin(), runs.end());
      result.summaries.push_back(std::move(row));
    }
  }
  return result;
}

std::string write_results_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "row_type,instance,algorithm,variation,seed,cost,min_cost,max_cost,used_robots,depot_visits,"
         "optimum_cost,solution_file\n";
  std::size_t next_run = 0;
  for (const SummaryRow& s : result.summaries) {
    for (std::size_t i = 0; i < s.variations; ++i, ++next_run) {
      const RunRecord& r = result.runs[next_run];
      out << "run," << csv_field(r.instance) << ',' << to_string(r.algorithm) << ',' << r.variation << ','
          << r.seed << ',' << format_double(r.cost) << ",,," << r.used_robots << ',' << r.depot_visits << ','
          << opt_double(r.optimum) << ',' << csv_field(r.solution_file) << '\n';
    }
    out << "summary," << csv_field(s.instance) << ',' << to_string(s.algorithm) << ",," << s.seed << ','
        << format_double(s.mean_cost) << ',' << format_double(s.min_cost) << ',' << format_double(s.max_cost)
        << ',' << format_double(s.mean_used_robots) << ',' << format_double(s.mean_depot_visits) << ','
        << opt_double(s.mean_optimum) << ",\n";
  }
  return out.str();
}

std::string write_timing_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "row_type,instance,algorithm,variation,seed,wall_time_s\n";
  std::size_t next_run = 0;
  for (const SummaryRow& s : result.summaries) {
    for (std::size_t i = 0; i < s.variations; ++i, ++next_run) {
      const RunRecord& r = result.runs[next_run];
      out << "run," << csv_field(r.instance) << ',' << to_string(r.algorithm) << ',' << r.variation << ','
          << r.seed << ',' << format_double(r.wall_time) << '\n';
    }
    out << "summary," << csv_field(s.instance) << ',' << to_string(s.algorithm) << ",," << s.seed << ','
        << format_double(s.mean_wall_time) << '\n';
  }
  return out.str();
}

std::string write_metadata_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["format"] = "mrta-bench";
  j["schema_version"] = kCsvSchemaVersion;
  j["base_seed"] = cfg.base_seed;
  j["variations"] = cfg.variations;
  j["seed_derivation"] = "seed_k = splitmix64_mix(base_seed + k)";
  auto& algos = j["algorithms"] = nlohmann::ordered_json::array();
  for (Algorithm a : cfg.algorithms) algos.push_back(std::string(to_string(a)));
  j["cost_unit"] = "seconds (Manhattan meters / robot speed, summed over route legs)";
  j["summary_rows"] = "cost is the mean, min_cost/max_cost the extremes, robots and visits are means";
  j["optimum_cost"] = "exact optimum, present only for instances with at most 8 tasks and 3 robots";
  j["timing"] = "solver only: monotonic clock around the solve call, single run, no warmup; "
                "excludes parsing, generation, validation and serialization; kept out of the results CSV";
  return j.dump(2) + "\n";
}

}  // namespace mrta
