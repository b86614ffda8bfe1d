#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mrta/datagen.hpp"
#include "mrta/error.hpp"
#include "mrta/model.hpp"

namespace mrta {

struct MannWhitneyResult {
  double u;        // U of the first sample
  double p_value;  // two-sided
};

/// Two-sided Mann-Whitney U test. Exact (tie-aware permutation distribution)
/// when the pooled size is at most 20, otherwise the normal approximation
/// with tie and continuity corrections.
MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

enum class Algorithm { DoneCpta, Ancar };

std::string_view to_string(Algorithm algo);
std::optional<Algorithm> parse_algorithm(std::string_view text);

/// Seed of variation k: splitmix64_mix(base_seed + k).
constexpr std::uint64_t variation_seed(std::uint64_t base_seed, std::size_t k) {
  return splitmix64_mix(base_seed + k);
}

/// Runs one algorithm; the returned solution carries `seed`.
Solution run_algorithm(const Instance& inst, Algorithm algo, std::uint64_t seed = 0);

/// Either a fixed instance, or a CVRP base from which each variation
/// generates a fresh `family` instance.
struct InstanceSource {
  Instance instance;
  std::optional<Family> family;
};

struct ExperimentConfig {
  std::vector<InstanceSource> sources;
  std::vector<Algorithm> algorithms = {Algorithm::DoneCpta, Algorithm::Ancar};
  std::size_t variations = 30;
  std::uint64_t base_seed = 0;
  std::vector<RobotCatalogEntry> catalog = default_catalog();
  /// When set, every solution is written there and referenced from the CSV.
  std::optional<std::filesystem::path> solution_dir;
};

struct RunRecord {
  std::string instance;
  std::size_t source = 0;
  Algorithm algorithm = Algorithm::DoneCpta;
  std::size_t variation = 0;
  std::uint64_t seed = 0;
  Seconds cost = 0.0;
  std::int64_t used_robots = 0;
  std::int64_t depot_visits = 0;
  Seconds wall_time = 0.0;
  std::optional<Seconds> optimum;
  std::string solution_file;
};

struct SummaryRow {
  std::string instance;
  Algorithm algorithm = Algorithm::DoneCpta;
  std::size_t variations = 0;
  Seconds mean_cost = 0.0;
  Seconds min_cost = 0.0;
  Seconds max_cost = 0.0;
  Seconds mean_wall_time = 0.0;
  double mean_used_robots = 0.0;
  double mean_depot_visits = 0.0;
  std::optional<Seconds> mean_optimum;
  std::uint64_t seed = 0;  // the experiment's base seed
};

struct ExperimentResult {
  std::vector<RunRecord> runs;        // ordered by (source, algorithm, variation)
  std::vector<SummaryRow> summaries;  // one per (source, algorithm)
};

/// A solution failed validation; `seed()` reproduces the run.
class ValidationFailure : public Error {
 public:
  ValidationFailure(const std::string& message, std::uint64_t seed) : Error(message), seed_(seed) {}
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
};

/// Generates variations, runs every algorithm, validates each solution and
/// aggregates. Instances small enough for brute_force_optimum also get the
/// optimum cost. Throws ValidationFailure on any invalid solution.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

inline constexpr int kCsvSchemaVersion = 1;

/// Deterministic results table: run rows, each group followed by its summary
/// row. Wall times are deliberately absent (see write_timing_csv).
std::string write_results_csv(const ExperimentResult& result);
/// Per-run and mean solver wall times.
std::string write_timing_csv(const ExperimentResult& result);
/// Schema version, column meanings and timing scope.
std::string write_metadata_json(const ExperimentConfig& cfg);

}  // namespace mrta
