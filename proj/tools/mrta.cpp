// mrta: generate, solve, validate and benchmark warehouse task-allocation instances.
//
// Exit codes: 0 success, 1 validation failure (bad instance, solution or
// run), 2 usage or I/O error.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mrta/bench.hpp"
#include "mrta/datagen.hpp"
#include "mrta/error.hpp"
#include "mrta/io.hpp"
#include "mrta/oracle.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

mrta::Family family_or_throw(const std::string& text) {
  if (auto f = mrta::parse_family(text)) return *f;
  throw UsageError("unknown family '" + text + "' (expected XMT, RMT, WMT or SMT)");
}

mrta::Algorithm algorithm_or_throw(const std::string& text) {
  if (auto a = mrta::parse_algorithm(text)) return *a;
  throw UsageError("unknown algorithm '" + text + "' (expected done-cpta or a-ncar)");
}

std::string read_or_usage(const std::string& path) {
  try {
    return mrta::read_text(path);
  } catch (const mrta::Error& e) {
    throw UsageError(e.what());
  }
}

int print_report(const mrta::ValidationReport& report, const std::string& what) {
  if (report.ok()) {
    std::cout << what << ": ok\n";
    return kOk;
  }
  std::cout << what << ": " << report.violations.size() << " violation(s)\n";
  for (const auto& v : report.violations) std::cout << "  " << v << '\n';
  return kInvalid;
}

struct BaseOptions {
  std::string base_path;
  std::size_t synth_tasks = 0;
  std::size_t synth_robots = 0;
  std::uint64_t synth_seed = 0;

  void add(CLI::App* cmd) {
    cmd->add_option("--base", base_path, "CVRP base instance file ('-' for stdin)");
    cmd->add_option("--synth-tasks", synth_tasks, "Synthesize an X-style base with this many tasks");
    cmd->add_option("--synth-robots", synth_robots, "Robot count of the synthesized base")->default_val(1);
    cmd->add_option("--synth-seed", synth_seed, "Seed of the synthesized base")->default_val(0);
  }

  mrta::Instance load() const {
    if (!base_path.empty()) return mrta::parse_instance(read_or_usage(base_path));
    if (synth_tasks > 0) return mrta::synthesize_base(synth_tasks, synth_robots, synth_seed);
    throw UsageError("give --base or --synth-tasks");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-robot task allocation for warehouse picking"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string out_path = "-";
  std::string family_text = "SMT";
  std::string catalog_path;
  BaseOptions gen_base;
  auto* gen = app.add_subcommand("generate", "Derive a family instance from a CVRP base");
  gen_base.add(gen);
  gen->add_option("--family", family_text, "XMT, RMT, WMT or SMT")->default_val("SMT");
  gen->add_option("--seed", seed, "Generation seed")->default_val(0);
  gen->add_option("--catalog", catalog_path, "Robot catalog CSV (default: built-in)");
  gen->add_option("--out", out_path, "Output instance file")->default_val("-");

  std::string instance_path;
  std::string algo_text = "done-cpta";
  auto* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("instance", instance_path, "Instance file ('-' for stdin)")->required();
  solve->add_option("--algo", algo_text, "done-cpta or a-ncar")->default_val("done-cpta");
  solve->add_option("--seed", seed, "Seed recorded in the solution")->default_val(0);
  solve->add_option("--out", out_path, "Output solution file")->default_val("-");

  std::string solution_path;
  auto* validate = app.add_subcommand("validate", "Check an instance and optionally a solution");
  validate->add_option("instance", instance_path, "Instance file")->required();
  validate->add_option("solution", solution_path, "Solution file");

  auto* oracle = app.add_subcommand("oracle", "Exact optimum of a tiny instance");
  oracle->add_option("instance", instance_path, "Instance file ('-' for stdin)")->required();
  oracle->add_option("--out", out_path, "Output solution file")->default_val("-");

  std::vector<std::string> bench_files;
  std::vector<std::string> bench_algos;
  std::size_t variations = 30;
  std::string bench_family;
  std::string solutions_dir;
  BaseOptions bench_base;
  auto* bench = app.add_subcommand("bench", "Run the comparison protocol and write a CSV");
  bench->add_option("instances", bench_files, "Instance files (with --family: CVRP bases)");
  bench_base.add(bench);
  bench->add_option("--algo", bench_algos, "Algorithms to run (repeatable; default both)");
  bench->add_option("--variations", variations, "Variations per instance")->default_val(30);
  bench->add_option("--seed", seed, "Base seed")->default_val(0);
  bench->add_option("--family", bench_family, "Generate a fresh instance of this family per variation");
  bench->add_option("--catalog", catalog_path, "Robot catalog CSV (default: built-in)");
  bench->add_option("--solutions", solutions_dir, "Directory for per-run solution files");
  bench->add_option("--out", out_path, "Results CSV; timing and metadata go next to it")->default_val("-");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      mrta::GenSpec spec{gen_base.load(), family_or_throw(family_text), seed};
      if (!catalog_path.empty()) spec.catalog = mrta::parse_catalog(read_or_usage(catalog_path));
      mrta::write_text(out_path, mrta::write_instance(mrta::generate_instance(spec)));
      return kOk;
    }
    if (*solve) {
      const mrta::Instance inst = mrta::parse_instance(read_or_usage(instance_path));
      const mrta::Solution sol = mrta::run_algorithm(inst, algorithm_or_throw(algo_text), seed);
      const mrta::ValidationReport report = mrta::validate_solution(inst, sol);
      mrta::write_text(out_path, mrta::write_solution(sol));
      if (!report.ok()) return print_report(report, "solution");
      std::cerr << inst.name << " " << sol.algorithm << " cost " << mrta::format_double(sol.total_cost)
                << " s, " << sol.used_robots << " robots, " << sol.depot_visits << " station visits\n";
      return kOk;
    }
    if (*validate) {
      const mrta::Instance inst = mrta::parse_instance(read_or_usage(instance_path));
      std::cout << "instance: ok\n";
      if (solution_path.empty()) return kOk;
      const mrta::Solution sol = mrta::parse_solution(read_or_usage(solution_path));
      return print_report(mrta::validate_solution(inst, sol), "solution");
    }
    if (*oracle) {
      const mrta::Instance inst = mrta::parse_instance(read_or_usage(instance_path));
      mrta::write_text(out_path, mrta::write_solution(mrta::brute_force_optimum(inst)));
      return kOk;
    }
    if (*bench) {
      mrta::ExperimentConfig cfg;
      cfg.variations = variations;
      cfg.base_seed = seed;
      if (!catalog_path.empty()) cfg.catalog = mrta::parse_catalog(read_or_usage(catalog_path));
      if (!bench_algos.empty()) {
        cfg.algorithms.clear();
        for (const auto& a : bench_algos) cfg.algorithms.push_back(algorithm_or_throw(a));
      }
      std::optional<mrta::Family> family;
      if (!bench_family.empty()) family = family_or_throw(bench_family);
      for (const auto& f : bench_files) {
        cfg.sources.push_back({mrta::parse_instance(read_or_usage(f)), family});
      }
      if (!bench_base.base_path.empty() || bench_base.synth_tasks > 0) {
        cfg.sources.push_back({bench_base.load(), family});
      }
      if (cfg.sources.empty()) throw UsageError("bench needs instance files, --base or --synth-tasks");
      if (!solutions_dir.empty()) cfg.solution_dir = solutions_dir;

      const mrta::ExperimentResult result = mrta::run_experiment(cfg);
      mrta::write_text(out_path, mrta::write_results_csv(result));
      if (out_path != "-") {
        mrta::write_text(out_path + ".timing.csv", mrta::write_timing_csv(result));
        mrta::write_text(out_path + ".meta.json", mrta::write_metadata_json(cfg));
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const mrta::ValidationFailure& e) {
    std::cerr << "validation failure (seed " << e.seed() << "): " << e.what() << '\n';
    return kInvalid;
  } catch (const mrta::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
