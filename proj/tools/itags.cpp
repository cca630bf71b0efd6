// Command-line front end: solve, generate, bench, ablate.

#include <itags/bench.hpp>
#include <itags/io.hpp>
#include <itags/search.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifndef ITAGS_DATA_DIR
#define ITAGS_DATA_DIR "data"
#endif

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_unsolved = 2;

void emit(const std::string& path, const std::string& text)
{
  if (path.empty() || path == "-")
    std::cout << text;
  else
    itags::write_file(path, text);
}

/// "A:B" or "A".
std::pair<std::size_t, std::size_t> parse_range(const std::string& text)
{
  const auto colon = text.find(':');
  const std::size_t lo = std::stoul(text.substr(0, colon));
  const std::size_t hi =
    colon == std::string::npos ? lo : std::stoul(text.substr(colon + 1));
  return {lo, hi};
}

std::vector<double> parse_list(const std::string& text)
{
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    values.push_back(std::stod(item));
  return values;
}

struct SolveOptions
{
  std::string problem;
  std::string output;
  double alpha = 0.5;
  std::string planner = "grid";
  std::uint64_t seed = 0;
  std::size_t node_limit = 100000;
  double time_limit = 300.0;
  bool sequential = false;
  bool timing = false;
};

int run_solve(const SolveOptions& o)
{
  const itags::ProblemDomain domain =
    itags::load_problem(itags::read_file(o.problem));

  itags::SearchConfig config;
  config.alpha = o.alpha;
  config.planner = o.planner == "prm" ? itags::PlannerKind::LazyPrm
                                      : itags::PlannerKind::Grid;
  config.seed = o.seed;
  config.node_limit = o.node_limit;
  config.time_limit_seconds = o.time_limit;

  const itags::SearchResult result = o.sequential
    ? itags::itags_sequential(domain, config)
    : itags::itags(domain, config);

  std::cerr << "nodes_expanded=" << result.metrics.nodes_expanded
            << " nodes_visited=" << result.metrics.nodes_visited
            << " compute_seconds=" << result.metrics.compute_seconds << "\n";
  if (!result.solved())
  {
    std::cerr << "unsolved: " << itags::to_string(*result.reason) << "\n";
    return exit_unsolved;
  }
  std::cerr << "makespan=" << result.metrics.makespan << "\n";
  emit(o.output,
    itags::save_solution(*result.solution, result.metrics, o.timing));
  return exit_ok;
}

struct GenerateOptions
{
  std::string robots = "4:6";
  std::string tasks = "6:12";
  std::uint64_t seed = 0;
  std::string scenario = ITAGS_DATA_DIR "/emergency.json";
  std::string output;
};

int run_generate(const GenerateOptions& o)
{
  itags::GeneratorParams params;
  std::tie(params.robots_min, params.robots_max) = parse_range(o.robots);
  std::tie(params.tasks_min, params.tasks_max) = parse_range(o.tasks);
  params.seed = o.seed;
  params.scenario = itags::load_scenario(o.scenario);
  emit(o.output, itags::save_problem(itags::generate_problem(params)));
  return exit_ok;
}

void write_report(const itags::BenchmarkReport& report, const std::string& out)
{
  emit(out, itags::report_csv(report));
  std::cerr << itags::summary_csv(report);
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Trait-based multi-robot task allocation, scheduling and motion planning"};
  app.require_subcommand(1);

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a problem file");
  solve_cmd->add_option("problem", solve.problem, "Problem JSON")->required();
  solve_cmd->add_option("--alpha", solve.alpha, "Weight on APR")
  ->check(CLI::Range(0.0, 1.0));
  solve_cmd->add_option("--planner", solve.planner, "Motion planner")
  ->check(CLI::IsMember({"grid", "prm"}));
  solve_cmd->add_option("--seed", solve.seed, "Random seed");
  solve_cmd->add_option("--node-limit", solve.node_limit, "Max nodes visited");
  solve_cmd->add_option("--time-limit", solve.time_limit, "Seconds");
  solve_cmd->add_flag("--sequential", solve.sequential,
    "Sequential baseline: schedule only satisfying allocations");
  solve_cmd->add_flag("--timing", solve.timing,
    "Record wall time in the solution file");
  solve_cmd->add_option("-o,--output", solve.output, "Solution JSON");

  GenerateOptions generate;
  auto* generate_cmd =
    app.add_subcommand("generate", "Generate a random problem");
  generate_cmd->add_option("--robots", generate.robots, "Range A:B");
  generate_cmd->add_option("--tasks", generate.tasks, "Range A:B");
  generate_cmd->add_option("--seed", generate.seed, "Random seed");
  generate_cmd->add_option("--scenario", generate.scenario,
    "Scenario table JSON")->check(CLI::ExistingFile);
  generate_cmd->add_option("-o,--output", generate.output, "Problem JSON");

  std::string bench_dir, configs_file, bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "Run configs over problems");
  bench_cmd->add_option("dir", bench_dir, "Problem directory")
  ->required()->check(CLI::ExistingDirectory);
  bench_cmd->add_option("--configs", configs_file, "Config list JSON")
  ->required()->check(CLI::ExistingFile);
  bench_cmd->add_option("-o,--output", bench_out, "Report CSV");

  std::string ablate_dir, alphas = "0,0.25,0.5,0.75,1", ablate_out;
  std::size_t ablate_nodes = 100000;
  double ablate_time = 300.0;
  auto* ablate_cmd = app.add_subcommand("ablate", "Sweep alpha");
  ablate_cmd->add_option("dir", ablate_dir, "Problem directory")
  ->required()->check(CLI::ExistingDirectory);
  ablate_cmd->add_option("--alphas", alphas, "Comma-separated weights");
  ablate_cmd->add_option("--node-limit", ablate_nodes, "Max nodes visited");
  ablate_cmd->add_option("--time-limit", ablate_time, "Seconds per run");
  ablate_cmd->add_option("-o,--output", ablate_out, "Report CSV");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e)
  {
    return app.exit(e) == 0 ? exit_ok : exit_error;
  }

  try
  {
    if (*solve_cmd)
      return run_solve(solve);
    if (*generate_cmd)
      return run_generate(generate);
    if (*bench_cmd)
    {
      const auto problems = itags::load_problem_dir(bench_dir);
      const auto configs =
        itags::parse_run_configs(itags::read_file(configs_file));
      write_report(itags::run_benchmark(problems, configs), bench_out);
      return exit_ok;
    }
    if (*ablate_cmd)
    {
      itags::SearchConfig base;
      base.node_limit = ablate_nodes;
      base.time_limit_seconds = ablate_time;
      const auto problems = itags::load_problem_dir(ablate_dir);
      write_report(
        itags::run_ablation(problems, parse_list(alphas), base), ablate_out);
      return exit_ok;
    }
  }
  catch (const std::exception& e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return exit_error;
  }
  return exit_error;
}
