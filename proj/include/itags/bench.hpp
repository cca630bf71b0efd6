#ifndef ITAGS__BENCH_HPP
#define ITAGS__BENCH_HPP

#include <itags/domain.hpp>
#include <itags/search.hpp>
#include <itags/solution.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace itags {

/// A robot type of the emergency-response scenario.
struct Archetype
{
  std::string name;
  std::vector<double> traits;
  double speed = 1.0;
  /// Obstacle classes that block this type.
  std::vector<std::string> blocked_by;
};

struct ObstacleClass
{
  std::string name;
  std::size_t count_min = 0;
  std::size_t count_max = 0;
  double size_min = 1.0;
  double size_max = 1.0;
  /// Closed square ring of walls instead of a solid block.
  bool enclosure = false;
  double wall = 1.0;
};

struct TaskKind
{
  /// Traits the task may require.
  std::vector<std::string> traits;
  double duration_min = 1.0;
  double duration_max = 1.0;
};

/// Scenario description, loaded from a JSON file.
struct ScenarioTable
{
  std::vector<std::string> traits;
  std::vector<Archetype> archetypes;
  std::vector<ObstacleClass> obstacles;
  /// Keys: rescue, deliver, extinguish, rebuild.
  std::map<std::string, TaskKind> task_kinds;
  /// Chance that a site is placed inside an enclosure.
  double enclosed_probability = 0.0;
  /// Requirement scale range applied to the witness coalition's traits.
  double scale_min = 0.5;
  double scale_max = 1.0;
  /// Requirements are rounded down to a multiple of this.
  double requirement_step = 0.01;
};

ScenarioTable parse_scenario(std::string_view json_text);
ScenarioTable load_scenario(const std::string& path);

struct GeneratorParams
{
  std::size_t robots_min = 4;
  std::size_t robots_max = 6;
  std::size_t tasks_min = 6;
  std::size_t tasks_max = 12;
  double map_width = 100.0;
  double map_height = 100.0;
  std::uint64_t seed = 0;
  ScenarioTable scenario;
};

class GenerationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Random emergency-response problem: survivors (rescue then deliver
/// medicine), fires and damaged buildings on a map with obstacles. Every
/// task's requirement is a scaled-down sum of a sub-coalition that can reach
/// it, so a satisfying and motion-feasible allocation always exists.
/// Deterministic in the params.
ProblemDomain generate_problem(const GeneratorParams& params);

struct RunConfig
{
  std::string name;
  SearchConfig search;
  bool sequential = false;
};

/// JSON list of {"name", "alpha", "sequential", "node_limit", "time_limit",
/// "planner", "seed"}; only "name" is required.
std::vector<RunConfig> parse_run_configs(std::string_view json_text);

struct NamedProblem
{
  std::string name;
  ProblemDomain domain;
};

/// Every *.json file in a directory, sorted by file name.
std::vector<NamedProblem> load_problem_dir(const std::string& directory);

struct ReportRow
{
  std::string problem;
  std::string config;
  RunMetrics metrics;
  /// Empty when solved.
  std::string outcome;
  /// metric / baseline - 1; set when both runs solved.
  std::optional<double> normalized_compute_seconds;
  std::optional<double> normalized_nodes_expanded;
  std::optional<double> normalized_nodes_visited;
  std::optional<double> normalized_makespan;
};

struct MetricStats
{
  double mean = 0.0;
  double median = 0.0;
};

struct ConfigSummary
{
  std::string config;
  std::size_t runs = 0;
  std::size_t solved = 0;
  /// Over solved runs.
  MetricStats compute_seconds;
  MetricStats nodes_expanded;
  MetricStats nodes_visited;
  MetricStats makespan;
  /// Over runs with a normalized value.
  MetricStats normalized_makespan;
  MetricStats normalized_nodes_visited;
};

struct BenchmarkReport
{
  std::vector<std::string> configs;
  std::string baseline;
  std::vector<ReportRow> rows;
  std::vector<ConfigSummary> summaries;
  /// Free-form header lines, e.g. the alpha convention.
  std::vector<std::string> notes;
};

SearchResult run_config(const ProblemDomain& domain, const RunConfig& config);

/// Runs every config on every problem. Failures become unsolved rows.
BenchmarkReport run_benchmark(
  const std::vector<NamedProblem>& problems,
  const std::vector<RunConfig>& configs,
  std::size_t baseline = 0);

/// ITAGS at each alpha, otherwise `base`. The baseline is alpha = 0.5 when
/// present, else the first alpha.
BenchmarkReport run_ablation(
  const std::vector<NamedProblem>& problems,
  const std::vector<double>& alphas,
  const SearchConfig& base = {});

/// Config name used for an alpha in ablation reports.
std::string ablation_label(double alpha);

std::string report_csv(const BenchmarkReport& report);
std::string summary_csv(const BenchmarkReport& report);

} // namespace itags

#endif // ITAGS__BENCH_HPP
