#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <itags/bench.hpp>
#include <itags/io.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace itags;
using namespace itags::testing;

namespace {

const ScenarioTable& scenario()
{
  static const ScenarioTable table =
    load_scenario(std::string(ITAGS_DATA_DIR) + "/emergency.json");
  return table;
}

GeneratorParams small(std::uint64_t seed)
{
  GeneratorParams p;
  p.scenario = scenario();
  p.robots_min = 2;
  p.robots_max = 3;
  p.tasks_min = 2;
  p.tasks_max = 4;
  p.seed = seed;
  return p;
}

std::vector<NamedProblem> small_suite(std::size_t count)
{
  std::vector<NamedProblem> problems;
  for (std::size_t k = 0; k < count; ++k)
    problems.push_back({"p" + std::to_string(k), generate_problem(small(k))});
  return problems;
}

RunConfig named(std::string name, double alpha, bool sequential = false)
{
  RunConfig c;
  c.name = std::move(name);
  c.search.alpha = alpha;
  c.search.time_limit_seconds = 20.0;
  c.sequential = sequential;
  return c;
}

} // namespace

TEST_CASE("scenario table loads")
{
  const ScenarioTable& s = scenario();
  CHECK(s.traits.size() == 4);
  CHECK(s.archetypes.size() == 4);
  CHECK(s.task_kinds.count("rescue") == 1);
  CHECK(s.task_kinds.count("deliver") == 1);
  for (const auto& a : s.archetypes)
  {
    CHECK(a.traits.size() == s.traits.size());
    CHECK(a.speed > 0.0);
  }
  CHECK_THROWS((void)parse_scenario("{\"traits\": []}"));
}

TEST_CASE("generation is deterministic in the params")
{
  for (std::uint64_t seed = 0; seed < 5; ++seed)
  {
    GeneratorParams p;
    p.scenario = scenario();
    p.seed = seed;
    CHECK(save_problem(generate_problem(p)) ==
      save_problem(generate_problem(p)));
  }
  GeneratorParams a;
  a.scenario = scenario();
  GeneratorParams b = a;
  b.seed = 1;
  CHECK(save_problem(generate_problem(a)) != save_problem(generate_problem(b)));
}

TEST_CASE("generated problems respect the ranges and validate")
{
  for (std::uint64_t seed = 0; seed < 30; ++seed)
  {
    GeneratorParams p;
    p.scenario = scenario();
    p.seed = seed;
    const ProblemDomain d = generate_problem(p);
    CHECK(validate_domain(d).empty());
    CHECK(d.robot_count() >= 4);
    CHECK(d.robot_count() <= 6);
    CHECK(d.task_count() >= 6);
    CHECK(d.task_count() <= 12);
    // every requirement is within the whole team's reach
    const Matrix& q = d.robot_traits();
    const Matrix& y = d.desired_traits();
    for (std::size_t m = 0; m < y.rows(); ++m)
    {
      for (std::size_t u = 0; u < y.cols(); ++u)
      {
        double team = 0.0;
        for (std::size_t n = 0; n < q.rows(); ++n)
          team += q(n, u);
        CHECK(y(m, u) <= team);
      }
    }
  }
}

TEST_CASE("degenerate robot range gives that many robots")
{
  GeneratorParams p;
  p.scenario = scenario();
  p.robots_min = 6;
  p.robots_max = 6;
  for (std::uint64_t seed = 0; seed < 5; ++seed)
  {
    p.seed = seed;
    CHECK(generate_problem(p).robot_count() == 6);
  }
}

TEST_CASE("bad generator params are rejected")
{
  GeneratorParams p;
  p.scenario = scenario();
  p.robots_min = 5;
  p.robots_max = 4;
  CHECK_THROWS_AS((void)generate_problem(p), std::invalid_argument);
  p = GeneratorParams{};
  p.scenario = scenario();
  p.robots_min = 0;
  CHECK_THROWS_AS((void)generate_problem(p), std::invalid_argument);
}

TEST_CASE("small generated problems are solved and verified")
{
  for (std::uint64_t seed = 0; seed < 10; ++seed)
  {
    const ProblemDomain d = generate_problem(small(seed));
    SearchConfig c;
    c.time_limit_seconds = 20.0;
    const SearchResult r = itags::itags(d, c);
    REQUIRE(r.solved());
    CHECK(verify_solution(d, *r.solution).empty());
  }
}

TEST_CASE("run configs parse")
{
  const auto configs = parse_run_configs(R"([
    {"name": "a", "alpha": 0.25, "node_limit": 50, "time_limit": 3},
    {"name": "s", "sequential": true, "planner": "prm", "seed": 7}])");
  REQUIRE(configs.size() == 2);
  CHECK(configs[0].search.alpha == 0.25);
  CHECK(configs[0].search.node_limit == 50);
  CHECK(configs[0].search.time_limit_seconds == 3.0);
  CHECK(configs[1].sequential);
  CHECK(configs[1].search.planner == PlannerKind::LazyPrm);
  CHECK(configs[1].search.seed == 7);
  CHECK_THROWS((void)parse_run_configs(R"([{"alpha": 0.5}])"));
  CHECK_THROWS((void)parse_run_configs(R"([{"name": "x", "planner": "rrt"}])"));
}

TEST_CASE("one problem and one config give one self-normalized row")
{
  const auto problems = small_suite(1);
  const auto report = run_benchmark(problems, {named("base", 0.5)});
  REQUIRE(report.rows.size() == 1);
  const ReportRow& row = report.rows[0];
  CHECK(row.problem == "p0");
  CHECK(row.config == "base");
  REQUIRE(row.metrics.solved);
  CHECK(row.outcome.empty());
  CHECK(row.normalized_makespan == 0.0);
  CHECK(row.normalized_nodes_visited == 0.0);
  CHECK(row.normalized_nodes_expanded == 0.0);
  CHECK(row.normalized_compute_seconds == 0.0);
  CHECK(report.baseline == "base");
}

TEST_CASE("benchmark rows, normalization and summaries")
{
  const auto problems = small_suite(4);
  const std::vector<RunConfig> configs{
    named("itags", 0.5), named("sequential", 0.5, true), named("apr", 1.0)};
  const auto report = run_benchmark(problems, configs);
  CHECK(report.rows.size() == problems.size() * configs.size());
  REQUIRE(report.summaries.size() == 3);

  for (const auto& row : report.rows)
  {
    const ReportRow* base = nullptr;
    for (const auto& other : report.rows)
      if (other.problem == row.problem && other.config == "itags")
        base = &other;
    REQUIRE(base != nullptr);
    if (row.metrics.solved && base->metrics.solved)
    {
      REQUIRE(row.normalized_makespan.has_value());
      CHECK(*row.normalized_makespan ==
        doctest::Approx(row.metrics.makespan / base->metrics.makespan - 1.0));
    }
    else
    {
      CHECK_FALSE(row.normalized_makespan.has_value());
    }
  }

  const ConfigSummary& s = report.summaries[0];
  CHECK(s.config == "itags");
  CHECK(s.runs == problems.size());
  double total = 0.0;
  std::size_t solved = 0;
  for (const auto& row : report.rows)
    if (row.config == "itags" && row.metrics.solved)
    {
      total += row.metrics.makespan;
      ++solved;
    }
  CHECK(s.solved == solved);
  CHECK(s.makespan.mean == doctest::Approx(total / static_cast<double>(solved)));
}

TEST_CASE("run failures become rows")
{
  TaskNetwork net;
  net.tasks = {task_at({1, 1}, {1, 1}, {1.0}, 1.0)};
  // invalid: negative speed
  std::vector<NamedProblem> problems{
    {"bad", make_domain({robot_at({0, 0}, {1.0}, -1.0)}, net)}};
  const auto report = run_benchmark(problems, {named("x", 0.5)});
  REQUIRE(report.rows.size() == 1);
  CHECK_FALSE(report.rows[0].metrics.solved);
  CHECK(report.rows[0].outcome.rfind("error", 0) == 0);
}

TEST_CASE("ablation over alphas")
{
  const auto problems = small_suite(2);
  SearchConfig base;
  base.time_limit_seconds = 20.0;

  const auto single = run_ablation(problems, {0.5}, base);
  RunConfig same;
  same.name = ablation_label(0.5);
  same.search = base;
  const auto direct = run_benchmark(problems, {same});
  REQUIRE(single.rows.size() == direct.rows.size());
  for (std::size_t k = 0; k < single.rows.size(); ++k)
  {
    CHECK(single.rows[k].config == direct.rows[k].config);
    CHECK(single.rows[k].metrics.nodes_visited ==
      direct.rows[k].metrics.nodes_visited);
    CHECK(single.rows[k].metrics.makespan == direct.rows[k].metrics.makespan);
  }

  const std::vector<double> alphas{0, 0.25, 0.5, 0.75, 1};
  const auto full = run_ablation(problems, alphas, base);
  CHECK(full.rows.size() == alphas.size() * problems.size());
  CHECK(full.baseline == ablation_label(0.5));
  CHECK_FALSE(full.notes.empty());
  CHECK(ablation_label(0.25) == "alpha=0.25");
}

TEST_CASE("csv output")
{
  const auto report = run_benchmark(small_suite(1), {named("base", 0.5)});
  std::istringstream csv(report_csv(report));
  std::string line;
  do
    std::getline(csv, line);
  while (line.rfind("# ", 0) == 0);
  CHECK(line == "problem,config,solved,compute_seconds,nodes_expanded,"
    "nodes_visited,makespan,normalized_compute_seconds,"
    "normalized_nodes_expanded,normalized_nodes_visited,normalized_makespan,"
    "outcome");
  std::size_t data = 0;
  while (std::getline(csv, line))
    if (!line.empty())
      ++data;
  CHECK(data == 1);
  CHECK_FALSE(summary_csv(report).empty());
}

TEST_CASE("problem directories load in name order")
{
  const auto dir = std::filesystem::temp_directory_path() / "itags_bench_dir";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto problems = small_suite(2);
  std::ofstream(dir / "b.json") << save_problem(problems[0].domain);
  std::ofstream(dir / "a.json") << save_problem(problems[1].domain);
  std::ofstream(dir / "notes.txt") << "ignored";
  const auto loaded = load_problem_dir(dir.string());
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].name == "a");
  CHECK(loaded[0].domain == problems[1].domain);
  CHECK(loaded[1].name == "b");
  std::filesystem::remove_all(dir);
}
