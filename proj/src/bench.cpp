#include <itags/bench.hpp>

#include <itags/heuristics.hpp>
#include <itags/io.hpp>
#include <itags/motion.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <random>
#include <set>
#include <sstream>

namespace itags {

using nlohmann::json;

namespace {

template <typename T>
T get_or(const json& node, const char* key, T fallback)
{
  const auto it = node.find(key);
  return it == node.end() ? fallback : it->get<T>();
}

json parse_document(std::string_view text)
{
  try
  {
    return json::parse(text.begin(), text.end());
  }
  catch (const json::parse_error& e)
  {
    throw ParseError("document", e.what());
  }
}

std::pair<double, double> range_of(const json& node, const char* key)
{
  const json& r = node.at(key);
  if (!r.is_array() || r.size() != 2)
    throw ParseError(key, "expected [min, max]");
  const double lo = r[0].get<double>();
  const double hi = r[1].get<double>();
  if (lo > hi)
    throw ParseError(key, "min above max");
  return {lo, hi};
}

} // namespace

ScenarioTable parse_scenario(std::string_view json_text)
{
  const json doc = parse_document(json_text);
  ScenarioTable table;
  try
  {
    table.traits = doc.at("traits").get<std::vector<std::string>>();
    for (const auto& [name, a] : doc.at("archetypes").items())
    {
      Archetype archetype;
      archetype.name = name;
      archetype.speed = a.at("speed").get<double>();
      archetype.blocked_by =
        get_or(a, "blocked_by", std::vector<std::string>{});
      const json& traits = a.at("traits");
      for (const auto& trait : table.traits)
        archetype.traits.push_back(get_or(traits, trait.c_str(), 0.0));
      table.archetypes.push_back(std::move(archetype));
    }
    for (const auto& [name, o] : doc.at("obstacles").items())
    {
      ObstacleClass cls;
      cls.name = name;
      const auto [count_lo, count_hi] = range_of(o, "count");
      cls.count_min = static_cast<std::size_t>(count_lo);
      cls.count_max = static_cast<std::size_t>(count_hi);
      std::tie(cls.size_min, cls.size_max) = range_of(o, "size");
      cls.enclosure = get_or(o, "enclosure", false);
      cls.wall = get_or(o, "wall", 1.0);
      table.obstacles.push_back(std::move(cls));
    }
    for (const auto& [name, k] : doc.at("task_kinds").items())
    {
      TaskKind kind;
      kind.traits = k.at("traits").get<std::vector<std::string>>();
      std::tie(kind.duration_min, kind.duration_max) =
        range_of(k, "duration");
      table.task_kinds[name] = std::move(kind);
    }
    table.enclosed_probability = get_or(doc, "enclosed_probability", 0.0);
    table.requirement_step = get_or(doc, "requirement_step", 0.01);
    if (!(table.requirement_step > 0.0))
      throw ParseError("requirement_step", "must be positive");
    if (doc.contains("requirement_scale"))
      std::tie(table.scale_min, table.scale_max) =
        range_of(doc, "requirement_scale");
  }
  catch (const json::exception& e)
  {
    throw ParseError("scenario", e.what());
  }

  for (const char* kind : {"rescue", "deliver", "extinguish", "rebuild"})
  {
    if (!table.task_kinds.count(kind))
      throw ParseError("task_kinds", std::string("missing kind '") + kind + "'");
    for (const auto& trait : table.task_kinds[kind].traits)
    {
      if (std::find(table.traits.begin(), table.traits.end(), trait) ==
        table.traits.end())
        throw ParseError("task_kinds", "unknown trait '" + trait + "'");
    }
  }
  if (table.archetypes.empty())
    throw ParseError("archetypes", "empty archetype table");
  return table;
}

ScenarioTable load_scenario(const std::string& path)
{
  return parse_scenario(read_file(path));
}

namespace {

constexpr std::size_t max_placement_attempts = 200;
/// Lattice spacing, as a fraction of the map diagonal, used to certify
/// reachability while generating.
constexpr double reachability_resolution = 0.01;

double round_to(double value, double step)
{
  return std::floor(value / step + 1e-9) * step;
}

class Generator
{
public:
  explicit Generator(const GeneratorParams& params)
  : _params(params), _table(params.scenario), _rng(params.seed)
  {
    _bounds = Bounds{0.0, 0.0, params.map_width, params.map_height};
  }

  ProblemDomain run()
  {
    place_obstacles();
    build_spaces();
    place_robots();
    place_tasks();

    std::vector<Robot> robots = _robots;
    ProblemDomain domain(
      _table.traits, _network, std::move(robots), _spaces);
    const auto violations = validate_domain(domain);
    if (!violations.empty())
    {
      throw GenerationError(
        "generated domain failed validation: " + violations.front().message);
    }
    return domain;
  }

private:
  struct Site
  {
    Point point;
    bool enclosed = false;
  };

  double uniform(double lo, double hi)
  {
    if (lo >= hi)
      return lo;
    return std::uniform_real_distribution<double>(lo, hi)(_rng);
  }

  std::size_t uniform_index(std::size_t lo, std::size_t hi)
  {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(_rng);
  }

  bool chance(double p) { return uniform(0.0, 1.0) < p; }

  double spacing() const
  {
    return reachability_resolution * _bounds.diagonal();
  }

  void place_obstacles()
  {
    for (const auto& cls : _table.obstacles)
    {
      const std::size_t count = uniform_index(cls.count_min, cls.count_max);
      for (std::size_t i = 0; i < count; ++i)
      {
        const double size = uniform(cls.size_min, cls.size_max);
        const double x0 = uniform(_bounds.x_min + 2.0, _bounds.x_max - size - 2.0);
        const double y0 = uniform(_bounds.y_min + 2.0, _bounds.y_max - size - 2.0);
        const double x1 = x0 + size;
        const double y1 = y0 + size;
        auto& polygons = _obstacles[cls.name];
        if (cls.enclosure)
        {
          const double t = cls.wall;
          polygons.push_back(rectangle(x0, y0, x1, y0 + t));
          polygons.push_back(rectangle(x0, y1 - t, x1, y1));
          polygons.push_back(rectangle(x0, y0 + t, x0 + t, y1 - t));
          polygons.push_back(rectangle(x1 - t, y0 + t, x1, y1 - t));
          _enclosures.push_back(
            Bounds{x0 + t + 0.5, y0 + t + 0.5, x1 - t - 0.5, y1 - t - 0.5});
        }
        else
        {
          polygons.push_back(rectangle(x0, y0, x1, y1));
        }
      }
    }
  }

  void build_spaces()
  {
    for (const auto& archetype : _table.archetypes)
    {
      ConfigurationSpace space;
      space.type_id = archetype.name;
      space.bounds = _bounds;
      for (const auto& cls : archetype.blocked_by)
      {
        const auto it = _obstacles.find(cls);
        if (it != _obstacles.end())
          space.obstacles.insert(
            space.obstacles.end(), it->second.begin(), it->second.end());
      }
      _spaces[archetype.name] = std::move(space);
    }
  }

  bool inside_enclosure(const Point& p) const
  {
    return std::any_of(_enclosures.begin(), _enclosures.end(),
      [&](const Bounds& b) {
        return p.x >= b.x_min - 1.0 && p.x <= b.x_max + 1.0 &&
        p.y >= b.y_min - 1.0 && p.y <= b.y_max + 1.0;
      });
  }

  bool free_for_all(const Point& p) const
  {
    return std::all_of(_spaces.begin(), _spaces.end(),
      [&](const auto& entry) { return entry.second.is_free(p); });
  }

  /// A point free for every robot type and outside every enclosure.
  Point open_point()
  {
    for (std::size_t attempt = 0; attempt < max_placement_attempts; ++attempt)
    {
      const Point p{
        std::round(uniform(_bounds.x_min + 1.0, _bounds.x_max - 1.0) * 10.0) / 10.0,
        std::round(uniform(_bounds.y_min + 1.0, _bounds.y_max - 1.0) * 10.0) / 10.0};
      if (free_for_all(p) && !inside_enclosure(p))
        return p;
    }
    throw GenerationError("could not place a configuration in free space");
  }

  Site site()
  {
    if (!_enclosures.empty() && chance(_table.enclosed_probability))
    {
      const Bounds& b = _enclosures[uniform_index(0, _enclosures.size() - 1)];
      for (std::size_t attempt = 0; attempt < max_placement_attempts; ++attempt)
      {
        const Point p{
          std::round(uniform(b.x_min, b.x_max) * 10.0) / 10.0,
          std::round(uniform(b.y_min, b.y_max) * 10.0) / 10.0};
        if (b.contains(p) && free_for_all_but_enclosures(p))
          return {p, true};
      }
    }
    return {open_point(), false};
  }

  bool free_for_all_but_enclosures(const Point& p) const
  {
    return std::any_of(_spaces.begin(), _spaces.end(),
      [&](const auto& entry) { return entry.second.is_free(p); });
  }

  void place_robots()
  {
    const std::size_t count =
      uniform_index(_params.robots_min, _params.robots_max);
    const std::size_t kinds = _table.archetypes.size();
    for (std::size_t n = 0; n < count; ++n)
    {
      const Archetype& archetype = n < kinds
        ? _table.archetypes[n]
        : _table.archetypes[uniform_index(0, kinds - 1)];
      Robot robot;
      robot.traits = archetype.traits;
      robot.speed = archetype.speed;
      robot.type_id = archetype.name;
      robot.initial_config = open_point();
      _robots.push_back(std::move(robot));
    }
  }

  bool reachable(const std::string& type, const Point& a, const Point& b)
  {
    if (a == b)
      return true;
    const ConfigurationSpace& space = _spaces.at(type);
    if (!space.is_free(a) || !space.is_free(b))
      return false;
    const MotionQuery query{a, b, SpaceSignature{{type}}};
    return plan_grid(query, space, spacing()).found();
  }

  /// Coalition-space reachability between two points.
  bool coalition_reachable(
    const std::vector<std::size_t>& members, const Point& a, const Point& b)
  {
    std::vector<Robot> team;
    for (auto n : members)
      team.push_back(_robots[n]);
    const SpaceSignature signature = coalition_signature(team);
    ConfigurationSpace space;
    space.bounds = _bounds;
    for (const auto& type : signature.type_ids)
    {
      const auto& obstacles = _spaces.at(type).obstacles;
      space.obstacles.insert(space.obstacles.end(), obstacles.begin(), obstacles.end());
    }
    if (!space.is_free(a) || !space.is_free(b))
      return false;
    if (a == b)
      return true;
    return plan_grid(MotionQuery{a, b, signature}, space, spacing()).found();
  }

  /// Requirement vector and witness for a task, nullopt when no robot can
  /// serve it.
  std::optional<std::vector<double>> requirements_for(
    const TaskKind& kind, const Point& from, const Point& to)
  {
    std::vector<std::size_t> relevant;
    for (const auto& trait : kind.traits)
    {
      const auto it =
        std::find(_table.traits.begin(), _table.traits.end(), trait);
      relevant.push_back(static_cast<std::size_t>(it - _table.traits.begin()));
    }

    std::vector<std::size_t> candidates;
    for (std::size_t n = 0; n < _robots.size(); ++n)
    {
      const Robot& robot = _robots[n];
      const bool useful = std::any_of(relevant.begin(), relevant.end(),
          [&](std::size_t u) { return robot.traits[u] > 0.0; });
      if (useful && reachable(robot.type_id, robot.initial_config, from) &&
        reachable(robot.type_id, from, to))
        candidates.push_back(n);
    }
    if (candidates.empty())
      return std::nullopt;

    std::shuffle(candidates.begin(), candidates.end(), _rng);
    std::vector<std::size_t> witness{candidates[0]};
    if (candidates.size() > 1 && chance(0.5))
    {
      std::vector<std::size_t> pair{candidates[0], candidates[1]};
      if (coalition_reachable(pair, from, to))
        witness = pair;
    }

    const double scale = uniform(_table.scale_min, _table.scale_max);
    std::vector<double> requirements(_table.traits.size(), 0.0);
    double total = 0.0;
    for (auto u : relevant)
    {
      double sum = 0.0;
      for (auto n : witness)
        sum += _robots[n].traits[u];
      requirements[u] = round_to(scale * sum, _table.requirement_step);
      total += requirements[u];
    }
    if (!(total > 0.0))
      return std::nullopt;
    return requirements;
  }

  double duration(const TaskKind& kind)
  {
    return std::round(uniform(kind.duration_min, kind.duration_max) * 10.0) /
           10.0;
  }

  /// Adds one task of `kind_name`; false when no robot can serve it there.
  bool add_task(const std::string& kind_name, const Point& from, const Point& to)
  {
    const TaskKind& kind = _table.task_kinds.at(kind_name);
    auto requirements = requirements_for(kind, from, to);
    if (!requirements)
      return false;
    Task task;
    task.requirements = std::move(*requirements);
    task.static_duration = duration(kind);
    task.initial_config = from;
    task.terminal_config = to;
    _network.tasks.push_back(std::move(task));
    return true;
  }

  void place_tasks()
  {
    const std::size_t target =
      uniform_index(_params.tasks_min, _params.tasks_max);
    const std::size_t hospital_count = uniform_index(1, 2);
    std::vector<Point> hospitals;
    for (std::size_t i = 0; i < hospital_count; ++i)
      hospitals.push_back(open_point());
    const Point depot = open_point();

    std::size_t failures = 0;
    while (_network.tasks.size() < target)
    {
      if (failures > max_placement_attempts)
        throw GenerationError("could not place a serviceable task");

      const std::size_t remaining = target - _network.tasks.size();
      // 0: survivor, 1: fire, 2: damaged building
      const std::size_t entity = remaining >= 2 ? uniform_index(0, 2)
                                                : uniform_index(1, 2);
      const Site s = site();
      bool placed = false;
      if (entity == 0)
      {
        const Point hospital =
          hospitals[uniform_index(0, hospitals.size() - 1)];
        const std::size_t rescue = _network.tasks.size();
        if (add_task("rescue", s.point, hospital))
        {
          if (add_task("deliver", depot, hospital))
          {
            _network.precedence.emplace_back(rescue, rescue + 1);
            placed = true;
          }
          else
          {
            _network.tasks.pop_back();
          }
        }
      }
      else
      {
        placed = add_task(entity == 1 ? "extinguish" : "rebuild",
            s.point, s.point);
      }
      if (!placed)
        ++failures;
    }
  }

  const GeneratorParams& _params;
  const ScenarioTable& _table;
  std::mt19937_64 _rng;
  Bounds _bounds;
  std::map<std::string, std::vector<Polygon>> _obstacles;
  std::vector<Bounds> _enclosures;
  std::map<std::string, ConfigurationSpace> _spaces;
  std::vector<Robot> _robots;
  TaskNetwork _network;
};

void check_params(const GeneratorParams& params)
{
  if (params.robots_min == 0 || params.robots_min > params.robots_max)
    throw std::invalid_argument("robot count range must be positive, min <= max");
  if (params.tasks_min == 0 || params.tasks_min > params.tasks_max)
    throw std::invalid_argument("task count range must be positive, min <= max");
  if (!(params.map_width > 10.0) || !(params.map_height > 10.0))
    throw std::invalid_argument("map dimensions must exceed 10");
  for (const auto& cls : params.scenario.obstacles)
  {
    if (cls.count_min > cls.count_max || !(cls.size_min > 0.0) ||
      cls.size_min > cls.size_max)
      throw std::invalid_argument("bad obstacle range for '" + cls.name + "'");
    if (cls.size_max + 4.0 >= std::min(params.map_width, params.map_height))
      throw std::invalid_argument("obstacle '" + cls.name + "' too large for map");
    if (cls.enclosure && !(cls.size_min > 2.0 * cls.wall + 2.0))
      throw std::invalid_argument("enclosure '" + cls.name + "' has no interior");
  }
  if (params.scenario.archetypes.empty())
    throw std::invalid_argument("empty archetype table");
  if (!(params.scenario.scale_min > 0.0) || params.scenario.scale_max > 1.0 ||
    params.scenario.scale_min > params.scenario.scale_max)
    throw std::invalid_argument("requirement scale must lie in (0, 1]");
}

} // namespace

ProblemDomain generate_problem(const GeneratorParams& params)
{
  check_params(params);
  return Generator(params).run();
}

std::vector<RunConfig> parse_run_configs(std::string_view json_text)
{
  const json doc = parse_document(json_text);
  if (!doc.is_array())
    throw ParseError("document", "expected a list of configs");
  std::vector<RunConfig> configs;
  try
  {
    for (const auto& entry : doc)
    {
      RunConfig config;
      config.name = entry.at("name").get<std::string>();
      config.sequential = get_or(entry, "sequential", false);
      config.search.alpha = get_or(entry, "alpha", config.search.alpha);
      config.search.node_limit =
        get_or(entry, "node_limit", config.search.node_limit);
      config.search.time_limit_seconds =
        get_or(entry, "time_limit", config.search.time_limit_seconds);
      config.search.seed = get_or(entry, "seed", config.search.seed);
      const std::string planner = get_or(entry, "planner", std::string("grid"));
      if (planner == "grid")
        config.search.planner = PlannerKind::Grid;
      else if (planner == "prm")
        config.search.planner = PlannerKind::LazyPrm;
      else
        throw ParseError(config.name, "unknown planner '" + planner + "'");
      configs.push_back(std::move(config));
    }
  }
  catch (const json::exception& e)
  {
    throw ParseError("configs", e.what());
  }
  return configs;
}

std::vector<NamedProblem> load_problem_dir(const std::string& directory)
{
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory))
  {
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<NamedProblem> problems;
  for (const auto& path : files)
    problems.push_back({path.stem().string(), load_problem(read_file(path.string()))});
  return problems;
}

SearchResult run_config(const ProblemDomain& domain, const RunConfig& config)
{
  return config.sequential ? itags_sequential(domain, config.search)
                           : itags(domain, config.search);
}

namespace {

MetricStats stats_of(std::vector<double> values)
{
  MetricStats s;
  if (values.empty())
    return s;
  double total = 0.0;
  for (double v : values)
    total += v;
  s.mean = total / static_cast<double>(values.size());
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  s.median = values.size() % 2 == 1 ? values[mid]
                                    : 0.5 * (values[mid - 1] + values[mid]);
  return s;
}

std::optional<double> normalized(double value, double baseline)
{
  if (!(baseline > 0.0) || !std::isfinite(value))
    return std::nullopt;
  return value / baseline - 1.0;
}

} // namespace

BenchmarkReport run_benchmark(
  const std::vector<NamedProblem>& problems,
  const std::vector<RunConfig>& configs,
  std::size_t baseline)
{
  if (!configs.empty() && baseline >= configs.size())
    throw std::invalid_argument("baseline index out of range");

  BenchmarkReport report;
  for (const auto& c : configs)
    report.configs.push_back(c.name);
  if (!configs.empty())
    report.baseline = configs[baseline].name;

  for (const auto& problem : problems)
  {
    const std::size_t first = report.rows.size();
    for (const auto& config : configs)
    {
      ReportRow row;
      row.problem = problem.name;
      row.config = config.name;
      try
      {
        const SearchResult result = run_config(problem.domain, config);
        row.metrics = result.metrics;
        if (!result.solved())
          row.outcome = to_string(*result.reason);
      }
      catch (const std::exception& e)
      {
        row.metrics = RunMetrics{};
        row.outcome = std::string("error: ") + e.what();
      }
      report.rows.push_back(std::move(row));
    }

    const ReportRow& base = report.rows[first + baseline];
    if (!base.metrics.solved)
      continue;
    for (std::size_t i = first; i < report.rows.size(); ++i)
    {
      ReportRow& row = report.rows[i];
      if (!row.metrics.solved)
        continue;
      const RunMetrics& m = row.metrics;
      const RunMetrics& b = base.metrics;
      row.normalized_compute_seconds =
        normalized(m.compute_seconds, b.compute_seconds);
      row.normalized_nodes_expanded = normalized(
        static_cast<double>(m.nodes_expanded), static_cast<double>(b.nodes_expanded));
      row.normalized_nodes_visited = normalized(
        static_cast<double>(m.nodes_visited), static_cast<double>(b.nodes_visited));
      row.normalized_makespan = normalized(m.makespan, b.makespan);
      if (i == first + baseline)
      {
        // Exactly zero even when a metric is zero for the baseline.
        row.normalized_compute_seconds = 0.0;
        row.normalized_nodes_expanded = 0.0;
        row.normalized_nodes_visited = 0.0;
        row.normalized_makespan = 0.0;
      }
    }
  }

  for (const auto& config : configs)
  {
    ConfigSummary summary;
    summary.config = config.name;
    std::vector<double> seconds, expanded, visited, makespan, n_makespan,
      n_visited;
    for (const auto& row : report.rows)
    {
      if (row.config != config.name)
        continue;
      ++summary.runs;
      if (row.metrics.solved)
      {
        ++summary.solved;
        seconds.push_back(row.metrics.compute_seconds);
        expanded.push_back(static_cast<double>(row.metrics.nodes_expanded));
        visited.push_back(static_cast<double>(row.metrics.nodes_visited));
        makespan.push_back(row.metrics.makespan);
      }
      if (row.normalized_makespan)
        n_makespan.push_back(*row.normalized_makespan);
      if (row.normalized_nodes_visited)
        n_visited.push_back(*row.normalized_nodes_visited);
    }
    summary.compute_seconds = stats_of(seconds);
    summary.nodes_expanded = stats_of(expanded);
    summary.nodes_visited = stats_of(visited);
    summary.makespan = stats_of(makespan);
    summary.normalized_makespan = stats_of(n_makespan);
    summary.normalized_nodes_visited = stats_of(n_visited);
    report.summaries.push_back(std::move(summary));
  }
  return report;
}

std::string ablation_label(double alpha)
{
  std::ostringstream out;
  out << "alpha=" << alpha;
  return out.str();
}

BenchmarkReport run_ablation(
  const std::vector<NamedProblem>& problems,
  const std::vector<double>& alphas,
  const SearchConfig& base)
{
  std::vector<RunConfig> configs;
  std::size_t baseline = 0;
  for (std::size_t i = 0; i < alphas.size(); ++i)
  {
    if (!(alphas[i] >= 0.0 && alphas[i] <= 1.0))
      throw std::invalid_argument("alpha must lie in [0, 1]");
    RunConfig config;
    config.name = ablation_label(alphas[i]);
    config.search = base;
    config.search.alpha = alphas[i];
    configs.push_back(std::move(config));
  }

  const auto half = std::find(alphas.begin(), alphas.end(), 0.5);
  if (half != alphas.end())
    baseline = static_cast<std::size_t>(half - alphas.begin());

  BenchmarkReport report = run_benchmark(problems, configs, baseline);
  report.notes.push_back(
    "alpha weights APR and 1 - alpha weights NSQ "
    "(tetaq = alpha * apr + (1 - alpha) * nsq)");
  for (double alpha : alphas)
  {
    std::ostringstream line;
    line << ablation_label(alpha) << " corresponds to alpha=" << 1.0 - alpha
         << " under the convention where alpha weights NSQ";
    report.notes.push_back(line.str());
  }
  return report;
}

namespace {

std::string csv_number(std::optional<double> value)
{
  if (!value || !std::isfinite(*value))
    return "";
  std::ostringstream out;
  out << std::setprecision(10) << *value;
  return out.str();
}

std::string csv_field(const std::string& text)
{
  if (text.find_first_of(",\"\n") == std::string::npos)
    return text;
  std::string quoted = "\"";
  for (char c : text)
  {
    if (c == '"')
      quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

} // namespace

std::string report_csv(const BenchmarkReport& report)
{
  std::ostringstream out;
  for (const auto& note : report.notes)
    out << "# " << note << "\n";
  out << "problem,config,solved,compute_seconds,nodes_expanded,nodes_visited,"
         "makespan,normalized_compute_seconds,normalized_nodes_expanded,"
         "normalized_nodes_visited,normalized_makespan,outcome\n";
  for (const auto& row : report.rows)
  {
    const RunMetrics& m = row.metrics;
    out << csv_field(row.problem) << ',' << csv_field(row.config) << ','
        << (m.solved ? 1 : 0) << ',' << csv_number(m.compute_seconds) << ','
        << m.nodes_expanded << ',' << m.nodes_visited << ','
        << csv_number(m.solved ? std::optional(m.makespan) : std::nullopt)
        << ',' << csv_number(row.normalized_compute_seconds) << ','
        << csv_number(row.normalized_nodes_expanded) << ','
        << csv_number(row.normalized_nodes_visited) << ','
        << csv_number(row.normalized_makespan) << ','
        << csv_field(row.outcome) << '\n';
  }
  return out.str();
}

std::string summary_csv(const BenchmarkReport& report)
{
  std::ostringstream out;
  out << "config,runs,solved,mean_compute_seconds,median_compute_seconds,"
         "mean_nodes_expanded,median_nodes_expanded,mean_nodes_visited,"
         "median_nodes_visited,mean_makespan,median_makespan,"
         "mean_normalized_makespan,median_normalized_makespan,"
         "mean_normalized_nodes_visited,median_normalized_nodes_visited\n";
  for (const auto& s : report.summaries)
  {
    out << csv_field(s.config) << ',' << s.runs << ',' << s.solved;
    for (const MetricStats* stats :
      {&s.compute_seconds, &s.nodes_expanded, &s.nodes_visited, &s.makespan,
       &s.normalized_makespan, &s.normalized_nodes_visited})
      out << ',' << csv_number(stats->mean) << ',' << csv_number(stats->median);
    out << '\n';
  }
  return out.str();
}

} // namespace itags
