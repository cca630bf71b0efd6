#include <itags/domain.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace itags {

std::vector<std::vector<bool>> precedence_closure(const TaskNetwork& network)
{
  const std::size_t m = network.tasks.size();
  std::vector<std::vector<bool>> reach(m, std::vector<bool>(m, false));
  for (const auto& [i, j] : network.precedence)
    reach[i][j] = true;

  // Floyd-Warshall style closure; M is small.
  for (std::size_t k = 0; k < m; ++k)
  {
    for (std::size_t i = 0; i < m; ++i)
    {
      if (!reach[i][k])
        continue;
      for (std::size_t j = 0; j < m; ++j)
      {
        if (reach[k][j])
          reach[i][j] = true;
      }
    }
  }
  return reach;
}

bool ConfigurationSpace::is_free(const Point& p) const
{
  if (!bounds.contains(p))
    return false;
  for (const auto& obstacle : obstacles)
  {
    if (point_in_polygon(p, obstacle))
      return false;
  }
  return true;
}

bool ConfigurationSpace::is_segment_free(const Point& a, const Point& b) const
{
  if (!bounds.contains(a) || !bounds.contains(b))
    return false;
  for (const auto& obstacle : obstacles)
  {
    if (segment_intersects_polygon(a, b, obstacle))
      return false;
  }
  return true;
}

ProblemDomain::ProblemDomain(
  std::vector<std::string> trait_names,
  TaskNetwork network,
  std::vector<Robot> robots,
  std::map<std::string, ConfigurationSpace> spaces)
: _trait_names(std::move(trait_names)),
  _network(std::move(network)),
  _robots(std::move(robots)),
  _spaces(std::move(spaces))
{
  const std::size_t u = _trait_names.size();
  _robot_traits = Matrix(_robots.size(), u);
  for (std::size_t n = 0; n < _robots.size(); ++n)
  {
    const auto& traits = _robots[n].traits;
    for (std::size_t k = 0; k < std::min(u, traits.size()); ++k)
      _robot_traits(n, k) = traits[k];
  }

  _desired_traits = Matrix(_network.tasks.size(), u);
  for (std::size_t m = 0; m < _network.tasks.size(); ++m)
  {
    const auto& req = _network.tasks[m].requirements;
    for (std::size_t k = 0; k < std::min(u, req.size()); ++k)
      _desired_traits(m, k) = req[k];
  }
}

const ConfigurationSpace* ProblemDomain::space_for(
  const std::string& type_id) const
{
  const auto it = _spaces.find(type_id);
  return it == _spaces.end() ? nullptr : &it->second;
}

Bounds ProblemDomain::workspace_bounds() const
{
  if (_spaces.empty())
    return {};

  Bounds box{
    std::numeric_limits<double>::infinity(),
    std::numeric_limits<double>::infinity(),
    -std::numeric_limits<double>::infinity(),
    -std::numeric_limits<double>::infinity()};
  for (const auto& [id, space] : _spaces)
  {
    box.x_min = std::min(box.x_min, space.bounds.x_min);
    box.y_min = std::min(box.y_min, space.bounds.y_min);
    box.x_max = std::max(box.x_max, space.bounds.x_max);
    box.y_max = std::max(box.y_max, space.bounds.y_max);
  }
  return box;
}

const char* to_string(Violation::Kind kind)
{
  switch (kind)
  {
    case Violation::Kind::DimensionMismatch: return "dimension_mismatch";
    case Violation::Kind::NegativeValue: return "negative_value";
    case Violation::Kind::NonPositiveSpeed: return "non_positive_speed";
    case Violation::Kind::ZeroRequirements: return "zero_requirements";
    case Violation::Kind::InvalidPrecedence: return "invalid_precedence";
    case Violation::Kind::PrecedenceCycle: return "precedence_cycle";
    case Violation::Kind::UnknownSpace: return "unknown_space";
    case Violation::Kind::DegenerateBounds: return "degenerate_bounds";
    case Violation::Kind::InvalidObstacle: return "invalid_obstacle";
    case Violation::Kind::ConfigOutsideFreeSpace:
      return "config_outside_free_space";
  }
  return "unknown";
}

namespace {

template<typename... Args>
std::string concat(const Args&... args)
{
  std::ostringstream out;
  (out << ... << args);
  return out.str();
}

bool finite_non_negative(double v)
{
  return std::isfinite(v) && v >= 0.0;
}

bool has_cycle(const TaskNetwork& network)
{
  const std::size_t m = network.tasks.size();
  std::vector<std::vector<std::size_t>> out(m);
  std::vector<std::size_t> in_degree(m, 0);
  for (const auto& [i, j] : network.precedence)
  {
    if (i >= m || j >= m || i == j)
      continue;
    out[i].push_back(j);
    ++in_degree[j];
  }

  // Kahn's algorithm: a cycle leaves vertices unvisited.
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < m; ++i)
  {
    if (in_degree[i] == 0)
      ready.push_back(i);
  }
  std::size_t visited = 0;
  while (!ready.empty())
  {
    const std::size_t v = ready.back();
    ready.pop_back();
    ++visited;
    for (const std::size_t w : out[v])
    {
      if (--in_degree[w] == 0)
        ready.push_back(w);
    }
  }
  return visited != m;
}

} // namespace

std::vector<Violation> validate_domain(const ProblemDomain& domain)
{
  using Kind = Violation::Kind;
  std::vector<Violation> violations;
  const auto report = [&violations](Kind kind, std::string message)
    {
      violations.push_back({kind, std::move(message)});
    };

  const std::size_t u = domain.trait_count();

  for (std::size_t n = 0; n < domain.robot_count(); ++n)
  {
    const Robot& robot = domain.robots()[n];
    if (robot.traits.size() != u)
    {
      report(Kind::DimensionMismatch, concat(
          "robot ", n, " has ", robot.traits.size(), " traits, expected ", u));
    }
    for (std::size_t k = 0; k < robot.traits.size(); ++k)
    {
      if (!finite_non_negative(robot.traits[k]))
        report(Kind::NegativeValue, concat("robot ", n, " trait ", k));
    }
    if (!(std::isfinite(robot.speed) && robot.speed > 0.0))
      report(Kind::NonPositiveSpeed, concat("robot ", n, " speed"));

    const ConfigurationSpace* space = domain.space_for(robot.type_id);
    if (!space)
    {
      report(Kind::UnknownSpace, concat(
          "robot ", n, " type '", robot.type_id, "' has no space"));
    }
    else if (!space->is_free(robot.initial_config))
    {
      report(Kind::ConfigOutsideFreeSpace, concat(
          "robot ", n, " initial configuration not in free space"));
    }
  }

  double requirement_total = 0.0;
  for (std::size_t m = 0; m < domain.task_count(); ++m)
  {
    const Task& task = domain.tasks()[m];
    if (task.requirements.size() != u)
    {
      report(Kind::DimensionMismatch, concat(
          "task ", m, " has ", task.requirements.size(),
          " requirements, expected ", u));
    }
    for (std::size_t k = 0; k < task.requirements.size(); ++k)
    {
      if (!finite_non_negative(task.requirements[k]))
        report(Kind::NegativeValue, concat("task ", m, " requirement ", k));
      else
        requirement_total += task.requirements[k];
    }
    if (!finite_non_negative(task.static_duration))
      report(Kind::NegativeValue, concat("task ", m, " duration"));
  }

  if (domain.task_count() == 0 || !(requirement_total > 0.0))
  {
    report(Kind::ZeroRequirements,
      "desired trait matrix has no positive entry");
  }

  bool edges_valid = true;
  for (const auto& [i, j] : domain.network().precedence)
  {
    if (i >= domain.task_count() || j >= domain.task_count() || i == j)
    {
      edges_valid = false;
      report(Kind::InvalidPrecedence, concat(
          "precedence edge (", i, ", ", j, ")"));
    }
  }
  if (edges_valid && has_cycle(domain.network()))
    report(Kind::PrecedenceCycle, "precedence edges contain a cycle");

  for (const auto& [id, space] : domain.spaces())
  {
    const Bounds& b = space.bounds;
    if (!(b.width() > 0.0 && b.height() > 0.0))
      report(Kind::DegenerateBounds, concat("space '", id, "' bounds"));

    for (std::size_t k = 0; k < space.obstacles.size(); ++k)
    {
      const Polygon& obstacle = space.obstacles[k];
      const bool inside = std::all_of(
        obstacle.vertices.begin(), obstacle.vertices.end(),
        [&b](const Point& p) { return b.contains(p); });
      if (!inside || !is_simple(obstacle))
      {
        report(Kind::InvalidObstacle, concat(
            "space '", id, "' obstacle ", k));
      }
    }
  }

  return violations;
}

} // namespace itags
