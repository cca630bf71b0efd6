#include <itags/io.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace itags {

using nlohmann::json;

namespace {

std::string join_violations(const std::vector<Violation>& violations)
{
  std::string text = "invalid domain:";
  for (const auto& v : violations)
  {
    text += " [";
    text += to_string(v.kind);
    text += "] ";
    text += v.message;
    text += ";";
  }
  return text;
}

/// Schema walker that remembers the path to the current node.
class Field
{
public:
  Field(const json& node, std::string path)
  : _node(node), _path(std::move(path))
  {
  }

  const std::string& path() const { return _path; }
  const json& node() const { return _node; }

  [[noreturn]] void fail(const std::string& what) const
  {
    throw ParseError(_path.empty() ? "document" : _path, what);
  }

  bool has(const char* key) const
  {
    return _node.is_object() && _node.contains(key);
  }

  Field operator[](const char* key) const
  {
    if (!_node.is_object())
      fail("expected an object");
    const auto it = _node.find(key);
    const std::string child = _path.empty() ? key : _path + "." + key;
    if (it == _node.end())
      throw ParseError(child, "missing required field");
    return Field(*it, child);
  }

  Field operator[](std::size_t i) const
  {
    return Field(_node.at(i), _path + "[" + std::to_string(i) + "]");
  }

  std::size_t array_size() const
  {
    if (!_node.is_array())
      fail("expected an array");
    return _node.size();
  }

  double number() const
  {
    if (!_node.is_number())
      fail("expected a number");
    return _node.get<double>();
  }

  std::size_t index() const
  {
    if (!_node.is_number_integer() || _node.get<long long>() < 0)
      fail("expected a non-negative integer");
    return _node.get<std::size_t>();
  }

  std::string string() const
  {
    if (!_node.is_string())
      fail("expected a string");
    return _node.get<std::string>();
  }

  std::vector<double> numbers() const
  {
    std::vector<double> values;
    const std::size_t n = array_size();
    values.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      values.push_back((*this)[i].number());
    return values;
  }

  Point point() const
  {
    if (array_size() != 2)
      fail("expected [x, y]");
    return {(*this)[std::size_t{0}].number(), (*this)[std::size_t{1}].number()};
  }

private:
  const json& _node;
  std::string _path;
};

json parse_json(std::string_view text)
{
  try
  {
    return json::parse(text.begin(), text.end());
  }
  catch (const json::parse_error& e)
  {
    const std::size_t offset = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(
      text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n');
    throw ParseError("line " + std::to_string(line), e.what());
  }
}

json to_json(const Point& p)
{
  return json::array({p.x, p.y});
}

json to_json(const std::vector<Point>& points)
{
  json out = json::array();
  for (const auto& p : points)
    out.push_back(to_json(p));
  return out;
}

std::vector<Point> points_from(const Field& field)
{
  std::vector<Point> points;
  const std::size_t n = field.array_size();
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    points.push_back(field[i].point());
  return points;
}

PlanKind plan_kind_from(const Field& field)
{
  const std::string kind = field.string();
  if (kind == "approach")
    return PlanKind::Approach;
  if (kind == "execution")
    return PlanKind::Execution;
  field.fail("expected \"approach\" or \"execution\"");
}

} // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
: std::runtime_error(join_violations(violations)),
  _violations(std::move(violations))
{
}

const char* to_string(PlanKind kind)
{
  return kind == PlanKind::Approach ? "approach" : "execution";
}

ProblemDomain parse_problem(std::string_view text)
{
  const json doc = parse_json(text);
  const Field root(doc, "");
  if (!doc.is_object())
    root.fail("expected an object");

  std::vector<std::string> trait_names;
  {
    const Field traits = root["traits"];
    for (std::size_t i = 0; i < traits.array_size(); ++i)
      trait_names.push_back(traits[i].string());
  }

  std::vector<Robot> robots;
  {
    const Field list = root["robots"];
    for (std::size_t i = 0; i < list.array_size(); ++i)
    {
      const Field r = list[i];
      Robot robot;
      robot.type_id = r["type_id"].string();
      robot.speed = r["speed"].number();
      robot.traits = r["traits"].numbers();
      robot.initial_config = r["initial_config"].point();
      robots.push_back(std::move(robot));
    }
  }

  TaskNetwork network;
  {
    const Field list = root["tasks"];
    for (std::size_t i = 0; i < list.array_size(); ++i)
    {
      const Field t = list[i];
      Task task;
      task.static_duration = t["duration"].number();
      task.requirements = t["requirements"].numbers();
      task.initial_config = t["initial_config"].point();
      task.terminal_config = t["terminal_config"].point();
      network.tasks.push_back(std::move(task));
    }
  }

  if (root.has("precedence"))
  {
    const Field list = root["precedence"];
    for (std::size_t i = 0; i < list.array_size(); ++i)
    {
      const Field edge = list[i];
      if (edge.array_size() != 2)
        edge.fail("expected [i, j]");
      network.precedence.emplace_back(edge[std::size_t{0}].index(), edge[std::size_t{1}].index());
    }
  }

  std::map<std::string, ConfigurationSpace> spaces;
  {
    const Field map = root["spaces"];
    if (!map.node().is_object())
      map.fail("expected an object keyed by type_id");
    for (const auto& [type_id, node] : map.node().items())
    {
      const Field s(node, map.path() + "." + type_id);
      ConfigurationSpace space;
      space.type_id = type_id;
      const auto b = s["bounds"].numbers();
      if (b.size() != 4)
        s["bounds"].fail("expected [x_min, y_min, x_max, y_max]");
      space.bounds = {b[0], b[1], b[2], b[3]};
      if (s.has("obstacles"))
      {
        const Field obstacles = s["obstacles"];
        for (std::size_t k = 0; k < obstacles.array_size(); ++k)
          space.obstacles.push_back(Polygon{points_from(obstacles[k])});
      }
      spaces.emplace(type_id, std::move(space));
    }
  }

  return ProblemDomain(
    std::move(trait_names), std::move(network), std::move(robots),
    std::move(spaces));
}

ProblemDomain load_problem(std::string_view text)
{
  ProblemDomain domain = parse_problem(text);
  auto violations = validate_domain(domain);
  if (!violations.empty())
    throw ValidationError(std::move(violations));
  return domain;
}

std::string save_problem(const ProblemDomain& domain)
{
  json doc;
  doc["traits"] = domain.trait_names();

  json robots = json::array();
  for (const auto& r : domain.robots())
  {
    robots.push_back({
        {"type_id", r.type_id},
        {"speed", r.speed},
        {"traits", r.traits},
        {"initial_config", to_json(r.initial_config)}});
  }
  doc["robots"] = std::move(robots);

  json tasks = json::array();
  for (const auto& t : domain.tasks())
  {
    tasks.push_back({
        {"duration", t.static_duration},
        {"requirements", t.requirements},
        {"initial_config", to_json(t.initial_config)},
        {"terminal_config", to_json(t.terminal_config)}});
  }
  doc["tasks"] = std::move(tasks);

  json precedence = json::array();
  for (const auto& [i, j] : domain.network().precedence)
    precedence.push_back({i, j});
  doc["precedence"] = std::move(precedence);

  json spaces = json::object();
  for (const auto& [id, space] : domain.spaces())
  {
    json obstacles = json::array();
    for (const auto& obstacle : space.obstacles)
      obstacles.push_back(to_json(obstacle.vertices));
    const Bounds& b = space.bounds;
    spaces[id] = {
      {"bounds", {b.x_min, b.y_min, b.x_max, b.y_max}},
      {"obstacles", std::move(obstacles)}};
  }
  doc["spaces"] = std::move(spaces);

  return doc.dump(2) + "\n";
}

std::string save_solution(
  const Solution& solution, const RunMetrics& metrics, bool include_timing)
{
  const Allocation& a = solution.allocation;
  json allocation = json::array();
  for (std::size_t m = 0; m < a.tasks(); ++m)
  {
    json row = json::array();
    for (std::size_t n = 0; n < a.robots(); ++n)
      row.push_back(a(m, n) ? 1 : 0);
    allocation.push_back(std::move(row));
  }

  json schedule = json::array();
  for (std::size_t m = 0; m < solution.schedule.start.size(); ++m)
  {
    schedule.push_back({
        {"task", m},
        {"start", solution.schedule.start[m]},
        {"end", solution.schedule.end[m]}});
  }

  json plans = json::array();
  for (const auto& record : solution.plans)
  {
    plans.push_back({
        {"robot_ids", record.robot_ids},
        {"kind", to_string(record.kind)},
        {"task", record.task},
        {"waypoints", to_json(record.plan->waypoints)},
        {"length", record.plan->length}});
  }

  json doc;
  doc["allocation"] = std::move(allocation);
  doc["schedule"] = std::move(schedule);
  doc["makespan"] = solution.schedule.makespan;
  doc["plans"] = std::move(plans);
  doc["metrics"] = {
    {"compute_seconds",
     include_timing ? json(metrics.compute_seconds) : json(nullptr)},
    {"nodes_expanded", metrics.nodes_expanded},
    {"nodes_visited", metrics.nodes_visited},
    {"makespan", metrics.makespan}};
  return doc.dump(2) + "\n";
}

std::pair<Solution, RunMetrics> parse_solution(std::string_view text)
{
  const json doc = parse_json(text);
  const Field root(doc, "");

  Solution solution;
  {
    const Field rows = root["allocation"];
    const std::size_t m_count = rows.array_size();
    const std::size_t n_count = m_count > 0 ? rows[std::size_t{0}].array_size() : 0;
    solution.allocation = Allocation(m_count, n_count);
    for (std::size_t m = 0; m < m_count; ++m)
    {
      const Field row = rows[m];
      if (row.array_size() != n_count)
        row.fail("ragged allocation matrix");
      for (std::size_t n = 0; n < n_count; ++n)
      {
        const std::size_t v = row[n].index();
        if (v > 1)
          row[n].fail("expected 0 or 1");
        solution.allocation.set(m, n, v == 1);
      }
    }
  }

  {
    const Field list = root["schedule"];
    const std::size_t count = list.array_size();
    solution.schedule.start.assign(count, 0.0);
    solution.schedule.end.assign(count, 0.0);
    for (std::size_t i = 0; i < count; ++i)
    {
      const Field entry = list[i];
      const std::size_t task = entry["task"].index();
      if (task >= count)
        entry["task"].fail("task index out of range");
      solution.schedule.start[task] = entry["start"].number();
      solution.schedule.end[task] = entry["end"].number();
    }
    solution.schedule.makespan = root["makespan"].number();
  }

  {
    const Field list = root["plans"];
    for (std::size_t i = 0; i < list.array_size(); ++i)
    {
      const Field entry = list[i];
      PlanRecord record;
      const Field ids = entry["robot_ids"];
      for (std::size_t k = 0; k < ids.array_size(); ++k)
        record.robot_ids.push_back(ids[k].index());
      record.kind = plan_kind_from(entry["kind"]);
      record.task = entry["task"].index();
      auto plan = std::make_shared<MotionPlan>();
      plan->waypoints = points_from(entry["waypoints"]);
      plan->length = entry["length"].number();
      record.plan = std::move(plan);
      solution.plans.push_back(std::move(record));
    }
  }

  RunMetrics metrics;
  {
    const Field m = root["metrics"];
    const Field seconds = m["compute_seconds"];
    metrics.compute_seconds =
      seconds.node().is_null() ? 0.0 : seconds.number();
    metrics.nodes_expanded = m["nodes_expanded"].index();
    metrics.nodes_visited = m["nodes_visited"].index();
    metrics.makespan = m["makespan"].number();
    metrics.solved = true;
  }

  return {std::move(solution), metrics};
}

std::string read_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, std::string_view contents)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write '" + path + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

} // namespace itags
