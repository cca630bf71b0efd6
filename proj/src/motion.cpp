#include <itags/motion.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>

namespace itags {

double path_length(const std::vector<Point>& waypoints)
{
  double length = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i)
    length += distance(waypoints[i - 1], waypoints[i]);
  return length;
}

const char* to_string(PlanStatus status)
{
  switch (status)
  {
    case PlanStatus::Found: return "found";
    case PlanStatus::Infeasible: return "infeasible";
    case PlanStatus::Timeout: return "timeout";
  }
  return "unknown";
}

PlanOutcome PlanOutcome::with(MotionPlan plan)
{
  return {PlanStatus::Found, std::make_shared<const MotionPlan>(std::move(plan))};
}

//==============================================================================
std::string SpaceSignature::key() const
{
  std::string joined;
  for (const auto& id : type_ids)
  {
    if (!joined.empty())
      joined += '+';
    joined += id;
  }
  return joined;
}

namespace {

SpaceSignature canonical(std::vector<std::string> ids)
{
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return SpaceSignature{std::move(ids)};
}

} // namespace

SpaceSignature coalition_signature(std::span<const Robot> members)
{
  if (members.empty())
    throw std::invalid_argument("coalition_signature: empty coalition");
  std::vector<std::string> ids;
  for (const auto& robot : members)
    ids.push_back(robot.type_id);
  return canonical(std::move(ids));
}

SpaceSignature coalition_signature(
  const ProblemDomain& domain, std::span<const std::size_t> members)
{
  if (members.empty())
    throw std::invalid_argument("coalition_signature: empty coalition");
  std::vector<std::string> ids;
  for (const auto n : members)
    ids.push_back(domain.robots().at(n).type_id);
  return canonical(std::move(ids));
}

ConfigurationSpace coalition_space(
  const ProblemDomain& domain, const SpaceSignature& signature)
{
  if (signature.type_ids.empty())
    throw std::invalid_argument("coalition_space: empty signature");

  ConfigurationSpace merged;
  merged.type_id = signature.key();
  bool first = true;
  for (const auto& id : signature.type_ids)
  {
    const ConfigurationSpace* space = domain.space_for(id);
    if (!space)
      throw std::invalid_argument("coalition_space: unknown type '" + id + "'");

    if (first)
    {
      merged.bounds = space->bounds;
      first = false;
    }
    else
    {
      merged.bounds.x_min = std::max(merged.bounds.x_min, space->bounds.x_min);
      merged.bounds.y_min = std::max(merged.bounds.y_min, space->bounds.y_min);
      merged.bounds.x_max = std::min(merged.bounds.x_max, space->bounds.x_max);
      merged.bounds.y_max = std::min(merged.bounds.y_max, space->bounds.y_max);
    }

    for (const auto& obstacle : space->obstacles)
    {
      const bool known = std::find(
        merged.obstacles.begin(), merged.obstacles.end(), obstacle)
        != merged.obstacles.end();
      if (!known)
        merged.obstacles.push_back(obstacle);
    }
  }
  return merged;
}

//==============================================================================
namespace {

struct LatticeCost
{
  std::int32_t straight = 0;
  std::int32_t diagonal = 0;
};

// Cost is always rebuilt from the step counts so that equal routes map to
// bit-identical doubles.
double lattice_length(const LatticeCost& c, double resolution)
{
  return resolution * (c.straight + c.diagonal * std::numbers::sqrt2);
}

constexpr int dx8[8] = {1, -1, 0, 0, 1, 1, -1, -1};
constexpr int dy8[8] = {0, 0, 1, -1, 1, -1, 1, -1};

std::vector<Point> drop_collinear(const std::vector<Point>& points,
  const std::vector<int>& directions)
{
  // directions[k] is the step direction from points[k] to points[k + 1]
  std::vector<Point> out;
  out.push_back(points.front());
  for (std::size_t k = 1; k + 1 < points.size(); ++k)
  {
    if (k - 1 < directions.size() && k < directions.size()
      && directions[k - 1] == directions[k])
      continue;
    out.push_back(points[k]);
  }
  if (points.size() > 1)
    out.push_back(points.back());
  return out;
}

} // namespace

PlanOutcome plan_grid(
  const MotionQuery& query, const ConfigurationSpace& space,
  double resolution)
{
  if (!(resolution > 0.0))
    throw std::invalid_argument("plan_grid: resolution must be positive");

  const Point s = query.start;
  const Point g = query.goal;
  if (!space.is_free(s) || !space.is_free(g))
    return PlanOutcome::infeasible();
  if (s == g)
    return PlanOutcome::with(MotionPlan{{s}, 0.0});

  const Bounds& b = space.bounds;
  const long i_min = -static_cast<long>(std::floor((s.x - b.x_min) / resolution));
  const long i_max = static_cast<long>(std::floor((b.x_max - s.x) / resolution));
  const long j_min = -static_cast<long>(std::floor((s.y - b.y_min) / resolution));
  const long j_max = static_cast<long>(std::floor((b.y_max - s.y) / resolution));
  const long width = i_max - i_min + 1;
  const long height = j_max - j_min + 1;
  const std::size_t node_count = static_cast<std::size_t>(width * height);
  const std::size_t goal_node = node_count;

  const auto index_of = [&](long i, long j)
    {
      return static_cast<std::size_t>((i - i_min) + width * (j - j_min));
    };
  const auto coords_of = [&](std::size_t idx)
    {
      const long li = static_cast<long>(idx);
      return std::pair<long, long>{li % width + i_min, li / width + j_min};
    };
  const auto point_of = [&](long i, long j)
    {
      return Point{s.x + static_cast<double>(i) * resolution,
        s.y + static_cast<double>(j) * resolution};
    };

  std::vector<std::int8_t> free_state(node_count, -1);
  const auto is_free_node = [&](long i, long j)
    {
      auto& state = free_state[index_of(i, j)];
      if (state < 0)
        state = space.is_free(point_of(i, j)) ? 1 : 0;
      return state == 1;
    };

  // Corners of the lattice cell containing the goal that see the goal.
  const long gi = static_cast<long>(std::floor((g.x - s.x) / resolution));
  const long gj = static_cast<long>(std::floor((g.y - s.y) / resolution));
  std::vector<std::pair<std::size_t, double>> goal_legs;
  std::vector<double> leg_of(node_count, -1.0);
  for (long di = 0; di <= 1; ++di)
  {
    for (long dj = 0; dj <= 1; ++dj)
    {
      const long i = gi + di;
      const long j = gj + dj;
      if (i < i_min || i > i_max || j < j_min || j > j_max)
        continue;
      if (!is_free_node(i, j))
        continue;
      const Point p = point_of(i, j);
      if (p == g || space.is_segment_free(p, g))
        leg_of[index_of(i, j)] = distance(p, g);
    }
  }

  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<LatticeCost> cost(node_count);
  std::vector<double> best(node_count + 1, inf);
  std::vector<std::size_t> parent(node_count + 1, none);
  std::vector<int> step_dir(node_count, -1);

  // Slightly deflated straight-line heuristic keeps it admissible under
  // rounding; stale entries are skipped on pop.
  const auto heuristic = [&](std::size_t idx)
    {
      const auto [i, j] = coords_of(idx);
      return distance(point_of(i, j), g) * (1.0 - 1e-9);
    };

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  const std::size_t start_node = index_of(0, 0);
  best[start_node] = 0.0;
  open.push({heuristic(start_node), start_node});

  while (!open.empty())
  {
    const auto [f, idx] = open.top();
    open.pop();

    if (idx == goal_node)
      break;
    if (f > best[idx] + heuristic(idx))
      continue;

    if (leg_of[idx] >= 0.0)
    {
      const double total = best[idx] + leg_of[idx];
      if (total < best[goal_node])
      {
        best[goal_node] = total;
        parent[goal_node] = idx;
        open.push({total, goal_node});
      }
    }

    const auto [i, j] = coords_of(idx);
    const Point here = point_of(i, j);
    for (int d = 0; d < 8; ++d)
    {
      const long ni = i + dx8[d];
      const long nj = j + dy8[d];
      if (ni < i_min || ni > i_max || nj < j_min || nj > j_max)
        continue;
      if (!is_free_node(ni, nj))
        continue;

      LatticeCost next = cost[idx];
      if (d < 4)
        ++next.straight;
      else
        ++next.diagonal;
      const double next_length = lattice_length(next, resolution);
      const std::size_t nidx = index_of(ni, nj);
      if (!(next_length < best[nidx]))
        continue;
      if (!space.is_segment_free(here, point_of(ni, nj)))
        continue;

      best[nidx] = next_length;
      cost[nidx] = next;
      parent[nidx] = idx;
      step_dir[nidx] = d;
      open.push({next_length + heuristic(nidx), nidx});
    }
  }

  if (parent[goal_node] == none)
    return PlanOutcome::infeasible();

  const std::size_t last = parent[goal_node];
  std::vector<Point> points;
  std::vector<int> directions;
  for (std::size_t idx = last; idx != none; idx = parent[idx])
  {
    const auto [i, j] = coords_of(idx);
    points.push_back(point_of(i, j));
    if (parent[idx] != none)
      directions.push_back(step_dir[idx]);
  }
  std::reverse(points.begin(), points.end());
  std::reverse(directions.begin(), directions.end());
  points.front() = s;

  MotionPlan plan;
  plan.waypoints = drop_collinear(points, directions);
  if (plan.waypoints.back() != g)
    plan.waypoints.push_back(g);
  plan.length = lattice_length(cost[last], resolution) + leg_of[last];
  return PlanOutcome::with(std::move(plan));
}

//==============================================================================
PlanOutcome plan_lazy_prm(
  const MotionQuery& query, const ConfigurationSpace& space,
  const LazyPrmParams& params)
{
  if (params.samples == 0 || !(params.radius > 0.0))
    throw std::invalid_argument("plan_lazy_prm: samples and radius must be positive");

  using Clock = std::chrono::steady_clock;
  const auto deadline = Clock::now() + params.timeout;
  const auto expired = [&]() { return Clock::now() >= deadline; };
  if (params.timeout <= std::chrono::nanoseconds::zero() || expired())
    return PlanOutcome::timeout();

  const Point s = query.start;
  const Point g = query.goal;
  if (!space.is_free(s) || !space.is_free(g))
    return PlanOutcome::infeasible();
  if (s == g)
    return PlanOutcome::with(MotionPlan{{s}, 0.0});

  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> ux(space.bounds.x_min, space.bounds.x_max);
  std::uniform_real_distribution<double> uy(space.bounds.y_min, space.bounds.y_max);

  std::vector<Point> vertices{s, g};
  vertices.reserve(params.samples + 2);
  for (std::size_t k = 0; k < params.samples; ++k)
  {
    const double x = ux(rng);
    const double y = uy(rng);
    vertices.push_back({x, y});
  }
  const std::size_t n = vertices.size();

  enum class Check : std::int8_t { Unknown, Valid, Invalid };
  std::vector<Check> vertex_state(n, Check::Unknown);
  vertex_state[0] = Check::Valid;
  vertex_state[1] = Check::Valid;

  struct Edge
  {
    std::size_t to;
    double length;
    std::size_t id;
  };
  std::vector<std::vector<Edge>> adjacency(n);
  std::vector<Check> edge_state;
  for (std::size_t a = 0; a < n; ++a)
  {
    for (std::size_t b = a + 1; b < n; ++b)
    {
      const double d = distance(vertices[a], vertices[b]);
      if (d > params.radius)
        continue;
      const std::size_t id = edge_state.size();
      edge_state.push_back(Check::Unknown);
      adjacency[a].push_back({b, d, id});
      adjacency[b].push_back({a, d, id});
    }
    if (expired())
      return PlanOutcome::timeout();
  }

  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  constexpr double inf = std::numeric_limits<double>::infinity();

  const auto vertex_ok = [&](std::size_t v) {
      if (vertex_state[v] == Check::Unknown)
        vertex_state[v] = space.is_free(vertices[v]) ? Check::Valid
          : Check::Invalid;
      return vertex_state[v] == Check::Valid;
    };
  const auto edge_ok = [&](std::size_t a, std::size_t b, std::size_t id) {
      if (edge_state[id] == Check::Unknown)
        edge_state[id] = space.is_segment_free(vertices[a], vertices[b])
          ? Check::Valid : Check::Invalid;
      return edge_state[id] == Check::Valid;
    };

  // Lazy search removes few edges per failed candidate, which is hopeless
  // when the goal is cut off. After enough failures, check reachability
  // eagerly once.
  std::size_t failures = 0;
  bool reachability_checked = false;
  const auto goal_reachable = [&]() {
      std::vector<char> seen(n, 0);
      std::vector<std::size_t> stack{0};
      seen[0] = 1;
      while (!stack.empty())
      {
        const std::size_t v = stack.back();
        stack.pop_back();
        if (v == 1)
          return true;
        for (const Edge& e : adjacency[v])
        {
          if (seen[e.to] || !vertex_ok(e.to) || !edge_ok(v, e.to, e.id))
            continue;
          seen[e.to] = 1;
          stack.push_back(e.to);
        }
        if (expired())
          return true;
      }
      return false;
    };

  while (true)
  {
    if (expired())
      return PlanOutcome::timeout();
    if (!reachability_checked && failures > n)
    {
      reachability_checked = true;
      if (!goal_reachable())
        return PlanOutcome::infeasible();
      if (expired())
        return PlanOutcome::timeout();
    }

    std::vector<double> dist(n, inf);
    std::vector<std::size_t> parent(n, none);
    std::vector<std::size_t> parent_edge(n, none);
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    dist[0] = 0.0;
    open.push({0.0, 0});
    while (!open.empty())
    {
      const auto [d, v] = open.top();
      open.pop();
      if (d > dist[v])
        continue;
      if (v == 1)
        break;
      for (const Edge& e : adjacency[v])
      {
        if (edge_state[e.id] == Check::Invalid
          || vertex_state[e.to] == Check::Invalid)
          continue;
        const double nd = d + e.length;
        if (nd < dist[e.to])
        {
          dist[e.to] = nd;
          parent[e.to] = v;
          parent_edge[e.to] = e.id;
          open.push({nd, e.to});
        }
      }
    }

    if (parent[1] == none)
      return PlanOutcome::infeasible();

    std::vector<std::size_t> path;
    for (std::size_t v = 1; v != none; v = parent[v])
      path.push_back(v);
    std::reverse(path.begin(), path.end());

    bool valid = true;
    for (const std::size_t v : path)
      valid = vertex_ok(v) && valid;
    for (std::size_t k = 1; valid && k < path.size(); ++k)
      valid = edge_ok(path[k - 1], path[k], parent_edge[path[k]]);
    if (!valid)
    {
      ++failures;
      continue;
    }

    MotionPlan plan;
    for (const std::size_t v : path)
      plan.waypoints.push_back(vertices[v]);
    plan.length = path_length(plan.waypoints);
    return PlanOutcome::with(std::move(plan));
  }
}

//==============================================================================
GridPlanner::GridPlanner(double resolution_fraction)
: _resolution_fraction(resolution_fraction)
{
  if (!(resolution_fraction > 0.0))
    throw std::invalid_argument("GridPlanner: resolution must be positive");
}

PlanOutcome GridPlanner::plan(
  const MotionQuery& query, const ConfigurationSpace& space) const
{
  return plan_grid(
    query, space, _resolution_fraction * space.bounds.diagonal());
}

LazyPrmPlanner::LazyPrmPlanner(
  std::size_t samples, double radius_fraction, std::uint64_t seed,
  std::chrono::nanoseconds timeout)
: _samples(samples),
  _radius_fraction(radius_fraction),
  _seed(seed),
  _timeout(timeout)
{
}

PlanOutcome LazyPrmPlanner::plan(
  const MotionQuery& query, const ConfigurationSpace& space) const
{
  LazyPrmParams params;
  params.samples = _samples;
  params.radius = _radius_fraction * space.bounds.diagonal();
  params.timeout = _timeout;
  // splitmix64 finalizer over the base seed and the query key
  std::uint64_t z = _seed ^ (PlanKeyHash{}(make_plan_key(query))
    + 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  params.seed = z ^ (z >> 31);
  return plan_lazy_prm(query, space, params);
}

//==============================================================================
namespace {

std::int64_t quantize(double v)
{
  return static_cast<std::int64_t>(std::llround(v * 1e6));
}

} // namespace

PlanKey make_plan_key(const MotionQuery& query)
{
  return PlanKey{
    quantize(query.start.x), quantize(query.start.y),
    quantize(query.goal.x), quantize(query.goal.y),
    query.signature.key()};
}

std::size_t PlanKeyHash::operator()(const PlanKey& key) const noexcept
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto mix = [&h](std::uint64_t v)
    {
      for (int shift = 0; shift < 64; shift += 8)
      {
        h ^= (v >> shift) & 0xff;
        h *= 0x100000001b3ULL;
      }
    };
  mix(static_cast<std::uint64_t>(key.start_x));
  mix(static_cast<std::uint64_t>(key.start_y));
  mix(static_cast<std::uint64_t>(key.goal_x));
  mix(static_cast<std::uint64_t>(key.goal_y));
  for (const char c : key.signature)
  {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

std::shared_ptr<const PlanOutcome> PlanCache::find(const PlanKey& key) const
{
  std::lock_guard<std::mutex> lock(_mutex);
  const auto it = _entries.find(key);
  return it == _entries.end() ? nullptr : it->second;
}

void PlanCache::insert(const PlanKey& key, const PlanOutcome& outcome)
{
  if (outcome.status == PlanStatus::Timeout)
    return;
  auto stored = std::make_shared<const PlanOutcome>(outcome);
  std::lock_guard<std::mutex> lock(_mutex);
  _entries.insert_or_assign(key, std::move(stored));
}

std::size_t PlanCache::size() const
{
  std::lock_guard<std::mutex> lock(_mutex);
  return _entries.size();
}

PlanOutcome memoized_plan(
  const MotionQuery& query, PlanCache& cache, const MotionPlanner& planner,
  const ConfigurationSpace& space)
{
  const PlanKey key = make_plan_key(query);
  if (const auto hit = cache.find(key))
    return *hit;
  PlanOutcome outcome = planner.plan(query, space);
  cache.insert(key, outcome);
  return outcome;
}

//==============================================================================
namespace {

/// Counts calls on the way to the real planner.
class CountingPlanner : public MotionPlanner
{
public:
  CountingPlanner(const MotionPlanner& inner, std::atomic<std::size_t>& count)
  : _inner(inner), _count(count)
  {
  }

  PlanOutcome plan(
    const MotionQuery& query, const ConfigurationSpace& space) const override
  {
    ++_count;
    return _inner.plan(query, space);
  }

private:
  const MotionPlanner& _inner;
  std::atomic<std::size_t>& _count;
};

} // namespace

MotionLayer::MotionLayer(
  const ProblemDomain& domain,
  std::shared_ptr<const MotionPlanner> planner,
  bool caching)
: _domain(domain), _planner(std::move(planner)), _caching(caching)
{
  if (!_planner)
    throw std::invalid_argument("MotionLayer: planner required");
}

SpaceSignature MotionLayer::robot_signature(std::size_t robot) const
{
  return SpaceSignature{{_domain.robots().at(robot).type_id}};
}

SpaceSignature MotionLayer::coalition_signature(
  std::span<const std::size_t> robots) const
{
  return itags::coalition_signature(_domain, robots);
}

const ConfigurationSpace& MotionLayer::space(const SpaceSignature& signature)
{
  const std::string key = signature.key();
  std::lock_guard<std::mutex> lock(_space_mutex);
  auto it = _spaces.find(key);
  if (it == _spaces.end())
  {
    it = _spaces.emplace(key, std::make_unique<ConfigurationSpace>(
          coalition_space(_domain, signature))).first;
  }
  return *it->second;
}

PlanOutcome MotionLayer::plan(
  const Point& start, const Point& goal, const SpaceSignature& signature)
{
  const MotionQuery query{start, goal, signature};
  const ConfigurationSpace& free_space = space(signature);
  const CountingPlanner counting(*_planner, _invocations);
  if (!_caching)
    return counting.plan(query, free_space);
  return memoized_plan(query, _cache, counting, free_space);
}

} // namespace itags
