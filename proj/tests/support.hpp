// Shared fixtures and independent oracles for the test suites.
#ifndef ITAGS_TESTS_SUPPORT_HPP
#define ITAGS_TESTS_SUPPORT_HPP

#include <itags/allocation.hpp>
#include <itags/domain.hpp>
#include <itags/matrix.hpp>
#include <itags/motion.hpp>
#include <itags/scheduler.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <vector>

namespace itags::testing {

inline constexpr double inf = std::numeric_limits<double>::infinity();

inline double uniform(std::mt19937_64& rng, double lo, double hi)
{
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi)
{
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline ConfigurationSpace open_space(
  const std::string& type, double size = 100.0,
  std::vector<Polygon> obstacles = {})
{
  return {type, Bounds{0.0, 0.0, size, size}, std::move(obstacles)};
}

/// One robot type "ground" on an open square map.
inline ProblemDomain make_domain(
  std::vector<Robot> robots, TaskNetwork network,
  std::vector<std::string> traits = {"t0"},
  std::vector<Polygon> obstacles = {})
{
  std::map<std::string, ConfigurationSpace> spaces;
  for (const auto& r : robots)
    spaces.emplace(r.type_id, open_space(r.type_id, 100.0, obstacles));
  return ProblemDomain(std::move(traits), std::move(network),
           std::move(robots), std::move(spaces));
}

inline Robot robot_at(Point p, std::vector<double> traits, double speed = 1.0,
  std::string type = "ground")
{
  return Robot{std::move(traits), speed, std::move(type), p};
}

inline Task task_at(Point from, Point to, std::vector<double> requirements,
  double duration)
{
  return Task{std::move(requirements), duration, from, to};
}

/// Straight-line planner that counts its invocations.
class StraightPlanner : public MotionPlanner
{
public:
  PlanOutcome plan(const MotionQuery& q, const ConfigurationSpace& space)
  const override
  {
    ++calls;
    if (!space.is_free(q.start) || !space.is_free(q.goal) ||
      !space.is_segment_free(q.start, q.goal))
      return PlanOutcome::infeasible();
    if (q.start == q.goal)
      return PlanOutcome::with(MotionPlan{{q.start}, 0.0});
    return PlanOutcome::with(
      MotionPlan{{q.start, q.goal}, distance(q.start, q.goal)});
  }

  mutable std::atomic<std::size_t> calls{0};
};

//------------------------------------------------------------------------------
// Heuristic oracles

inline double brute_apr(const Allocation& a, const Matrix& q, const Matrix& y)
{
  double unmet = 0.0;
  double total = 0.0;
  for (std::size_t m = 0; m < y.rows(); ++m)
  {
    for (std::size_t u = 0; u < y.cols(); ++u)
    {
      double supplied = 0.0;
      for (std::size_t n = 0; n < q.rows(); ++n)
        supplied += a(m, n) ? q(n, u) : 0.0;
      unmet += std::max(y(m, u) - supplied, 0.0);
      total += std::abs(y(m, u));
    }
  }
  return unmet / total;
}

//------------------------------------------------------------------------------
// Lattice uniform-cost oracle. Same lattice as the grid planner: anchored at
// the start, free lattice points, collision-free edges, goal reached from the
// corners of its cell. Costs are kept as (straight, diagonal) step counts.

struct LatticeAnswer
{
  bool found = false;
  double length = 0.0;
};

inline LatticeAnswer lattice_ucs(
  const Point& s, const Point& g, const ConfigurationSpace& space, double r)
{
  if (!space.is_free(s) || !space.is_free(g))
    return {};
  if (s == g)
    return {true, 0.0};

  const Bounds& b = space.bounds;
  const long i0 = -static_cast<long>(std::floor((s.x - b.x_min) / r));
  const long i1 = static_cast<long>(std::floor((b.x_max - s.x) / r));
  const long j0 = -static_cast<long>(std::floor((s.y - b.y_min) / r));
  const long j1 = static_cast<long>(std::floor((b.y_max - s.y) / r));
  const long w = i1 - i0 + 1;
  const long h = j1 - j0 + 1;
  const auto id = [&](long i, long j) { return (i - i0) + w * (j - j0); };
  const auto at = [&](long i, long j) {
      return Point{s.x + static_cast<double>(i) * r,
        s.y + static_cast<double>(j) * r};
    };
  const auto cost = [&](std::pair<long, long> c) {
      return r * (static_cast<double>(c.first) +
             static_cast<double>(c.second) * std::numbers::sqrt2);
    };

  std::vector<std::pair<long, long>> best(
    static_cast<std::size_t>(w * h), {-1, -1});
  std::vector<char> done(static_cast<std::size_t>(w * h), 0);
  using Item = std::pair<double, long>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  best[static_cast<std::size_t>(id(0, 0))] = {0, 0};
  queue.push({0.0, id(0, 0)});

  while (!queue.empty())
  {
    const auto [c, k] = queue.top();
    queue.pop();
    if (done[static_cast<std::size_t>(k)])
      continue;
    done[static_cast<std::size_t>(k)] = 1;
    const long i = k % w + i0;
    const long j = k / w + j0;
    for (long di = -1; di <= 1; ++di)
    {
      for (long dj = -1; dj <= 1; ++dj)
      {
        if (di == 0 && dj == 0)
          continue;
        const long ni = i + di;
        const long nj = j + dj;
        if (ni < i0 || ni > i1 || nj < j0 || nj > j1)
          continue;
        if (!space.is_free(at(ni, nj)) ||
          !space.is_segment_free(at(i, j), at(ni, nj)))
          continue;
        auto steps = best[static_cast<std::size_t>(k)];
        if (di != 0 && dj != 0)
          ++steps.second;
        else
          ++steps.first;
        auto& slot = best[static_cast<std::size_t>(id(ni, nj))];
        if (slot.first < 0 || cost(steps) < cost(slot))
        {
          slot = steps;
          queue.push({cost(steps), id(ni, nj)});
        }
      }
    }
  }

  LatticeAnswer answer;
  const long gi = static_cast<long>(std::floor((g.x - s.x) / r));
  const long gj = static_cast<long>(std::floor((g.y - s.y) / r));
  for (long i = gi; i <= gi + 1; ++i)
  {
    for (long j = gj; j <= gj + 1; ++j)
    {
      if (i < i0 || i > i1 || j < j0 || j > j1)
        continue;
      const auto& steps = best[static_cast<std::size_t>(id(i, j))];
      if (steps.first < 0)
        continue;
      const Point p = at(i, j);
      if (!space.is_free(p) || !(p == g || space.is_segment_free(p, g)))
        continue;
      const double total = cost(steps) + distance(p, g);
      if (!answer.found || total < answer.length)
        answer = {true, total};
    }
  }
  return answer;
}

//------------------------------------------------------------------------------
// Ordering oracle: makespan of one ordering by direct longest-path relaxation,
// independent of the STN code.

struct OrderingInstance
{
  std::vector<double> duration;
  std::vector<std::pair<std::size_t, std::size_t>> precedence;
  /// Tasks per robot.
  std::vector<std::vector<std::size_t>> tasks_of_robot;
  /// travel[r][p + 1][s]: p = -1 for the robot's start.
  std::function<double(std::size_t, std::optional<std::size_t>, std::size_t)>
  travel;
};

/// +inf when the ordering is cyclic for some robot or overall.
inline double ordering_makespan(
  const OrderingInstance& inst,
  const std::vector<std::vector<bool>>& closure,
  const std::vector<DisjunctiveConstraint>& disjunctives,
  const std::vector<bool>& ordering)
{
  const std::size_t m_count = inst.duration.size();
  // Lower-bound edges: (from end of a | origin) -> start of b with a gap.
  struct Edge { std::optional<std::size_t> from; std::size_t to; double gap; };
  std::vector<Edge> edges;
  for (const auto& [a, b] : inst.precedence)
    edges.push_back({a, b, 0.0});

  for (std::size_t r = 0; r < inst.tasks_of_robot.size(); ++r)
  {
    auto tasks = inst.tasks_of_robot[r];
    if (tasks.empty())
      continue;
    const auto before = [&](std::size_t x, std::size_t y) {
        if (closure[x][y])
          return true;
        if (closure[y][x])
          return false;
        for (std::size_t i = 0; i < disjunctives.size(); ++i)
        {
          const auto& d = disjunctives[i];
          if (d.robot == r && d.task_a == std::min(x, y) &&
            d.task_b == std::max(x, y))
            return (x == d.task_a) == ordering[i];
        }
        return x < y;
      };
    // Insertion into a chain; a cycle shows up as an inconsistent pair.
    std::vector<std::size_t> chain;
    std::vector<std::size_t> rest = tasks;
    while (!rest.empty())
    {
      bool placed = false;
      for (std::size_t k = 0; k < rest.size(); ++k)
      {
        const std::size_t x = rest[k];
        const bool first = std::none_of(rest.begin(), rest.end(),
            [&](std::size_t y) { return y != x && before(y, x); });
        if (first)
        {
          chain.push_back(x);
          rest.erase(rest.begin() + static_cast<long>(k));
          placed = true;
          break;
        }
      }
      if (!placed)
        return inf;
    }
    edges.push_back({std::nullopt, chain[0], inst.travel(r, std::nullopt, chain[0])});
    for (std::size_t k = 1; k < chain.size(); ++k)
      edges.push_back({chain[k - 1], chain[k],
          inst.travel(r, chain[k - 1], chain[k])});
  }
  for (std::size_t i = 0; i < disjunctives.size(); ++i)
  {
    const auto& d = disjunctives[i];
    if (ordering[i])
      edges.push_back({d.task_a, d.task_b, 0.0});
    else
      edges.push_back({d.task_b, d.task_a, 0.0});
  }

  std::vector<double> start(m_count, 0.0);
  for (std::size_t round = 0; round <= m_count + 1; ++round)
  {
    bool changed = false;
    for (const auto& e : edges)
    {
      const double t = e.from ? start[*e.from] + inst.duration[*e.from] + e.gap
                              : e.gap;
      if (t > start[e.to] + 1e-12)
      {
        start[e.to] = t;
        changed = true;
      }
    }
    if (!changed)
    {
      double makespan = 0.0;
      for (std::size_t m = 0; m < m_count; ++m)
        makespan = std::max(makespan, start[m] + inst.duration[m]);
      return makespan;
    }
  }
  return inf;
}

inline double exhaustive_optimum(
  const OrderingInstance& inst,
  const std::vector<std::vector<bool>>& closure,
  const std::vector<DisjunctiveConstraint>& disjunctives)
{
  const std::size_t k = disjunctives.size();
  double best = inf;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask)
  {
    std::vector<bool> ordering(k);
    for (std::size_t i = 0; i < k; ++i)
      ordering[i] = (mask >> i) & 1U;
    best = std::min(best,
        ordering_makespan(inst, closure, disjunctives, ordering));
  }
  return best;
}

/// Random DAG over `count` nodes: edges only from lower to higher index of a
/// random permutation.
inline std::vector<std::pair<std::size_t, std::size_t>> random_dag(
  std::mt19937_64& rng, std::size_t count, double density)
{
  std::vector<std::size_t> order(count);
  for (std::size_t i = 0; i < count; ++i)
    order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j)
      if (uniform(rng, 0.0, 1.0) < density)
        edges.emplace_back(order[i], order[j]);
  return edges;
}

} // namespace itags::testing

#endif // ITAGS_TESTS_SUPPORT_HPP
