#include <itags/search.hpp>

#include <itags/heuristics.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace itags {

std::shared_ptr<const MotionPlanner> make_planner(const SearchConfig& config)
{
  if (config.planner == PlannerKind::LazyPrm)
  {
    const auto timeout = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::duration<double>(config.planner_timeout_seconds));
    return std::make_shared<LazyPrmPlanner>(
      config.prm_samples, config.prm_radius, config.seed, timeout);
  }
  return std::make_shared<GridPlanner>(config.grid_resolution);
}

//==============================================================================
bool OpenList::Later::operator()(const Entry& a, const Entry& b) const
{
  if (a.tetaq != b.tetaq)
    return a.tetaq > b.tetaq;
  if (a.depth != b.depth)
    return a.depth < b.depth;
  return a.sequence > b.sequence;
}

void OpenList::push(double tetaq, std::size_t depth, std::size_t node)
{
  _queue.push({tetaq, depth, _next_sequence++, node});
}

OpenList::Entry OpenList::pop()
{
  Entry e = _queue.top();
  _queue.pop();
  return e;
}

bool ClosedSet::insert(const Allocation& allocation)
{
  return _seen.insert(allocation).second;
}

bool ClosedSet::contains(const Allocation& allocation) const
{
  return _seen.contains(allocation);
}

std::vector<Allocation> generate_successors(
  const Allocation& allocation, const ClosedSet& closed)
{
  std::vector<Allocation> children;
  for (std::size_t m = 0; m < allocation.tasks(); ++m)
  {
    for (std::size_t n = 0; n < allocation.robots(); ++n)
    {
      if (allocation(m, n))
        continue;
      Allocation child = allocation;
      child.set(m, n);
      if (!closed.contains(child))
        children.push_back(std::move(child));
    }
  }
  return children;
}

const char* to_string(Unsolved reason)
{
  switch (reason)
  {
    case Unsolved::Exhausted: return "exhausted";
    case Unsolved::NodeLimit: return "node_limit";
    case Unsolved::TimeLimit: return "time_limit";
  }
  return "unknown";
}

//==============================================================================
namespace {

using Clock = std::chrono::steady_clock;

class Stopwatch
{
public:
  Stopwatch() : _start(Clock::now()) {}

  double seconds() const
  {
    return std::chrono::duration<double>(Clock::now() - _start).count();
  }

private:
  Clock::time_point _start;
};

void check_inputs(const ProblemDomain& domain, const SearchConfig& config)
{
  if (!(config.alpha >= 0.0 && config.alpha <= 1.0))
    throw std::invalid_argument("search: alpha outside [0, 1]");
  if (!validate_domain(domain).empty())
    throw std::invalid_argument("search: domain is not valid");
}

Solution make_solution(const SearchNode& node)
{
  Solution solution;
  solution.allocation = node.allocation;
  solution.plans = node.bundle->plans;
  solution.schedule = *node.bundle->s_bar;
  return solution;
}

void finish(SearchResult& result, const Stopwatch& clock,
  const MotionLayer& motion, const ClosedSet& closed)
{
  result.metrics.compute_seconds = clock.seconds();
  result.metrics.solved = result.solution.has_value();
  result.metrics.makespan = result.solution
    ? result.solution->schedule.makespan : 0.0;
  result.closed_size = closed.size();
  result.planner_invocations = motion.planner_invocations();
}

} // namespace

SearchResult itags(
  const ProblemDomain& domain, const SearchConfig& config,
  const SearchObserver& observer)
{
  check_inputs(domain, config);
  const Stopwatch clock;

  MotionLayer motion(domain, make_planner(config));
  const Scheduler scheduler(domain, motion, {config.tabu, config.seed});
  const Matrix& q = domain.robot_traits();
  const Matrix& y = domain.desired_traits();

  SearchResult result;
  std::vector<SearchNode> nodes;
  OpenList open;
  ClosedSet closed;

  // Evaluates an allocation and pushes it unless it cannot be scheduled.
  const auto evaluate = [&](Allocation allocation,
    std::optional<std::size_t> parent)
    {
      ++result.evaluations;
      if (observer.on_evaluate)
        observer.on_evaluate(allocation);

      SearchNode node;
      node.apr = apr(allocation, q, y);
      node.bundle = std::make_shared<const ScheduleBundle>(
        scheduler.schedule(allocation));
      node.nsq = nsq(node.bundle->makespan_bar(),
          node.bundle->s_best.makespan, node.bundle->c_worst);
      node.tetaq = tetaq(node.apr, node.nsq, config.alpha);
      node.depth = allocation.count();
      node.parent = parent;
      node.allocation = std::move(allocation);

      if (std::isinf(node.nsq))
      {
        ++result.nodes_pruned;
        if (observer.on_prune)
          observer.on_prune(node);
        return;
      }

      const std::size_t index = nodes.size();
      open.push(node.tetaq, node.depth, index);
      ++result.metrics.nodes_visited;
      if (observer.on_push)
        observer.on_push(node);
      nodes.push_back(std::move(node));
    };

  Allocation root(domain.task_count(), domain.robot_count());
  closed.insert(root);
  evaluate(std::move(root), std::nullopt);

  while (!open.empty())
  {
    if (clock.seconds() > config.time_limit_seconds)
    {
      result.reason = Unsolved::TimeLimit;
      finish(result, clock, motion, closed);
      return result;
    }

    const std::size_t index = open.pop().node;
    if (observer.on_pop)
      observer.on_pop(nodes[index]);

    if (nodes[index].apr == 0.0 && std::isfinite(nodes[index].nsq))
    {
      result.solution = make_solution(nodes[index]);
      finish(result, clock, motion, closed);
      return result;
    }

    ++result.metrics.nodes_expanded;
    // Only open nodes need their schedules.
    const Allocation allocation = nodes[index].allocation;
    nodes[index].bundle.reset();

    for (auto& child : generate_successors(allocation, closed))
    {
      closed.insert(child);
      evaluate(std::move(child), index);

      if (result.metrics.nodes_visited >= config.node_limit)
      {
        result.reason = Unsolved::NodeLimit;
        finish(result, clock, motion, closed);
        return result;
      }
      if (clock.seconds() > config.time_limit_seconds)
      {
        result.reason = Unsolved::TimeLimit;
        finish(result, clock, motion, closed);
        return result;
      }
    }
  }

  result.reason = Unsolved::Exhausted;
  finish(result, clock, motion, closed);
  return result;
}

SearchResult itags(
  const ProblemDomain& domain, double alpha, SearchConfig config,
  const SearchObserver& observer)
{
  config.alpha = alpha;
  return itags(domain, config, observer);
}

SearchResult itags_sequential(
  const ProblemDomain& domain, const SearchConfig& config,
  const SearchObserver& observer)
{
  check_inputs(domain, config);
  const Stopwatch clock;

  MotionLayer motion(domain, make_planner(config));
  const Scheduler scheduler(domain, motion, {config.tabu, config.seed});
  const Matrix& q = domain.robot_traits();
  const Matrix& y = domain.desired_traits();

  SearchResult result;
  std::vector<SearchNode> nodes;
  OpenList open;
  ClosedSet closed;

  const auto push = [&](Allocation allocation,
    std::optional<std::size_t> parent)
    {
      ++result.evaluations;
      if (observer.on_evaluate)
        observer.on_evaluate(allocation);

      SearchNode node;
      node.apr = apr(allocation, q, y);
      node.tetaq = node.apr;
      node.depth = allocation.count();
      node.parent = parent;
      node.allocation = std::move(allocation);

      const std::size_t index = nodes.size();
      open.push(node.tetaq, node.depth, index);
      ++result.metrics.nodes_visited;
      if (observer.on_push)
        observer.on_push(node);
      nodes.push_back(std::move(node));
    };

  Allocation root(domain.task_count(), domain.robot_count());
  closed.insert(root);
  push(std::move(root), std::nullopt);

  const auto stop = [&](Unsolved reason)
    {
      result.reason = reason;
      finish(result, clock, motion, closed);
      return result;
    };

  while (!open.empty())
  {
    if (clock.seconds() > config.time_limit_seconds)
      return stop(Unsolved::TimeLimit);

    const std::size_t index = open.pop().node;
    SearchNode& node = nodes[index];
    if (observer.on_pop)
      observer.on_pop(node);

    if (node.apr == 0.0)
    {
      node.bundle = std::make_shared<const ScheduleBundle>(
        scheduler.schedule(node.allocation));
      if (node.bundle->feasible())
      {
        node.nsq = nsq(node.bundle->makespan_bar(),
            node.bundle->s_best.makespan, node.bundle->c_worst);
        result.solution = make_solution(node);
        finish(result, clock, motion, closed);
        return result;
      }
      ++result.failed_goals;
      node.bundle.reset();
      if (observer.on_prune)
        observer.on_prune(node);
      continue;
    }

    ++result.metrics.nodes_expanded;
    const Allocation allocation = node.allocation;
    for (auto& child : generate_successors(allocation, closed))
    {
      closed.insert(child);
      push(std::move(child), index);
      if (result.metrics.nodes_visited >= config.node_limit)
        return stop(Unsolved::NodeLimit);
    }
  }

  return stop(Unsolved::Exhausted);
}

//==============================================================================
namespace {

template<typename... Args>
std::string concat(const Args&... args)
{
  std::ostringstream out;
  out.precision(17);
  (out << ... << args);
  return out.str();
}

} // namespace

std::vector<std::string> verify_solution(
  const ProblemDomain& domain, const Solution& solution, double tol)
{
  std::vector<std::string> problems;
  const auto& tasks = domain.tasks();
  const auto& robots = domain.robots();
  const std::size_t m_count = tasks.size();
  const Allocation& a = solution.allocation;
  const Schedule& s = solution.schedule;

  if (a.tasks() != m_count || a.robots() != robots.size())
  {
    problems.push_back("allocation dimensions do not match the domain");
    return problems;
  }
  if (s.start.size() != m_count || s.end.size() != m_count)
  {
    problems.push_back("schedule does not cover every task");
    return problems;
  }

  const TraitMismatch mismatch = trait_mismatch(
    a, domain.robot_traits(), domain.desired_traits());
  if (mismatch.clipped_error > apr_epsilon)
    problems.push_back(concat("unmet requirements: ", mismatch.clipped_error));

  double makespan = 0.0;
  for (std::size_t m = 0; m < m_count; ++m)
  {
    if (s.start[m] < -tol)
      problems.push_back(concat("task ", m, " starts before the origin"));
    makespan = std::max(makespan, s.end[m]);
  }
  if (std::abs(makespan - s.makespan) > tol)
    problems.push_back("makespan is not the latest end time");

  for (const auto& [i, j] : domain.network().precedence)
  {
    if (s.end[i] > s.start[j] + tol)
      problems.push_back(concat("precedence ", i, " -> ", j, " violated"));
  }

  // Plans: collision-free in the right space, consistent lengths.
  std::map<std::pair<std::size_t, std::size_t>, const MotionPlan*> approach;
  std::map<std::size_t, const PlanRecord*> execution;
  for (const auto& record : solution.plans)
  {
    if (!record.plan || record.plan->waypoints.empty())
    {
      problems.push_back("empty motion plan");
      continue;
    }
    if (record.robot_ids.empty() || record.task >= m_count)
    {
      problems.push_back("plan references no robot or an unknown task");
      continue;
    }
    const MotionPlan& plan = *record.plan;
    const ConfigurationSpace space = coalition_space(
      domain, coalition_signature(domain, record.robot_ids));
    for (std::size_t k = 0; k < plan.waypoints.size(); ++k)
    {
      const bool clear = k == 0
        ? space.is_free(plan.waypoints[0])
        : space.is_segment_free(plan.waypoints[k - 1], plan.waypoints[k]);
      if (!clear)
      {
        problems.push_back(concat(
            to_string(record.kind), " plan for task ", record.task,
            " collides at waypoint ", k));
        break;
      }
    }
    const double measured = path_length(plan.waypoints);
    if (std::abs(measured - plan.length) > tol * std::max(1.0, measured))
    {
      problems.push_back(concat(
          "plan length ", plan.length, " differs from waypoints ", measured));
    }

    if (record.kind == PlanKind::Execution)
    {
      execution[record.task] = &record;
      if (plan.waypoints.front() != tasks[record.task].initial_config
        || plan.waypoints.back() != tasks[record.task].terminal_config)
      {
        problems.push_back(concat(
            "execution plan endpoints wrong for task ", record.task));
      }
    }
    else
    {
      if (record.robot_ids.size() != 1)
        problems.push_back("approach plan must have exactly one robot");
      else
        approach[{record.robot_ids.front(), record.task}] = &plan;
    }
  }

  // Task durations: static plus coalition execution motion.
  for (std::size_t m = 0; m < m_count; ++m)
  {
    const auto coalition = a.coalition(m);
    double expected = tasks[m].static_duration;
    if (!coalition.empty()
      && tasks[m].initial_config != tasks[m].terminal_config)
    {
      const auto it = execution.find(m);
      if (it == execution.end())
      {
        problems.push_back(concat("task ", m, " has no execution plan"));
        continue;
      }
      if (it->second->robot_ids != coalition)
        problems.push_back(concat("task ", m, " execution plan coalition"));
      double speed = std::numeric_limits<double>::infinity();
      for (const auto n : coalition)
        speed = std::min(speed, robots[n].speed);
      expected += it->second->plan->length / speed;
    }
    const double actual = s.end[m] - s.start[m];
    if (std::abs(actual - expected) > tol * std::max(1.0, expected))
    {
      problems.push_back(concat(
          "task ", m, " lasts ", actual, ", expected ", expected));
    }
  }

  // Robots: one task at a time, with travel between consecutive tasks.
  for (std::size_t n = 0; n < robots.size(); ++n)
  {
    auto sequence = a.tasks_of(n);
    std::sort(sequence.begin(), sequence.end(),
      [&](std::size_t x, std::size_t y)
      {
        return std::tie(s.start[x], s.end[x], x)
        < std::tie(s.start[y], s.end[y], y);
      });

    for (std::size_t k = 0; k < sequence.size(); ++k)
    {
      const std::size_t m = sequence[k];
      const Point from = k == 0 ? robots[n].initial_config
        : tasks[sequence[k - 1]].terminal_config;
      const double ready = k == 0 ? 0.0 : s.end[sequence[k - 1]];
      const Point to = tasks[m].initial_config;

      double travel = 0.0;
      if (from != to)
      {
        const auto it = approach.find({n, m});
        if (it == approach.end())
        {
          problems.push_back(concat(
              "robot ", n, " has no approach plan for task ", m));
          continue;
        }
        const MotionPlan& plan = *it->second;
        if (plan.waypoints.front() != from || plan.waypoints.back() != to)
        {
          problems.push_back(concat(
              "robot ", n, " approach plan for task ", m,
              " does not start where the robot is"));
        }
        travel = plan.length / robots[n].speed;
      }
      if (ready + travel > s.start[m] + tol * std::max(1.0, s.start[m]))
      {
        problems.push_back(concat(
            "robot ", n, " cannot reach task ", m, " by its start"));
      }
    }
  }

  return problems;
}

} // namespace itags
