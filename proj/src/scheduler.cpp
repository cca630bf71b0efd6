#include <itags/scheduler.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace itags {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b)
{
  std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

} // namespace

std::pair<Stn, Schedule> build_best_schedule(const TaskNetwork& network)
{
  Stn stn(network.tasks.size());
  for (std::size_t m = 0; m < network.tasks.size(); ++m)
    stn.set_duration(m, network.tasks[m].static_duration);
  for (const auto& [i, j] : network.precedence)
    stn.add_precedence(i, j);
  Schedule schedule = earliest_schedule(stn);
  return {std::move(stn), std::move(schedule)};
}

std::vector<DisjunctiveConstraint> derive_disjunctive_constraints(
  const Allocation& allocation, const TaskNetwork& network)
{
  const auto closure = precedence_closure(network);
  std::vector<DisjunctiveConstraint> constraints;
  for (std::size_t n = 0; n < allocation.robots(); ++n)
  {
    const auto tasks = allocation.tasks_of(n);
    for (std::size_t x = 0; x < tasks.size(); ++x)
    {
      for (std::size_t y = x + 1; y < tasks.size(); ++y)
      {
        const std::size_t a = tasks[x];
        const std::size_t b = tasks[y];
        if (closure[a][b] || closure[b][a])
          continue;
        constraints.push_back({a, b, n});
      }
    }
  }
  return constraints;
}

double worst_makespan(
  const TaskNetwork& network, double longest_path, double slowest_speed)
{
  if (!(slowest_speed > 0.0))
    throw std::invalid_argument("worst_makespan: speed must be positive");
  if (!(longest_path >= 0.0))
    throw std::invalid_argument("worst_makespan: negative path length");

  const double m = static_cast<double>(network.tasks.size());
  double total = 2.0 * m * longest_path / slowest_speed;
  for (const auto& task : network.tasks)
    total += task.static_duration;
  return total;
}

RobotRouting make_routing(
  const Allocation& allocation, const TaskNetwork& network)
{
  RobotRouting routing;
  routing.closure = precedence_closure(network);
  routing.tasks_of_robot.resize(allocation.robots());
  for (std::size_t n = 0; n < allocation.robots(); ++n)
    routing.tasks_of_robot[n] = allocation.tasks_of(n);
  return routing;
}

namespace {

constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();

/// Dense (robot, task, task) -> disjunctive index table.
class DisjunctiveIndex
{
public:
  DisjunctiveIndex(
    std::span<const DisjunctiveConstraint> disjunctives,
    std::size_t robot_count, std::size_t task_count)
  : _tasks(task_count), _table(robot_count * task_count * task_count, unset)
  {
    for (std::size_t i = 0; i < disjunctives.size(); ++i)
    {
      const auto& d = disjunctives[i];
      if (d.robot >= robot_count || d.task_a >= task_count ||
        d.task_b >= task_count)
        throw std::invalid_argument("disjunctive constraint out of range");
      _table[(d.robot * _tasks + d.task_a) * _tasks + d.task_b] = i;
    }
  }

  std::size_t find(std::size_t r, std::size_t a, std::size_t b) const
  {
    return _table[(r * _tasks + a) * _tasks + b];
  }

private:
  std::size_t _tasks;
  std::vector<std::size_t> _table;
};

std::optional<OrderedNetwork> build_ordered(
  const Stn& base,
  std::span<const DisjunctiveConstraint> disjunctives,
  const DisjunctiveIndex& index,
  const Ordering& ordering,
  const RobotRouting& routing,
  const TransitionBound& bound)
{
  std::vector<std::vector<std::size_t>> sequences(
    routing.tasks_of_robot.size());

  // Sequences first: a cyclic ordering is rejected before any copying.
  for (std::size_t r = 0; r < routing.tasks_of_robot.size(); ++r)
  {
    const auto& tasks = routing.tasks_of_robot[r];
    if (tasks.empty())
      continue;

    const auto before = [&](std::size_t x, std::size_t y)
      {
        if (routing.closure[x][y])
          return true;
        if (routing.closure[y][x])
          return false;
        const std::size_t i = index.find(r, std::min(x, y), std::max(x, y));
        if (i == unset)
          return x < y;
        const bool a_first = ordering[i];
        return x < y ? a_first : !a_first;
      };

    // Rank = number of the robot's tasks ordered before this one. The
    // relation is complete, so ranks form a permutation iff it is acyclic.
    std::vector<std::size_t> sequence(tasks.size(), unset);
    for (const std::size_t x : tasks)
    {
      std::size_t rank = 0;
      for (const std::size_t y : tasks)
      {
        if (y != x && before(y, x))
          ++rank;
      }
      if (sequence[rank] != unset)
        return std::nullopt;
      sequence[rank] = x;
    }
    sequences[r] = std::move(sequence);
  }

  OrderedNetwork result{base, std::move(sequences)};
  for (std::size_t r = 0; r < result.sequences.size(); ++r)
  {
    const auto& sequence = result.sequences[r];
    if (sequence.empty())
      continue;

    const double approach = bound(r, std::nullopt, sequence.front());
    if (!std::isfinite(approach))
      return std::nullopt;
    result.stn.add_release(sequence.front(), approach);

    for (std::size_t k = 1; k < sequence.size(); ++k)
    {
      const double travel = bound(r, sequence[k - 1], sequence[k]);
      if (!std::isfinite(travel))
        return std::nullopt;
      result.stn.add_precedence(sequence[k - 1], sequence[k], travel);
    }
  }

  for (std::size_t i = 0; i < disjunctives.size(); ++i)
  {
    const auto& d = disjunctives[i];
    if (ordering[i])
      result.stn.add_precedence(d.task_a, d.task_b);
    else
      result.stn.add_precedence(d.task_b, d.task_a);
  }

  return result;
}

} // namespace

std::optional<OrderedNetwork> build_ordered_network(
  const Stn& base,
  std::span<const DisjunctiveConstraint> disjunctives,
  const Ordering& ordering,
  const RobotRouting& routing,
  const TransitionBound& bound)
{
  if (ordering.size() != disjunctives.size())
    throw std::invalid_argument("build_ordered_network: ordering size");
  const DisjunctiveIndex index(
    disjunctives, routing.tasks_of_robot.size(), routing.closure.size());
  return build_ordered(base, disjunctives, index, ordering, routing, bound);
}

std::optional<OrderingResult> resolve_orderings_tabu(
  const Stn& base,
  std::span<const DisjunctiveConstraint> disjunctives,
  const RobotRouting& routing,
  const TransitionBound& bound,
  const TabuOptions& options)
{
  const auto reference = try_earliest_schedule(base);
  if (!reference)
    return std::nullopt;

  const std::size_t k = disjunctives.size();
  Ordering current(k);
  for (std::size_t i = 0; i < k; ++i)
  {
    const auto& d = disjunctives[i];
    const auto key_a = std::make_pair(reference->start[d.task_a], d.task_a);
    const auto key_b = std::make_pair(reference->start[d.task_b], d.task_b);
    current[i] = key_a < key_b;
  }

  const DisjunctiveIndex index(
    disjunctives, routing.tasks_of_robot.size(), routing.closure.size());
  std::unordered_map<Ordering, double> memo;
  const auto evaluate = [&](const Ordering& ordering)
    {
      if (const auto it = memo.find(ordering); it != memo.end())
        return it->second;
      double makespan = inf;
      if (auto network = build_ordered(
          base, disjunctives, index, ordering, routing, bound))
      {
        if (const auto schedule = try_earliest_schedule(network->stn))
          makespan = schedule->makespan;
      }
      memo.emplace(ordering, makespan);
      return makespan;
    };

  double current_value = evaluate(current);
  Ordering best = current;
  double best_value = current_value;

  if (k > 0 && !(options.first_consistent && std::isfinite(best_value)))
  {
    std::mt19937_64 rng(options.seed);
    std::vector<std::size_t> tabu_until(k, 0);
    std::size_t non_improving = 0;
    const TabuParams& p = options.params;

    for (std::size_t iteration = 1; iteration <= p.max_iterations; ++iteration)
    {
      double chosen_value = inf;
      std::vector<std::size_t> ties;
      for (std::size_t i = 0; i < k; ++i)
      {
        Ordering neighbour = current;
        neighbour[i] = !neighbour[i];
        const double value = evaluate(neighbour);
        const bool allowed = tabu_until[i] < iteration || value < best_value;
        if (!allowed)
          continue;
        if (ties.empty() || value < chosen_value)
        {
          chosen_value = value;
          ties.assign(1, i);
        }
        else if (value == chosen_value)
        {
          ties.push_back(i);
        }
      }
      if (ties.empty())
        break;

      std::size_t move = ties.front();
      if (ties.size() > 1)
      {
        std::uniform_int_distribution<std::size_t> pick(0, ties.size() - 1);
        move = ties[pick(rng)];
      }

      current[move] = !current[move];
      current_value = chosen_value;
      tabu_until[move] = iteration + p.tenure;

      if (current_value < best_value)
      {
        best = current;
        best_value = current_value;
        non_improving = 0;
        if (options.first_consistent)
          break;
      }
      else if (++non_improving >= p.max_non_improving)
      {
        break;
      }
    }
  }

  if (!std::isfinite(best_value))
    return std::nullopt;

  auto network = build_ordered(
    base, disjunctives, index, best, routing, bound);
  auto schedule = try_earliest_schedule(network->stn);
  return OrderingResult{
    std::move(network->stn), std::move(*schedule), std::move(best),
    std::move(network->sequences)};
}

const char* to_string(Infeasibility reason)
{
  switch (reason)
  {
    case Infeasibility::None: return "none";
    case Infeasibility::BestInconsistent: return "best_inconsistent";
    case Infeasibility::NoConsistentOrdering: return "no_consistent_ordering";
    case Infeasibility::MotionInfeasible: return "motion_infeasible";
    case Infeasibility::MotionTimeout: return "motion_timeout";
  }
  return "unknown";
}

double ScheduleBundle::makespan_bar() const
{
  return s_bar ? s_bar->makespan : inf;
}

//==============================================================================
Scheduler::Scheduler(
  const ProblemDomain& domain, MotionLayer& motion, SchedulerConfig config)
: _domain(domain),
  _motion(motion),
  _config(config),
  _best(build_best_schedule(domain.network()))
{
  const Bounds box = domain.workspace_bounds();
  _longest_path = 2.0 * (box.width() + box.height());
  _slowest_speed = inf;
  for (const auto& robot : domain.robots())
    _slowest_speed = std::min(_slowest_speed, robot.speed);
  if (!std::isfinite(_slowest_speed))
    _slowest_speed = 1.0;
  _c_worst = itags::worst_makespan(
    domain.network(), _longest_path, _slowest_speed);
}

ScheduleBundle Scheduler::schedule(const Allocation& allocation) const
{
  const auto& tasks = _domain.tasks();
  const auto& robots = _domain.robots();
  if (allocation.tasks() != tasks.size() || allocation.robots() != robots.size())
    throw std::invalid_argument("schedule: allocation dimensions");

  ScheduleBundle bundle;
  bundle.s_best = _best.second;
  bundle.c_worst = _c_worst;

  const auto disjunctives = derive_disjunctive_constraints(
    allocation, _domain.network());
  const RobotRouting routing = make_routing(allocation, _domain.network());

  TabuOptions options;
  options.params = _config.tabu;
  options.seed = mix_seed(_config.seed, allocation.fingerprint());

  // Orderings alone, before any motion query.
  {
    TabuOptions precheck = options;
    precheck.first_consistent = true;
    const TransitionBound zero =
      [](std::size_t, std::optional<std::size_t>, std::size_t) { return 0.0; };
    if (!resolve_orderings_tabu(
        _best.first, disjunctives, routing, zero, precheck))
    {
      bundle.reason = Infeasibility::NoConsistentOrdering;
      return bundle;
    }
  }

  bool saw_timeout = false;
  bool saw_infeasible = false;
  const auto note_failure = [&](PlanStatus status)
    {
      if (status == PlanStatus::Timeout)
        saw_timeout = true;
      else
        saw_infeasible = true;
    };

  // Execution motion of each coalition extends its task.
  Stn base = _best.first;
  for (std::size_t m = 0; m < tasks.size(); ++m)
  {
    const auto coalition = allocation.coalition(m);
    double duration = tasks[m].static_duration;
    if (!coalition.empty() && tasks[m].initial_config != tasks[m].terminal_config)
    {
      const auto outcome = _motion.plan(
        tasks[m].initial_config, tasks[m].terminal_config,
        _motion.coalition_signature(coalition));
      if (!outcome.found())
      {
        note_failure(outcome.status);
        bundle.reason = saw_timeout ? Infeasibility::MotionTimeout
          : Infeasibility::MotionInfeasible;
        return bundle;
      }
      double speed = inf;
      for (const auto n : coalition)
        speed = std::min(speed, robots[n].speed);
      duration += outcome.plan->length / speed;
      bundle.plans.push_back({coalition, PlanKind::Execution, m, outcome.plan});
    }
    base.set_duration(m, duration);
  }

  using LegKey = std::tuple<std::size_t, std::size_t, std::size_t>;
  constexpr std::size_t from_start = std::numeric_limits<std::size_t>::max();
  std::map<LegKey, PlanOutcome> legs;
  const auto leg = [&](std::size_t r, std::optional<std::size_t> pred,
    std::size_t succ) -> const PlanOutcome&
    {
      const LegKey key{r, pred.value_or(from_start), succ};
      auto it = legs.find(key);
      if (it == legs.end())
      {
        const Point from = pred ? tasks[*pred].terminal_config
          : robots[r].initial_config;
        const Point to = tasks[succ].initial_config;
        PlanOutcome outcome = from == to
          ? PlanOutcome::with(MotionPlan{{from}, 0.0})
          : _motion.plan(from, to, _motion.robot_signature(r));
        if (!outcome.found())
          note_failure(outcome.status);
        it = legs.emplace(key, std::move(outcome)).first;
      }
      return it->second;
    };

  const TransitionBound travel =
    [&](std::size_t r, std::optional<std::size_t> pred, std::size_t succ)
    {
      const PlanOutcome& outcome = leg(r, pred, succ);
      if (!outcome.found())
        return inf;
      return outcome.plan->length / robots[r].speed;
    };

  auto ordered = resolve_orderings_tabu(
    base, disjunctives, routing, travel, options);
  if (!ordered)
  {
    bundle.reason = saw_timeout ? Infeasibility::MotionTimeout
      : saw_infeasible ? Infeasibility::MotionInfeasible
      : Infeasibility::NoConsistentOrdering;
    bundle.plans.clear();
    return bundle;
  }

  for (std::size_t r = 0; r < ordered->sequences.size(); ++r)
  {
    const auto& sequence = ordered->sequences[r];
    std::optional<std::size_t> pred;
    for (const std::size_t task : sequence)
    {
      const PlanOutcome& outcome = leg(r, pred, task);
      pred = task;
      if (outcome.plan->length > 0.0)
      {
        bundle.plans.push_back(
          {{r}, PlanKind::Approach, task, outcome.plan});
      }
    }
  }

  bundle.stn_bar = std::move(ordered->stn);
  bundle.s_bar = std::move(ordered->schedule);
  if (bundle.s_bar->makespan > _c_worst)
  {
    bundle.exceeds_worst = true;
    static std::once_flag warned;
    std::call_once(warned, []()
      {
        std::clog << "warning: schedule makespan exceeds the worst-case "
          "estimate; NSQ above 1\n";
      });
  }
  return bundle;
}

ScheduleBundle schedule_allocation(
  const Allocation& allocation, const ProblemDomain& domain,
  MotionLayer& motion, const SchedulerConfig& config)
{
  return Scheduler(domain, motion, config).schedule(allocation);
}

} // namespace itags
