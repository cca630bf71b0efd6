#ifndef ITAGS__SCHEDULER_HPP
#define ITAGS__SCHEDULER_HPP

#include <itags/allocation.hpp>
#include <itags/domain.hpp>
#include <itags/motion.hpp>
#include <itags/schedule.hpp>
#include <itags/solution.hpp>
#include <itags/stn.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace itags {

/// A robot shared by two tasks that the precedence closure leaves unordered;
/// the pair must be serialized one way or the other. task_a < task_b.
struct DisjunctiveConstraint
{
  std::size_t task_a = 0;
  std::size_t task_b = 0;
  std::size_t robot = 0;

  friend bool operator==(
    const DisjunctiveConstraint&, const DisjunctiveConstraint&) = default;
};

/// Network with static durations and precedence only; its earliest schedule
/// is the best case any allocation can reach. Throws std::logic_error when
/// the network has a cycle.
std::pair<Stn, Schedule> build_best_schedule(const TaskNetwork& network);

std::vector<DisjunctiveConstraint> derive_disjunctive_constraints(
  const Allocation& allocation, const TaskNetwork& network);

/// Over-estimate of the worst makespan: 2 * M * z / w plus the sum of
/// static durations, z being the longest possible path and w the slowest
/// robot speed.
double worst_makespan(
  const TaskNetwork& network, double longest_path, double slowest_speed);

/// Travel-time lower bound for `robot` moving into `successor`'s initial
/// configuration, from `predecessor`'s terminal configuration or from the
/// robot's initial configuration when there is none. +inf when no motion
/// exists.
using TransitionBound = std::function<double(
      std::size_t robot, std::optional<std::size_t> predecessor,
      std::size_t successor)>;

/// Which tasks each robot serves and the precedence closure, so that every
/// robot's tasks can be put in one sequence.
struct RobotRouting
{
  std::vector<std::vector<std::size_t>> tasks_of_robot;
  std::vector<std::vector<bool>> closure;
};

RobotRouting make_routing(
  const Allocation& allocation, const TaskNetwork& network);

struct TabuParams
{
  std::size_t tenure = 4;
  std::size_t max_iterations = 100;
  std::size_t max_non_improving = 25;
};

/// One choice per disjunctive constraint: true when task_a goes first.
using Ordering = std::vector<bool>;

struct OrderedNetwork
{
  Stn stn;
  /// Each robot's tasks in service order.
  std::vector<std::vector<std::size_t>> sequences;
};

/// Adds to `base` the edges implied by an ordering: for every robot the
/// first task is released after the robot's approach bound and each later
/// task starts no earlier than its predecessor's end plus the transition
/// bound. Chosen orderings between non-adjacent tasks become plain
/// precedence edges. nullopt when the ordering is cyclic for some robot or
/// a needed bound is infinite.
std::optional<OrderedNetwork> build_ordered_network(
  const Stn& base,
  std::span<const DisjunctiveConstraint> disjunctives,
  const Ordering& ordering,
  const RobotRouting& routing,
  const TransitionBound& bound);

struct OrderingResult
{
  Stn stn;
  Schedule schedule;
  Ordering ordering;
  std::vector<std::vector<std::size_t>> sequences;
};

struct TabuOptions
{
  TabuParams params;
  std::uint64_t seed = 0;
  /// Return as soon as any consistent ordering is seen.
  bool first_consistent = false;
};

/// Tabu search over disjunctive orderings minimizing makespan. Starts from
/// the order of the base network's earliest start times (ties by task
/// index); a move flips one ordering. nullopt when no explored ordering is
/// consistent.
std::optional<OrderingResult> resolve_orderings_tabu(
  const Stn& base,
  std::span<const DisjunctiveConstraint> disjunctives,
  const RobotRouting& routing,
  const TransitionBound& bound,
  const TabuOptions& options = {});

enum class Infeasibility
{
  None,
  BestInconsistent,
  NoConsistentOrdering,
  MotionInfeasible,
  MotionTimeout,
};

const char* to_string(Infeasibility reason);

struct ScheduleBundle
{
  /// nullopt when infeasible.
  std::optional<Schedule> s_bar;
  Stn stn_bar;
  Schedule s_best;
  double c_worst = 0.0;
  std::vector<PlanRecord> plans;
  Infeasibility reason = Infeasibility::None;
  /// s_bar's makespan is above c_worst (NSQ above 1).
  bool exceeds_worst = false;

  bool feasible() const { return s_bar.has_value(); }
  /// +inf when infeasible.
  double makespan_bar() const;
};

struct SchedulerConfig
{
  TabuParams tabu;
  std::uint64_t seed = 0;
};

/// Scheduling layer bound to one domain. Precomputes S_best and C_worst.
class Scheduler
{
public:
  Scheduler(
    const ProblemDomain& domain, MotionLayer& motion,
    SchedulerConfig config = {});

  ScheduleBundle schedule(const Allocation& allocation) const;

  const Schedule& best_schedule() const { return _best.second; }
  double worst_makespan() const { return _c_worst; }
  double longest_path() const { return _longest_path; }
  double slowest_speed() const { return _slowest_speed; }

private:
  const ProblemDomain& _domain;
  MotionLayer& _motion;
  SchedulerConfig _config;
  std::pair<Stn, Schedule> _best;
  double _longest_path = 0.0;
  double _slowest_speed = 1.0;
  double _c_worst = 0.0;
};

ScheduleBundle schedule_allocation(
  const Allocation& allocation, const ProblemDomain& domain,
  MotionLayer& motion, const SchedulerConfig& config = {});

} // namespace itags

#endif // ITAGS__SCHEDULER_HPP
