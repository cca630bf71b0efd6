#ifndef ITAGS__SOLUTION_HPP
#define ITAGS__SOLUTION_HPP

#include <itags/allocation.hpp>
#include <itags/motion_plan.hpp>
#include <itags/schedule.hpp>

#include <cstddef>
#include <memory>
#include <vector>

namespace itags {

enum class PlanKind
{
  /// A single robot travelling to a task's initial configuration.
  Approach,
  /// A task's coalition moving from its initial to its terminal configuration.
  Execution,
};

const char* to_string(PlanKind kind);

struct PlanRecord
{
  std::vector<std::size_t> robot_ids;
  PlanKind kind = PlanKind::Approach;
  std::size_t task = 0;
  std::shared_ptr<const MotionPlan> plan;

  friend bool operator==(const PlanRecord& a, const PlanRecord& b)
  {
    if (a.robot_ids != b.robot_ids || a.kind != b.kind || a.task != b.task)
      return false;
    if (!a.plan || !b.plan)
      return a.plan == b.plan;
    return *a.plan == *b.plan;
  }
};

struct Solution
{
  Allocation allocation;
  std::vector<PlanRecord> plans;
  Schedule schedule;

  friend bool operator==(const Solution&, const Solution&) = default;
};

struct RunMetrics
{
  double compute_seconds = 0.0;
  std::size_t nodes_expanded = 0;
  std::size_t nodes_visited = 0;
  /// Zero when unsolved.
  double makespan = 0.0;
  bool solved = false;

  friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

} // namespace itags

#endif // ITAGS__SOLUTION_HPP
