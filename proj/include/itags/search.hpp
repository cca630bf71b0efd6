#ifndef ITAGS__SEARCH_HPP
#define ITAGS__SEARCH_HPP

#include <itags/allocation.hpp>
#include <itags/domain.hpp>
#include <itags/motion.hpp>
#include <itags/scheduler.hpp>
#include <itags/solution.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <unordered_set>
#include <vector>

namespace itags {

enum class PlannerKind
{
  Grid,
  LazyPrm,
};

struct SearchConfig
{
  /// Weight on APR; 1 - alpha weights NSQ.
  double alpha = 0.5;
  /// Cap on nodes visited (evaluated and pushed).
  std::size_t node_limit = 100000;
  double time_limit_seconds = 300.0;

  PlannerKind planner = PlannerKind::Grid;
  /// Grid spacing as a fraction of the space diagonal.
  double grid_resolution = 0.01;
  std::size_t prm_samples = 500;
  /// Roadmap connection radius as a fraction of the space diagonal.
  double prm_radius = 0.2;
  double planner_timeout_seconds = 1.0;

  TabuParams tabu;
  std::uint64_t seed = 0;
};

std::shared_ptr<const MotionPlanner> make_planner(const SearchConfig& config);

struct SearchNode
{
  Allocation allocation;
  double apr = 1.0;
  double nsq = 0.0;
  double tetaq = 0.0;
  std::shared_ptr<const ScheduleBundle> bundle;
  std::size_t depth = 0;
  /// Index of the parent in the search's node arena.
  std::optional<std::size_t> parent;
};

/// Min-priority queue on tetaq; ties go to the deeper node, then to the
/// earlier insertion.
class OpenList
{
public:
  struct Entry
  {
    double tetaq;
    std::size_t depth;
    std::uint64_t sequence;
    std::size_t node;
  };

  void push(double tetaq, std::size_t depth, std::size_t node);
  Entry pop();
  const Entry& top() const { return _queue.top(); }
  bool empty() const { return _queue.empty(); }
  std::size_t size() const { return _queue.size(); }

private:
  struct Later
  {
    bool operator()(const Entry& a, const Entry& b) const;
  };

  std::priority_queue<Entry, std::vector<Entry>, Later> _queue;
  std::uint64_t _next_sequence = 0;
};

/// Allocations already generated.
class ClosedSet
{
public:
  /// False when already present.
  bool insert(const Allocation& allocation);
  bool contains(const Allocation& allocation) const;
  std::size_t size() const { return _seen.size(); }

private:
  std::unordered_set<Allocation> _seen;
};

/// Children differing by one extra assignment, in ascending (task, robot)
/// order, skipping those already in `closed`.
std::vector<Allocation> generate_successors(
  const Allocation& allocation, const ClosedSet& closed);

enum class Unsolved
{
  Exhausted,
  NodeLimit,
  TimeLimit,
};

const char* to_string(Unsolved reason);

/// Hooks for instrumentation; all optional.
struct SearchObserver
{
  std::function<void(const SearchNode&)> on_push;
  std::function<void(const SearchNode&)> on_pop;
  std::function<void(const SearchNode&)> on_prune;
  std::function<void(const Allocation&)> on_evaluate;
};

struct SearchResult
{
  std::optional<Solution> solution;
  /// Set when there is no solution.
  std::optional<Unsolved> reason;
  RunMetrics metrics;
  std::size_t nodes_pruned = 0;
  std::size_t evaluations = 0;
  std::size_t closed_size = 0;
  /// Satisficing allocations that failed to schedule (sequential search).
  std::size_t failed_goals = 0;
  std::size_t planner_invocations = 0;

  bool solved() const { return solution.has_value(); }
};

/// Greedy best-first search over the incremental allocation graph guided by
/// tetaq. Children that cannot be scheduled are pruned.
SearchResult itags(
  const ProblemDomain& domain, const SearchConfig& config,
  const SearchObserver& observer = {});

SearchResult itags(
  const ProblemDomain& domain, double alpha, SearchConfig config,
  const SearchObserver& observer = {});

/// Sequential baseline: allocation search on APR alone, scheduling and
/// motion planning only once an allocation meets every requirement; failed
/// allocations are dropped and the search continues.
SearchResult itags_sequential(
  const ProblemDomain& domain, const SearchConfig& config,
  const SearchObserver& observer = {});

/// Checks a solution by direct substitution against the domain: APR zero,
/// precedence, per-robot travel and sequencing, coalition execution times,
/// and collision-free plans. Returns human-readable violations.
std::vector<std::string> verify_solution(
  const ProblemDomain& domain, const Solution& solution, double tol = 1e-6);

} // namespace itags

#endif // ITAGS__SEARCH_HPP
