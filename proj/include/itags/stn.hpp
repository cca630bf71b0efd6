#ifndef ITAGS__STN_HPP
#define ITAGS__STN_HPP

#include <itags/schedule.hpp>

#include <cstddef>
#include <optional>
#include <vector>

namespace itags {

/// Simple temporal network over an origin plus a start and an end time point
/// per task, stored as a distance graph: an edge (u, v, w) encodes v - u <= w.
class Stn
{
public:
  struct Edge
  {
    std::size_t from;
    std::size_t to;
    double weight;

    friend bool operator==(const Edge&, const Edge&) = default;
  };

  static constexpr std::size_t origin = 0;

  Stn() = default;
  explicit Stn(std::size_t task_count);

  std::size_t task_count() const { return _task_count; }
  std::size_t time_point_count() const { return 2 * _task_count + 1; }

  static std::size_t start_of(std::size_t task) { return 1 + 2 * task; }
  static std::size_t end_of(std::size_t task) { return 2 + 2 * task; }

  /// v - u <= weight
  void add_upper_bound(std::size_t u, std::size_t v, double weight);

  /// v - u >= bound
  void add_lower_bound(std::size_t u, std::size_t v, double bound);

  /// end - start == duration, as two opposing edges. Replaces any earlier
  /// duration for the task; every task starts with duration 0.
  void set_duration(std::size_t task, double duration);

  /// end(before) + gap <= start(after)
  void add_precedence(std::size_t before, std::size_t after, double gap = 0.0);

  /// start(task) >= delay
  void add_release(std::size_t task, double delay);

  double duration(std::size_t task) const { return _durations.at(task); }

  /// Constraints added through the add_* calls.
  const std::vector<Edge>& constraints() const { return _edges; }

  /// Full distance graph: the constraints, both duration edges of every task
  /// and start(m) >= 0 for every task.
  std::vector<Edge> edges() const;

private:
  std::size_t _task_count = 0;
  std::vector<double> _durations;
  std::vector<Edge> _edges;
};

/// False iff the distance graph has a negative cycle (Bellman-Ford with
/// |V| - 1 relaxation rounds and a final violation scan).
bool check_consistency(const Stn& stn);

/// Earliest feasible time of every time point, or nullopt when inconsistent.
std::optional<std::vector<double>> earliest_times(const Stn& stn);

/// Earliest-start schedule; minimal makespan for networks whose only
/// non-duration constraints are lower bounds. Throws std::logic_error when
/// the network is inconsistent.
Schedule earliest_schedule(const Stn& stn);

/// nullopt when inconsistent.
std::optional<Schedule> try_earliest_schedule(const Stn& stn);

/// True when the assignment satisfies every edge of the network within tol.
bool satisfies(const Stn& stn, const Schedule& schedule, double tol = 1e-9);

} // namespace itags

#endif // ITAGS__STN_HPP
