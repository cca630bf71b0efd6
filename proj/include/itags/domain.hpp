#ifndef ITAGS__DOMAIN_HPP
#define ITAGS__DOMAIN_HPP

#include <itags/geometry.hpp>
#include <itags/matrix.hpp>

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace itags {

struct Robot
{
  std::vector<double> traits;
  /// Distance units per second.
  double speed = 1.0;
  std::string type_id;
  Point initial_config;

  friend bool operator==(const Robot&, const Robot&) = default;
};

struct Task
{
  std::vector<double> requirements;
  /// Seconds spent at the task on top of any execution motion.
  double static_duration = 0.0;
  Point initial_config;
  Point terminal_config;

  friend bool operator==(const Task&, const Task&) = default;
};

/// Tasks plus precedence edges (i, j) meaning task i must finish before task
/// j starts. Task identity is the array position.
struct TaskNetwork
{
  std::vector<Task> tasks;
  std::vector<std::pair<std::size_t, std::size_t>> precedence;

  friend bool operator==(const TaskNetwork&, const TaskNetwork&) = default;
};

/// Transitive closure of the precedence relation. closure[i][j] is true when
/// task i must finish before task j starts. Requires an acyclic network with
/// valid indices.
std::vector<std::vector<bool>> precedence_closure(const TaskNetwork& network);

/// Free space for one robot type: everything inside bounds and outside the
/// obstacles.
struct ConfigurationSpace
{
  std::string type_id;
  Bounds bounds;
  std::vector<Polygon> obstacles;

  bool is_free(const Point& p) const;
  bool is_segment_free(const Point& a, const Point& b) const;

  friend bool operator==(
    const ConfigurationSpace&, const ConfigurationSpace&) = default;
};

/// The full problem: task network, robot team and per-type free spaces. The
/// trait matrices are derived from the robots and tasks at construction.
class ProblemDomain
{
public:
  ProblemDomain() = default;

  ProblemDomain(
    std::vector<std::string> trait_names,
    TaskNetwork network,
    std::vector<Robot> robots,
    std::map<std::string, ConfigurationSpace> spaces);

  const std::vector<std::string>& trait_names() const { return _trait_names; }
  const TaskNetwork& network() const { return _network; }
  const std::vector<Task>& tasks() const { return _network.tasks; }
  const std::vector<Robot>& robots() const { return _robots; }
  const std::map<std::string, ConfigurationSpace>& spaces() const
  {
    return _spaces;
  }

  /// Q, robots by traits.
  const Matrix& robot_traits() const { return _robot_traits; }
  /// Y, tasks by traits.
  const Matrix& desired_traits() const { return _desired_traits; }

  std::size_t task_count() const { return _network.tasks.size(); }
  std::size_t robot_count() const { return _robots.size(); }
  std::size_t trait_count() const { return _trait_names.size(); }

  /// nullptr when the type is unknown.
  const ConfigurationSpace* space_for(const std::string& type_id) const;

  /// Bounding box of every configuration space.
  Bounds workspace_bounds() const;

  friend bool operator==(const ProblemDomain&, const ProblemDomain&) = default;

private:
  std::vector<std::string> _trait_names;
  TaskNetwork _network;
  std::vector<Robot> _robots;
  std::map<std::string, ConfigurationSpace> _spaces;
  Matrix _robot_traits;
  Matrix _desired_traits;
};

struct Violation
{
  enum class Kind
  {
    DimensionMismatch,
    NegativeValue,
    NonPositiveSpeed,
    ZeroRequirements,
    InvalidPrecedence,
    PrecedenceCycle,
    UnknownSpace,
    DegenerateBounds,
    InvalidObstacle,
    ConfigOutsideFreeSpace,
  };

  Kind kind;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

const char* to_string(Violation::Kind kind);

/// Every admissibility problem found in the domain. Empty when the domain
/// can be solved against.
std::vector<Violation> validate_domain(const ProblemDomain& domain);

} // namespace itags

#endif // ITAGS__DOMAIN_HPP
