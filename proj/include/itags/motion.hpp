#ifndef ITAGS__MOTION_HPP
#define ITAGS__MOTION_HPP

#include <itags/domain.hpp>
#include <itags/motion_plan.hpp>

#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace itags {

enum class PlanStatus
{
  Found,
  Infeasible,
  Timeout,
};

const char* to_string(PlanStatus status);

struct PlanOutcome
{
  PlanStatus status = PlanStatus::Infeasible;
  /// Set only when status is Found.
  std::shared_ptr<const MotionPlan> plan;

  bool found() const { return status == PlanStatus::Found; }

  static PlanOutcome infeasible() { return {PlanStatus::Infeasible, nullptr}; }
  static PlanOutcome timeout() { return {PlanStatus::Timeout, nullptr}; }
  static PlanOutcome with(MotionPlan plan);
};

/// Canonical name of a free space: the sorted, de-duplicated robot types
/// whose obstacles it avoids.
struct SpaceSignature
{
  std::vector<std::string> type_ids;

  /// Type ids joined by '+'.
  std::string key() const;

  friend bool operator==(const SpaceSignature&, const SpaceSignature&) =
  default;
};

SpaceSignature coalition_signature(std::span<const Robot> members);

/// Signature for a subset of the domain's robots, given by index.
SpaceSignature coalition_signature(
  const ProblemDomain& domain, std::span<const std::size_t> members);

/// Intersection of the member types' free spaces: bounds are intersected and
/// obstacle sets united. Throws std::invalid_argument for an unknown type or
/// an empty signature.
ConfigurationSpace coalition_space(
  const ProblemDomain& domain, const SpaceSignature& signature);

struct MotionQuery
{
  Point start;
  Point goal;
  SpaceSignature signature;
};

/// 8-connected lattice search. The lattice is anchored at the query start
/// with the given spacing; lattice points inside an obstacle are blocked and
/// an edge is usable only if its segment is collision-free. The goal joins
/// the lattice through the corners of the cell that contains it. Returns the
/// minimum-cost route.
PlanOutcome plan_grid(
  const MotionQuery& query, const ConfigurationSpace& space,
  double resolution);

struct LazyPrmParams
{
  std::size_t samples = 500;
  double radius = 20.0;
  std::uint64_t seed = 0;
  std::chrono::nanoseconds timeout = std::chrono::seconds(1);
};

/// Lazy probabilistic roadmap: samples the bounds, connects neighbours
/// within the radius without checking them, and validates vertices and edges
/// only along candidate shortest paths.
PlanOutcome plan_lazy_prm(
  const MotionQuery& query, const ConfigurationSpace& space,
  const LazyPrmParams& params);

class MotionPlanner
{
public:
  virtual ~MotionPlanner() = default;

  virtual PlanOutcome plan(
    const MotionQuery& query, const ConfigurationSpace& space) const = 0;
};

class GridPlanner : public MotionPlanner
{
public:
  /// Lattice spacing as a fraction of the space's bounding-box diagonal.
  explicit GridPlanner(double resolution_fraction = 0.01);

  PlanOutcome plan(
    const MotionQuery& query, const ConfigurationSpace& space) const override;

private:
  double _resolution_fraction;
};

class LazyPrmPlanner : public MotionPlanner
{
public:
  /// `radius_fraction` scales the bounding-box diagonal. The roadmap seed is
  /// derived from `seed` and the query, so outcomes do not depend on query
  /// order.
  LazyPrmPlanner(
    std::size_t samples, double radius_fraction, std::uint64_t seed,
    std::chrono::nanoseconds timeout);

  PlanOutcome plan(
    const MotionQuery& query, const ConfigurationSpace& space) const override;

private:
  std::size_t _samples;
  double _radius_fraction;
  std::uint64_t _seed;
  std::chrono::nanoseconds _timeout;
};

/// Endpoints quantized to 1e-6 workspace units plus the space signature.
struct PlanKey
{
  std::int64_t start_x = 0;
  std::int64_t start_y = 0;
  std::int64_t goal_x = 0;
  std::int64_t goal_y = 0;
  std::string signature;

  friend bool operator==(const PlanKey&, const PlanKey&) = default;
};

PlanKey make_plan_key(const MotionQuery& query);

struct PlanKeyHash
{
  std::size_t operator()(const PlanKey& key) const noexcept;
};

/// Thread-safe memo of planner outcomes. Timeouts are never stored.
class PlanCache
{
public:
  std::shared_ptr<const PlanOutcome> find(const PlanKey& key) const;
  void insert(const PlanKey& key, const PlanOutcome& outcome);
  std::size_t size() const;

private:
  mutable std::mutex _mutex;
  std::unordered_map<PlanKey, std::shared_ptr<const PlanOutcome>, PlanKeyHash>
  _entries;
};

PlanOutcome memoized_plan(
  const MotionQuery& query, PlanCache& cache, const MotionPlanner& planner,
  const ConfigurationSpace& space);

/// Planning front-end used by the scheduler: resolves signatures to spaces
/// and memoizes planner calls.
class MotionLayer
{
public:
  MotionLayer(
    const ProblemDomain& domain,
    std::shared_ptr<const MotionPlanner> planner,
    bool caching = true);

  const ProblemDomain& domain() const { return _domain; }

  SpaceSignature robot_signature(std::size_t robot) const;
  SpaceSignature coalition_signature(std::span<const std::size_t> robots)
  const;

  /// Cached coalition space; references stay valid for the layer's life.
  const ConfigurationSpace& space(const SpaceSignature& signature);

  PlanOutcome plan(
    const Point& start, const Point& goal, const SpaceSignature& signature);

  std::size_t planner_invocations() const { return _invocations.load(); }
  std::size_t cached_entries() const { return _cache.size(); }

private:
  const ProblemDomain& _domain;
  std::shared_ptr<const MotionPlanner> _planner;
  bool _caching;
  PlanCache _cache;
  std::atomic<std::size_t> _invocations{0};

  std::mutex _space_mutex;
  std::map<std::string, std::unique_ptr<ConfigurationSpace>> _spaces;
};

} // namespace itags

#endif // ITAGS__MOTION_HPP
