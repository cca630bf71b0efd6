#ifndef ITAGS__MOTION_PLAN_HPP
#define ITAGS__MOTION_PLAN_HPP

#include <itags/geometry.hpp>

#include <vector>

namespace itags {

/// Piecewise-linear path. The first waypoint is the start and the last one
/// is the goal.
struct MotionPlan
{
  std::vector<Point> waypoints;
  double length = 0.0;

  friend bool operator==(const MotionPlan&, const MotionPlan&) = default;
};

/// Sum of the Euclidean segment lengths.
double path_length(const std::vector<Point>& waypoints);

} // namespace itags

#endif // ITAGS__MOTION_PLAN_HPP
