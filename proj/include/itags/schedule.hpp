#ifndef ITAGS__SCHEDULE_HPP
#define ITAGS__SCHEDULE_HPP

#include <vector>

namespace itags {

/// Start and end time of every task, in seconds from the origin.
struct Schedule
{
  std::vector<double> start;
  std::vector<double> end;
  double makespan = 0.0;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

} // namespace itags

#endif // ITAGS__SCHEDULE_HPP
