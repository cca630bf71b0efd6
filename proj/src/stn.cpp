#include <itags/stn.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace itags {

Stn::Stn(std::size_t task_count)
: _task_count(task_count), _durations(task_count, 0.0)
{
}

void Stn::add_upper_bound(std::size_t u, std::size_t v, double weight)
{
  if (u >= time_point_count() || v >= time_point_count())
    throw std::out_of_range("Stn: time point out of range");
  _edges.push_back({u, v, weight});
}

void Stn::add_lower_bound(std::size_t u, std::size_t v, double bound)
{
  add_upper_bound(v, u, -bound);
}

void Stn::set_duration(std::size_t task, double duration)
{
  _durations.at(task) = duration;
}

void Stn::add_precedence(std::size_t before, std::size_t after, double gap)
{
  add_lower_bound(end_of(before), start_of(after), gap);
}

void Stn::add_release(std::size_t task, double delay)
{
  add_lower_bound(origin, start_of(task), delay);
}

std::vector<Stn::Edge> Stn::edges() const
{
  std::vector<Edge> all;
  all.reserve(_edges.size() + 3 * _task_count);
  for (std::size_t m = 0; m < _task_count; ++m)
  {
    all.push_back({start_of(m), end_of(m), _durations[m]});
    all.push_back({end_of(m), start_of(m), -_durations[m]});
    all.push_back({start_of(m), origin, 0.0});
  }
  all.insert(all.end(), _edges.begin(), _edges.end());
  return all;
}

std::optional<std::vector<double>> earliest_times(const Stn& stn)
{
  // dist[x] is the shortest distance from x to the origin; the earliest time
  // of x is -dist[x]. Every time point reaches the origin through its start.
  const std::size_t n = stn.time_point_count();
  const std::vector<Stn::Edge> edges = stn.edges();
  constexpr double inf = std::numeric_limits<double>::infinity();
  // Round-off along a path can undercut the true distance by a few ulps.
  const auto below = [](double candidate, double current)
    { return candidate < current - 1e-9 * std::max(1.0, std::abs(current)); };
  std::vector<double> dist(n, inf);
  dist[Stn::origin] = 0.0;

  for (std::size_t round = 0; round + 1 < n; ++round)
  {
    bool changed = false;
    for (const auto& e : edges)
    {
      if (dist[e.to] == inf)
        continue;
      const double candidate = dist[e.to] + e.weight;
      if (dist[e.from] == inf || below(candidate, dist[e.from]))
      {
        dist[e.from] = candidate;
        changed = true;
      }
    }
    if (!changed)
      break;
  }

  for (const auto& e : edges)
  {
    if (dist[e.to] != inf && below(dist[e.to] + e.weight, dist[e.from]))
      return std::nullopt;
  }

  std::vector<double> times(n);
  for (std::size_t x = 0; x < n; ++x)
    times[x] = dist[x] == inf ? 0.0 : -dist[x];
  times[Stn::origin] = 0.0;
  return times;
}

bool check_consistency(const Stn& stn)
{
  return earliest_times(stn).has_value();
}

std::optional<Schedule> try_earliest_schedule(const Stn& stn)
{
  const auto times = earliest_times(stn);
  if (!times)
    return std::nullopt;

  Schedule schedule;
  const std::size_t m_count = stn.task_count();
  schedule.start.resize(m_count);
  schedule.end.resize(m_count);
  for (std::size_t m = 0; m < m_count; ++m)
  {
    schedule.start[m] = (*times)[Stn::start_of(m)];
    schedule.end[m] = (*times)[Stn::end_of(m)];
    schedule.makespan = std::max(schedule.makespan, schedule.end[m]);
  }
  return schedule;
}

Schedule earliest_schedule(const Stn& stn)
{
  auto schedule = try_earliest_schedule(stn);
  if (!schedule)
    throw std::logic_error("earliest_schedule: inconsistent network");
  return std::move(*schedule);
}

bool satisfies(const Stn& stn, const Schedule& schedule, double tol)
{
  const auto time_of = [&](std::size_t x)
    {
      if (x == Stn::origin)
        return 0.0;
      const std::size_t m = (x - 1) / 2;
      return (x - 1) % 2 == 0 ? schedule.start.at(m) : schedule.end.at(m);
    };
  for (const auto& e : stn.edges())
  {
    if (time_of(e.to) - time_of(e.from) > e.weight + tol)
      return false;
  }
  return true;
}

} // namespace itags
