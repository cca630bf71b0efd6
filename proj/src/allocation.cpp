#include <itags/allocation.hpp>

#include <algorithm>

namespace itags {

Allocation::Allocation(std::size_t tasks, std::size_t robots)
: _tasks(tasks), _robots(robots), _entries(tasks * robots, 0)
{
}

void Allocation::set(std::size_t task, std::size_t robot, bool assigned)
{
  _entries[task * _robots + robot] = assigned ? 1 : 0;
}

std::size_t Allocation::count() const
{
  return static_cast<std::size_t>(
    std::count(_entries.begin(), _entries.end(), std::uint8_t{1}));
}

std::vector<std::size_t> Allocation::coalition(std::size_t task) const
{
  std::vector<std::size_t> members;
  for (std::size_t n = 0; n < _robots; ++n)
  {
    if ((*this)(task, n))
      members.push_back(n);
  }
  return members;
}

std::vector<std::size_t> Allocation::tasks_of(std::size_t robot) const
{
  std::vector<std::size_t> assigned;
  for (std::size_t m = 0; m < _tasks; ++m)
  {
    if ((*this)(m, robot))
      assigned.push_back(m);
  }
  return assigned;
}

std::uint64_t Allocation::fingerprint() const
{
  // FNV-1a
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto mix = [&h](std::uint64_t byte)
    {
      h ^= byte;
      h *= 0x100000001b3ULL;
    };
  for (int shift = 0; shift < 64; shift += 8)
    mix((static_cast<std::uint64_t>(_tasks) >> shift) & 0xff);
  for (int shift = 0; shift < 64; shift += 8)
    mix((static_cast<std::uint64_t>(_robots) >> shift) & 0xff);
  for (const auto e : _entries)
    mix(e);
  return h;
}

} // namespace itags
