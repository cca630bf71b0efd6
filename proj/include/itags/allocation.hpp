#ifndef ITAGS__ALLOCATION_HPP
#define ITAGS__ALLOCATION_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace itags {

/// Binary task-by-robot assignment matrix. Entry (m, n) is set when robot n
/// is assigned to task m.
class Allocation
{
public:
  Allocation() = default;
  Allocation(std::size_t tasks, std::size_t robots);

  std::size_t tasks() const { return _tasks; }
  std::size_t robots() const { return _robots; }

  bool operator()(std::size_t task, std::size_t robot) const
  {
    return _entries[task * _robots + robot] != 0;
  }

  void set(std::size_t task, std::size_t robot, bool assigned = true);

  /// Number of set entries.
  std::size_t count() const;

  /// Robots assigned to a task, ascending.
  std::vector<std::size_t> coalition(std::size_t task) const;

  /// Tasks a robot is assigned to, ascending.
  std::vector<std::size_t> tasks_of(std::size_t robot) const;

  /// Stable 64-bit hash of the dimensions and entries.
  std::uint64_t fingerprint() const;

  friend bool operator==(const Allocation&, const Allocation&) = default;

private:
  std::size_t _tasks = 0;
  std::size_t _robots = 0;
  std::vector<std::uint8_t> _entries;
};

} // namespace itags

template<>
struct std::hash<itags::Allocation>
{
  std::size_t operator()(const itags::Allocation& a) const noexcept
  {
    return static_cast<std::size_t>(a.fingerprint());
  }
};

#endif // ITAGS__ALLOCATION_HPP
