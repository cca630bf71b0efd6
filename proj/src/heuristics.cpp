#include <itags/heuristics.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace itags {

TraitMismatch trait_mismatch(
  const Allocation& allocation,
  const Matrix& robot_traits,
  const Matrix& desired_traits)
{
  const std::size_t m_count = desired_traits.rows();
  const std::size_t n_count = robot_traits.rows();
  const std::size_t u_count = desired_traits.cols();
  if (allocation.tasks() != m_count || allocation.robots() != n_count
    || robot_traits.cols() != u_count)
  {
    throw std::invalid_argument("trait_mismatch: dimension mismatch");
  }

  TraitMismatch result;
  result.matrix = desired_traits;
  for (std::size_t m = 0; m < m_count; ++m)
  {
    for (std::size_t n = 0; n < n_count; ++n)
    {
      if (!allocation(m, n))
        continue;
      for (std::size_t u = 0; u < u_count; ++u)
        result.matrix(m, u) -= robot_traits(n, u);
    }
  }

  for (std::size_t m = 0; m < m_count; ++m)
  {
    for (std::size_t u = 0; u < u_count; ++u)
    {
      result.clipped_error += std::max(result.matrix(m, u), 0.0);
      result.denominator += std::abs(desired_traits(m, u));
    }
  }
  return result;
}

double apr(
  const Allocation& allocation,
  const Matrix& robot_traits,
  const Matrix& desired_traits)
{
  const TraitMismatch e = trait_mismatch(
    allocation, robot_traits, desired_traits);
  if (!(e.denominator > 0.0))
    throw std::invalid_argument("apr: desired trait matrix is all zeros");
  if (e.clipped_error <= apr_epsilon)
    return 0.0;
  return e.clipped_error / e.denominator;
}

double nsq(double makespan_bar, double makespan_best, double makespan_worst)
{
  if (std::isinf(makespan_bar))
    return std::numeric_limits<double>::infinity();
  if (makespan_worst < makespan_best)
    throw std::invalid_argument("nsq: worst makespan below best makespan");
  // Rounding in the longest-path sums can put an identical schedule a few
  // ulps below the best one.
  const double slack = 1e-9 * std::max(1.0, std::abs(makespan_best));
  if (makespan_bar < makespan_best - slack)
    throw std::invalid_argument("nsq: schedule makespan below best makespan");

  const double range = makespan_worst - makespan_best;
  if (range <= 0.0)
    return 0.0;
  return std::max(0.0, makespan_bar - makespan_best) / range;
}

double tetaq(double apr_value, double nsq_value, double alpha)
{
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("tetaq: alpha outside [0, 1]");
  if (std::isinf(nsq_value))
    return std::numeric_limits<double>::infinity();
  if (alpha == 1.0)
    return apr_value;
  if (alpha == 0.0)
    return nsq_value;
  return alpha * apr_value + (1.0 - alpha) * nsq_value;
}

} // namespace itags
