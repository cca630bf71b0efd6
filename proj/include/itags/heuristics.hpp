#ifndef ITAGS__HEURISTICS_HPP
#define ITAGS__HEURISTICS_HPP

#include <itags/allocation.hpp>
#include <itags/matrix.hpp>

namespace itags {

/// Numerator tolerance for treating the allocation error as zero.
inline constexpr double apr_epsilon = 1e-9;

/// Y - A*Q together with its clipped element-wise sum and ||Y||_{1,1}.
struct TraitMismatch
{
  Matrix matrix;
  double clipped_error = 0.0;
  double denominator = 0.0;
};

TraitMismatch trait_mismatch(
  const Allocation& allocation,
  const Matrix& robot_traits,
  const Matrix& desired_traits);

/// Allocation percentage remaining: the fraction of the required traits the
/// allocation leaves unmet, over-satisfaction ignored. In [0, 1].
///
/// Throws std::invalid_argument on mismatched dimensions or an all-zero
/// requirement matrix.
double apr(
  const Allocation& allocation,
  const Matrix& robot_traits,
  const Matrix& desired_traits);

/// Normalized schedule quality. Returns +inf for an infeasible schedule
/// (makespan_bar = +inf) and 0 when best and worst coincide. Values above 1
/// are possible when the worst-case estimate is exceeded.
double nsq(double makespan_bar, double makespan_best, double makespan_worst);

/// alpha * apr + (1 - alpha) * nsq; alpha weights APR.
double tetaq(double apr_value, double nsq_value, double alpha);

struct HeuristicValues
{
  double apr = 1.0;
  double nsq = 0.0;
  double tetaq = 0.0;
  double alpha = 0.5;
};

} // namespace itags

#endif // ITAGS__HEURISTICS_HPP
