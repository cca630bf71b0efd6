#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <itags/scheduler.hpp>

using namespace itags;
using namespace itags::testing;

namespace {

TaskNetwork network_of(std::vector<double> durations,
  std::vector<std::pair<std::size_t, std::size_t>> precedence = {})
{
  TaskNetwork net;
  for (double d : durations)
    net.tasks.push_back(task_at({0, 0}, {0, 0}, {1.0}, d));
  net.precedence = std::move(precedence);
  return net;
}

struct RandomOrdering
{
  TaskNetwork network;
  Allocation allocation;
  OrderingInstance inst;
  std::vector<std::vector<std::vector<double>>> travel;
};

/// Random tasks, robots and travel tables, rejection-sampled until the
/// disjunctive count lies in [lo, hi].
RandomOrdering random_ordering(std::mt19937_64& rng, std::size_t lo,
  std::size_t hi)
{
  for (;;)
  {
    RandomOrdering r;
    const std::size_t m_count = pick(rng, 2, 5);
    const std::size_t n_count = pick(rng, 1, 3);
    std::vector<double> durations;
    for (std::size_t m = 0; m < m_count; ++m)
      durations.push_back(uniform(rng, 0.5, 10.0));
    r.network = network_of(durations, random_dag(rng, m_count, 0.25));
    r.allocation = Allocation(m_count, n_count);
    for (std::size_t m = 0; m < m_count; ++m)
      for (std::size_t n = 0; n < n_count; ++n)
        r.allocation.set(m, n, pick(rng, 0, 1) == 1);
    const auto k =
      derive_disjunctive_constraints(r.allocation, r.network).size();
    if (k < lo || k > hi)
      continue;

    r.travel.assign(n_count, std::vector<std::vector<double>>(
        m_count + 1, std::vector<double>(m_count, 0.0)));
    for (auto& robot : r.travel)
      for (auto& row : robot)
        for (auto& x : row)
          x = uniform(rng, 0.0, 8.0);
    r.inst.duration = durations;
    r.inst.precedence = r.network.precedence;
    r.inst.tasks_of_robot.resize(n_count);
    for (std::size_t n = 0; n < n_count; ++n)
      r.inst.tasks_of_robot[n] = r.allocation.tasks_of(n);
    const auto travel = r.travel;
    r.inst.travel = [travel](std::size_t n, std::optional<std::size_t> p,
      std::size_t s) { return travel[n][p ? *p + 1 : 0][s]; };
    return r;
  }
}

} // namespace

TEST_CASE("best schedule examples")
{
  CHECK(build_best_schedule(network_of({4.0})).second.makespan == 4.0);
  const auto chain = build_best_schedule(network_of({3.0, 2.0}, {{0, 1}}));
  CHECK(chain.second.start == std::vector<double>{0.0, 3.0});
  CHECK(chain.second.makespan == 5.0);
  CHECK(build_best_schedule(network_of({3.0, 2.0})).second.makespan == 3.0);
}

TEST_CASE("disjunctive constraint enumeration")
{
  Allocation one(2, 1);
  one.set(0, 0);
  one.set(1, 0);
  CHECK(derive_disjunctive_constraints(one, network_of({1, 1}, {{0, 1}}))
    .empty());
  CHECK(derive_disjunctive_constraints(one, network_of({1, 1})) ==
    std::vector<DisjunctiveConstraint>{{0, 1, 0}});

  Allocation two(2, 2);
  for (std::size_t m = 0; m < 2; ++m)
    for (std::size_t n = 0; n < 2; ++n)
      two.set(m, n);
  const auto found = derive_disjunctive_constraints(two, network_of({1, 1}));
  CHECK(found.size() == 2);
  CHECK(found[0].robot != found[1].robot);
}

TEST_CASE("disjunctive constraints match brute-force enumeration")
{
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial)
  {
    const auto r = random_ordering(rng, 0, 100);
    const auto closure = precedence_closure(r.network);
    std::size_t expected = 0;
    for (std::size_t n = 0; n < r.allocation.robots(); ++n)
      for (std::size_t a = 0; a < r.allocation.tasks(); ++a)
        for (std::size_t b = a + 1; b < r.allocation.tasks(); ++b)
          if (r.allocation(a, n) && r.allocation(b, n) && !closure[a][b] &&
            !closure[b][a])
            ++expected;
    const auto found = derive_disjunctive_constraints(r.allocation, r.network);
    CHECK(found.size() == expected);
    for (const auto& d : found)
    {
      CHECK(d.task_a < d.task_b);
      CHECK(r.allocation(d.task_a, d.robot));
      CHECK(r.allocation(d.task_b, d.robot));
    }
  }
}

TEST_CASE("worst makespan examples")
{
  CHECK(worst_makespan(network_of({5.0, 3.0}), 100.0, 2.0) == 208.0);
  CHECK(worst_makespan(network_of({5.0, 3.0}), 0.0, 2.0) == 8.0);
  CHECK(worst_makespan(network_of({0.0}), 10.0, 5.0) == 4.0);
  CHECK_THROWS((void)worst_makespan(network_of({1.0}), 1.0, 0.0));
}

TEST_CASE("zero disjunctives add only approach delays")
{
  const TaskNetwork net = network_of({3.0, 2.0}, {{0, 1}});
  Allocation a(2, 2);
  a.set(0, 0);
  a.set(1, 1);
  const auto base = build_best_schedule(net);
  const auto routing = make_routing(a, net);
  const auto result = resolve_orderings_tabu(base.first, {}, routing,
      [](std::size_t robot, std::optional<std::size_t>, std::size_t) {
        return robot == 0 ? 1.5 : 0.5;
      });
  REQUIRE(result.has_value());
  CHECK(result->schedule.start == std::vector<double>{1.5, 4.5});
  CHECK(result->schedule.makespan == 6.5);
}

TEST_CASE("one disjunctive with symmetric travel matches both orderings")
{
  const TaskNetwork net = network_of({2.0, 2.0});
  Allocation a(2, 1);
  a.set(0, 0);
  a.set(1, 0);
  const auto disjunctives = derive_disjunctive_constraints(a, net);
  REQUIRE(disjunctives.size() == 1);
  const auto result = resolve_orderings_tabu(
    build_best_schedule(net).first, disjunctives, make_routing(a, net),
    [](std::size_t, std::optional<std::size_t> p, std::size_t) {
      return p ? 1.0 : 3.0;
    });
  REQUIRE(result.has_value());
  CHECK(result->schedule.makespan == doctest::Approx(8.0));
}

TEST_CASE("tabu never beats the exhaustive optimum and usually meets it")
{
  std::mt19937_64 rng(29);
  int equal = 0;
  const int trials = 100;
  for (int trial = 0; trial < trials; ++trial)
  {
    const auto r = random_ordering(rng, 1, 4);
    const auto disjunctives =
      derive_disjunctive_constraints(r.allocation, r.network);
    const auto closure = precedence_closure(r.network);
    const double optimum = exhaustive_optimum(r.inst, closure, disjunctives);
    const auto result = resolve_orderings_tabu(
      build_best_schedule(r.network).first, disjunctives,
      make_routing(r.allocation, r.network), r.inst.travel);
    REQUIRE(result.has_value());
    CHECK(result->schedule.makespan >= optimum - 1e-9);
    CHECK(satisfies(result->stn, result->schedule));
    // the returned ordering replays to the same makespan
    CHECK(ordering_makespan(r.inst, closure, disjunctives, result->ordering) ==
      doctest::Approx(result->schedule.makespan));
    if (std::abs(result->schedule.makespan - optimum) <= 1e-9)
      ++equal;
  }
  CHECK(equal * 10 >= trials * 9);
}

TEST_CASE("ordered network rejects a cyclic ordering")
{
  // robot 0 on tasks 0, 1, 2 with no precedence: 0<1, 1<2, 2<0 is a cycle
  const TaskNetwork net = network_of({1.0, 1.0, 1.0});
  Allocation a(3, 1);
  for (std::size_t m = 0; m < 3; ++m)
    a.set(m, 0);
  const auto disjunctives = derive_disjunctive_constraints(a, net);
  REQUIRE(disjunctives.size() == 3);
  Ordering cyclic(3);
  for (std::size_t i = 0; i < 3; ++i)
  {
    const auto& d = disjunctives[i];
    // pairs are (0,1), (0,2), (1,2)
    cyclic[i] = !(d.task_a == 0 && d.task_b == 2);
  }
  const auto zero = [](std::size_t, std::optional<std::size_t>, std::size_t) {
      return 0.0;
    };
  CHECK_FALSE(build_ordered_network(build_best_schedule(net).first,
    disjunctives, cyclic, make_routing(a, net), zero).has_value());
  CHECK(build_ordered_network(build_best_schedule(net).first, disjunctives,
    Ordering(3, true), make_routing(a, net), zero).has_value());
}

TEST_CASE("one robot, one task: approach over speed plus duration")
{
  TaskNetwork net;
  net.tasks = {task_at({6, 0}, {6, 0}, {1.0}, 1.0)};
  const ProblemDomain d = make_domain({robot_at({0, 0}, {1.0}, 2.0)}, net);
  MotionLayer motion(d, std::make_shared<StraightPlanner>());
  Allocation a(1, 1);
  a.set(0, 0);
  const ScheduleBundle bundle = schedule_allocation(a, d, motion);
  REQUIRE(bundle.feasible());
  CHECK(bundle.s_bar->makespan == doctest::Approx(4.0));
  CHECK(bundle.s_best.makespan == 1.0);
}

TEST_CASE("empty allocation schedules as the best case")
{
  TaskNetwork net;
  net.tasks = {task_at({6, 0}, {8, 0}, {1.0}, 1.0),
    task_at({2, 0}, {2, 5}, {1.0}, 2.0)};
  net.precedence = {{0, 1}};
  const ProblemDomain d = make_domain({robot_at({0, 0}, {1.0})}, net);
  MotionLayer motion(d, std::make_shared<StraightPlanner>());
  const ScheduleBundle bundle = schedule_allocation(Allocation(2, 1), d, motion);
  REQUIRE(bundle.feasible());
  CHECK(bundle.s_bar->makespan == bundle.s_best.makespan);
  CHECK(bundle.plans.empty());
}

TEST_CASE("one robot on two unordered tasks takes the better order")
{
  TaskNetwork net;
  net.tasks = {task_at({10, 0}, {10, 0}, {1.0}, 1.0),
    task_at({3, 0}, {3, 0}, {1.0}, 1.0)};
  const ProblemDomain d = make_domain({robot_at({0, 0}, {1.0})}, net);
  MotionLayer motion(d, std::make_shared<StraightPlanner>());
  Allocation a(2, 1);
  a.set(0, 0);
  a.set(1, 0);
  const ScheduleBundle bundle = schedule_allocation(a, d, motion);
  REQUIRE(bundle.feasible());
  // 0 -> 10 -> 3 costs 10 + 1 + 7 + 1; 0 -> 3 -> 10 costs 3 + 1 + 7 + 1
  CHECK(bundle.s_bar->makespan == doctest::Approx(std::min(19.0, 12.0)));
}

TEST_CASE("blocked approach is motion infeasible")
{
  TaskNetwork net;
  net.tasks = {task_at({10, 5}, {10, 5}, {1.0}, 1.0)};
  const ProblemDomain d = make_domain({robot_at({0, 5}, {1.0})}, net, {"t0"},
      {rectangle(4, 0, 6, 100)});
  MotionLayer motion(d, std::make_shared<StraightPlanner>());
  Allocation a(1, 1);
  a.set(0, 0);
  const ScheduleBundle bundle = schedule_allocation(a, d, motion);
  CHECK_FALSE(bundle.feasible());
  CHECK(bundle.reason == Infeasibility::MotionInfeasible);
  CHECK(std::isinf(bundle.makespan_bar()));
}

TEST_CASE("scheduling is bounded, monotone and deterministic on random domains")
{
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial)
  {
    const std::size_t m_count = pick(rng, 1, 5);
    const std::size_t n_count = pick(rng, 1, 3);
    TaskNetwork net;
    const auto spot = [&rng]() {
        const double x = uniform(rng, 0, 100);
        return Point{x, uniform(rng, 0, 100)};
      };
    for (std::size_t m = 0; m < m_count; ++m)
    {
      const Point from = spot();
      const Point to = spot();
      net.tasks.push_back(task_at(from, to, {1.0}, uniform(rng, 0.0, 20.0)));
    }
    net.precedence = random_dag(rng, m_count, 0.3);
    std::vector<Robot> robots;
    for (std::size_t n = 0; n < n_count; ++n)
    {
      const Point at = spot();
      robots.push_back(robot_at(at, {1.0}, uniform(rng, 0.5, 3.0)));
    }
    const ProblemDomain d = make_domain(robots, net);
    auto planner = std::make_shared<StraightPlanner>();
    MotionLayer motion(d, planner);
    Scheduler scheduler(d, motion);

    // every straight path fits inside the bounds, so its length is at most z
    CHECK(scheduler.longest_path() >= 100.0 * std::numbers::sqrt2);
    double slowest = robots[0].speed;
    for (const auto& r : robots)
      slowest = std::min(slowest, r.speed);
    CHECK(scheduler.slowest_speed() == slowest);

    Allocation a(m_count, n_count);
    for (std::size_t m = 0; m < m_count; ++m)
      a.set(m, pick(rng, 0, n_count - 1));
    const ScheduleBundle bundle = scheduler.schedule(a);
    REQUIRE(bundle.feasible());
    CHECK(bundle.s_best.makespan <= bundle.s_bar->makespan + 1e-9);
    CHECK(bundle.s_bar->makespan <= bundle.c_worst + 1e-9);
    CHECK_FALSE(bundle.exceeds_worst);

    // one robot doing everything gives a totally ordered schedule
    Allocation all(m_count, n_count);
    for (std::size_t m = 0; m < m_count; ++m)
      all.set(m, 0);
    const ScheduleBundle serial = scheduler.schedule(all);
    REQUIRE(serial.feasible());
    CHECK(serial.s_bar->makespan <= serial.c_worst + 1e-9);

    MotionLayer again_motion(d, std::make_shared<StraightPlanner>());
    const ScheduleBundle again = Scheduler(d, again_motion).schedule(a);
    CHECK(again.s_bar->start == bundle.s_bar->start);
    CHECK(again.s_bar->makespan == bundle.s_bar->makespan);
  }
}
