#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <itags/io.hpp>

#include <json.hpp>

using namespace itags;
using namespace itags::testing;

namespace {

const char* minimal = R"({
  "traits": ["lift"],
  "robots": [{"type_id": "g", "speed": 1.5, "traits": [2.0],
              "initial_config": [1, 1]}],
  "tasks": [{"duration": 3.0, "requirements": [1.0],
             "initial_config": [5, 5], "terminal_config": [6, 6]}],
  "spaces": {"g": {"bounds": [0, 0, 10, 10]}}
})";

std::string without(const std::string& key)
{
  auto doc = nlohmann::json::parse(minimal);
  doc.erase(key);
  return doc.dump();
}

} // namespace

TEST_CASE("minimal document loads")
{
  const ProblemDomain d = load_problem(minimal);
  CHECK(d.robot_count() == 1);
  CHECK(d.task_count() == 1);
  CHECK(d.robots()[0].speed == 1.5);
  CHECK(d.tasks()[0].terminal_config == Point{6, 6});
  CHECK(d.network().precedence.empty());
  CHECK(d.spaces().at("g").obstacles.empty());
}

TEST_CASE("missing required field names the field")
{
  try
  {
    (void)parse_problem(without("tasks"));
    FAIL("expected a parse error");
  }
  catch (const ParseError& e)
  {
    CHECK(e.where() == "tasks");
  }
}

TEST_CASE("wrong type names the nested path")
{
  auto doc = nlohmann::json::parse(minimal);
  doc["robots"][0]["speed"] = "fast";
  try
  {
    (void)parse_problem(doc.dump());
    FAIL("expected a parse error");
  }
  catch (const ParseError& e)
  {
    CHECK(e.where() == "robots[0].speed");
  }
}

TEST_CASE("syntax errors report a line")
{
  try
  {
    (void)parse_problem("{\n\"traits\": [\n,]}");
    FAIL("expected a parse error");
  }
  catch (const ParseError& e)
  {
    CHECK(e.where().rfind("line ", 0) == 0);
  }
}

TEST_CASE("unknown robot type fails validation, not parsing")
{
  auto doc = nlohmann::json::parse(minimal);
  doc["robots"][0]["type_id"] = "boat";
  CHECK_NOTHROW((void)parse_problem(doc.dump()));
  try
  {
    (void)load_problem(doc.dump());
    FAIL("expected a validation error");
  }
  catch (const ValidationError& e)
  {
    REQUIRE(e.violations().size() == 1);
    CHECK(e.violations()[0].kind == Violation::Kind::UnknownSpace);
  }
}

TEST_CASE("problem round-trip is the identity")
{
  TaskNetwork net;
  net.tasks = {task_at({10.25, 10}, {10, 10}, {1.0, 0.5}, 2.0),
    task_at({20, 20}, {30.125, 30}, {2.0, 0.0}, 3.5)};
  net.precedence = {{0, 1}};
  const ProblemDomain d = make_domain(
    {robot_at({1, 1}, {1.0, 0.1}), robot_at({2, 2}, {2.0, 0.0}, 2.0, "air")},
    net, {"a", "b"}, {rectangle(40, 40, 50, 60)});
  const std::string text = save_problem(d);
  const ProblemDomain back = load_problem(text);
  CHECK(back == d);
  CHECK(save_problem(back) == text);
}

TEST_CASE("solution serialization")
{
  Solution s;
  s.allocation = Allocation(2, 1);
  s.allocation.set(0, 0);
  s.allocation.set(1, 0);
  s.schedule.start = {0.0, 1.0};
  s.schedule.end = {1.0, 4.0};
  s.schedule.makespan = 4.0;
  RunMetrics metrics{0.5, 3, 7, 4.0, true};

  SUBCASE("makespan field and empty plan set")
  {
    const auto doc = nlohmann::json::parse(save_solution(s, metrics));
    CHECK(doc["makespan"] == 4.0);
    CHECK(doc["plans"].is_array());
    CHECK(doc["plans"].empty());
    CHECK(doc["metrics"]["nodes_visited"] == 7);
  }

  SUBCASE("round trip")
  {
    auto plan = std::make_shared<MotionPlan>(
      MotionPlan{{{0, 0}, {3, 4}}, 5.0});
    s.plans.push_back({{0}, PlanKind::Approach, 1, plan});
    s.plans.push_back({{0}, PlanKind::Execution, 1, plan});
    const auto [back, m] = parse_solution(save_solution(s, metrics));
    CHECK(back.allocation == s.allocation);
    CHECK(back.schedule.start == s.schedule.start);
    CHECK(back.schedule.end == s.schedule.end);
    CHECK(back.schedule.makespan == 4.0);
    CHECK(back.plans == s.plans);
    CHECK(m.nodes_expanded == 3);
    CHECK(m.compute_seconds == 0.5);
  }

  SUBCASE("without timing the document is independent of wall time")
  {
    RunMetrics other = metrics;
    other.compute_seconds = 9.0;
    CHECK(save_solution(s, metrics, false) == save_solution(s, other, false));
    const auto doc = nlohmann::json::parse(save_solution(s, metrics, false));
    CHECK(doc["metrics"]["compute_seconds"].is_null());
    CHECK_NOTHROW((void)parse_solution(save_solution(s, metrics, false)));
  }
}
