#ifndef ITAGS__IO_HPP
#define ITAGS__IO_HPP

#include <itags/domain.hpp>
#include <itags/solution.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace itags {

/// Malformed document. `where()` is either "line N" for syntax errors or a
/// field path such as "robots[2].speed" for schema errors.
class ParseError : public std::runtime_error
{
public:
  ParseError(std::string where, const std::string& what)
  : std::runtime_error(where + ": " + what), _where(std::move(where))
  {
  }

  const std::string& where() const { return _where; }

private:
  std::string _where;
};

/// Well-formed document describing an inadmissible domain.
class ValidationError : public std::runtime_error
{
public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const { return _violations; }

private:
  std::vector<Violation> _violations;
};

/// Parses and validates a problem document.
ProblemDomain load_problem(std::string_view text);

/// Parses a problem document without validating it.
ProblemDomain parse_problem(std::string_view text);

std::string save_problem(const ProblemDomain& domain);

/// Deterministic key order; identical inputs give identical bytes.
/// Without timing, "compute_seconds" is written as null so that repeated
/// runs produce identical documents.
std::string save_solution(
  const Solution& solution, const RunMetrics& metrics,
  bool include_timing = true);

std::pair<Solution, RunMetrics> parse_solution(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

} // namespace itags

#endif // ITAGS__IO_HPP
