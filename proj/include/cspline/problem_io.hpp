#pragma once

#include <string>

#include <json.hpp>

#include "cspline/localization.hpp"
#include "cspline/spline.hpp"

namespace cspline {

/// Parse failure with the JSON path of the offending field.
struct ParseError : Error {
  ParseError(const std::string& location, const std::string& what)
      : Error(location + ": " + what), location(location) {}
  std::string location;
};

struct ProblemOptions {
  double tol = kDefaultTol;
  bool tol_given = false;
  unsigned long seed = 0;
};

struct ParsedProblem {
  SplineProblem problem;
  ProblemOptions options;
};

/// Problem file schema (UTF-8 JSON):
///   { "algebra": {"blocks": [n1, ...]},
///     "module_rank": m,
///     "T": m×m array of algebra elements,
///     "Y_generators": array of module vectors (optional; empty = {0}),
///     "x": module vector,
///     "options": {"tol": ..., "seed": ...} (optional) }
/// A complex scalar is [re, im] (a bare number is accepted as re); an
/// algebra element is an array of 2-D blocks. Every invariant of the
/// constituent types is validated at load.
ParsedProblem parse_problem(const nlohmann::json& doc);
ParsedProblem parse_problem_file(const std::string& path);

nlohmann::json problem_to_json(const SplineProblem& p, unsigned long seed);
nlohmann::json module_vector_to_json(const ModuleVector& x);
nlohmann::json report_to_json(const SplineReport& r);
nlohmann::json table_to_json(const CoercivityTable& t);

}  // namespace cspline
