#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cspline/localization.hpp"

namespace cspline {

struct VerdictLine {
  std::string check;
  std::string expected;
  std::string measured;
  bool passed = false;
};

/// Outcome of a built-in example: the instance (when it is desk-sized), its
/// report, an optional coercivity table, and expected-vs-measured checks.
struct ExampleRun {
  std::string name;
  std::optional<SplineProblem> problem;
  std::optional<SplineReport> report;
  std::optional<CoercivityTable> table;
  std::vector<VerdictLine> verdict;

  [[nodiscard]] bool all_passed() const;
};

/// Form B(x,y) = <P x, y> for a projection P, constraint ran(P) ⊕ Z with
/// Z inside ker(P). The solution is (1−P)x up to Z; extra_dim > 0 makes Z
/// nontrivial and the solution non-unique.
ExampleRun run_projection_example(int extra_dim = 1, double tol = kDefaultTol);

/// Two nested projections P < Q with T = Q and constraint ran(P): solvable
/// with a unique solution even though T(X) is strictly larger than T(Y) —
/// the scalar-case range criterion fails in the module setting.
ExampleRun run_remark_example(double tol = kDefaultTol);

/// Abelian two-block algebra, constraint B ⊕ 0 and form (u,v) ↦ (u₁*v₁, 0):
/// every pure state is multiplicative, the coercivity ratio is exactly 1.
ExampleRun run_abelian_example(double tol = kDefaultTol, unsigned long seed = 0);

/// Truncated sequence-space family: ratios at the designated pairs decay
/// like (1/2j)², ruling out a uniform coercivity constant, while the radical
/// stays trivial.
ExampleRun run_l2_truncation(int n_block, int order, double tol = kDefaultTol,
                             unsigned long seed = 0);

}  // namespace cspline
