#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cspline/forms.hpp"

namespace cspline {

/// One interpolation instance: find s in the coset x + Y with B(s, y) = 0
/// for every y in Y.
struct SplineProblem {
  ModuleSpace space;
  Submodule constraint;   // Y
  SesquilinearForm form;  // B
  ModuleVector target;    // x
  double tol = kDefaultTol;

  void validate() const;
};

struct SplineReport {
  bool solvable = false;
  std::optional<ModuleVector> solution;
  /// When solvable: max over Y-generators g of ||B(s, g)||. Otherwise the
  /// best least-squares residual of the constraint system.
  double residual = 0.0;
  bool unique = false;
  std::pair<long, long> radical_dims{0, 0};  // (right, left)
  bool necessary_condition = false;
  bool positive_on_constraint = false;
  /// Solvability for every target: ran(Π T) ⊆ ran(Π T Π).
  bool all_targets_solvable = false;
  /// The stricter containment T(X) ⊆ T(Y), which is *not* equivalent to
  /// solvability in the module setting (only in the scalar one).
  bool operator_range_containment = false;
  std::vector<std::string> diagnostics;
};

/// Per-target solvability: the constraint system S w = −U* T x̂ admits a
/// least-squares residual <= tol·(1 + ||T||·||x||).
bool check_existence(const SplineProblem& p);

/// Solves the instance. On success returns s = x + y₀ with y₀ the
/// minimum-norm solution of the constraint system; the full solution set is
/// s + right radical. Unsolvable instances are reported, not thrown.
SplineReport solve(const SplineProblem& p);

/// Uniqueness of solutions: the right radical of Y vanishes.
bool check_uniqueness(const SplineProblem& p);

/// B(x, y̌) = 0 for all x and all y̌ in the right radical; equivalently the
/// radical lies in ker T*.
bool check_necessary_condition(const SplineProblem& p);

/// Runs positivity, radicals, existence, uniqueness, the necessary
/// condition, and both range-containment tests. The closedness hypothesis on
/// P T Y holds automatically in finite dimensions and is reported as such.
SplineReport analyze(const SplineProblem& p);

/// Solvability for every target x: ran(Π T) ⊆ ran(Π T Π).
bool all_targets_solvable(const SesquilinearForm& b, const Submodule& y, double tol = 1e-8);

/// T(X) ⊆ T(Y) on the flattened space.
bool operator_range_containment(const SesquilinearForm& b, const Submodule& y,
                                double tol = 1e-8);

/// For B an A-valued inner product on X (positive with trivial kernel):
/// splits X = S_B ⊕ Y with the spline space S_B = {s : B(s,y) = 0 on Y}
/// = ker(Π T). Certifies directness; degenerate forms raise DomainError.
std::pair<Submodule, Submodule> decompose(const ModuleSpace& space, const SesquilinearForm& b,
                                          const Submodule& y, double tol = kDefaultTol);

}  // namespace cspline
