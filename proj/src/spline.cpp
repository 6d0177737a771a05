#include "cspline/spline.hpp"

namespace cspline {

void SplineProblem::validate() const {
  space.validate();
  if (constraint.space() != space) throw ShapeError("constraint submodule lives elsewhere");
  if (form.space != space) throw ShapeError("form lives elsewhere");
  if (target.space != space) throw ShapeError("target lives elsewhere");
  if (!(tol > 0)) throw ValidationError("tolerance must be positive");
}

namespace {

struct LeastSquares {
  Vector w;          // minimum-norm solution in the constraint basis
  double residual;   // ||S w − rhs||
  double threshold;  // acceptance threshold
};

LeastSquares constraint_solve(const SplineProblem& p) {
  const Matrix& u = p.constraint.basis();
  Vector tx = p.form.flat * flatten(p.target);
  Vector rhs = -(u.adjoint() * tx);
  Matrix s = compress(p.form, p.constraint);
  Vector w = pseudo_solve(s, rhs);
  double residual = u.cols() == 0 ? 0.0 : (s * w - rhs).norm();
  // Frobenius bound on ||T||: cheap and ample for the 1e-9 vs O(1) gap the
  // classifier has to resolve.
  double threshold = p.tol * (1.0 + p.form.flat.norm() * module_norm(p.target));
  return {std::move(w), residual, threshold};
}

}  // namespace

bool check_existence(const SplineProblem& p) {
  p.validate();
  LeastSquares ls = constraint_solve(p);
  return ls.residual <= ls.threshold;
}

bool check_uniqueness(const SplineProblem& p) {
  p.validate();
  return right_radical(p.form, p.constraint).dim() == 0;
}

bool check_necessary_condition(const SplineProblem& p) {
  p.validate();
  Submodule rad = right_radical(p.form, p.constraint);
  for (long c = 0; c < rad.basis().cols(); ++c)
    if ((p.form.flat.adjoint() * rad.basis().col(c)).norm() > p.tol) return false;
  return true;
}

bool all_targets_solvable(const SesquilinearForm& b, const Submodule& y, double tol) {
  Matrix pt = y.projector() * b.flat;
  Matrix ptp = pt * y.basis();
  return range_contained(pt, ptp, tol);
}

bool operator_range_containment(const SesquilinearForm& b, const Submodule& y, double tol) {
  Matrix ty = b.flat * y.basis();
  return range_contained(b.flat, ty, tol);
}

SplineReport solve(const SplineProblem& p) {
  p.validate();
  SplineReport report;
  LeastSquares ls = constraint_solve(p);
  report.solvable = ls.residual <= ls.threshold;

  RadicalReport rad = radical_report(p.form, p.constraint);
  report.radical_dims = rad.dims;
  report.unique = rad.dims.first == 0;
  report.positive_on_constraint = is_positive_on(p.form, p.constraint, p.tol);
  report.necessary_condition = check_necessary_condition(p);

  if (report.solvable) {
    ModuleVector s = p.target + unflatten(p.space, p.constraint.basis() * ls.w);
    double worst = 0.0;
    for (const ModuleVector& g : p.constraint.generators())
      worst = std::max(worst, norm(apply_form(p.form, s, g)));
    report.residual = worst;
    report.solution = std::move(s);
    if (rad.dims.first > 0)
      report.diagnostics.push_back("solution set: s + right radical (dimension " +
                                   std::to_string(rad.dims.first) + ")");
  } else {
    report.residual = ls.residual;
    report.diagnostics.push_back("no solution: best least-squares residual " +
                                 std::to_string(ls.residual) + " exceeds threshold " +
                                 std::to_string(ls.threshold));
  }
  return report;
}

SplineReport analyze(const SplineProblem& p) {
  SplineReport report = solve(p);
  report.all_targets_solvable = all_targets_solvable(p.form, p.constraint);
  report.operator_range_containment = operator_range_containment(p.form, p.constraint);
  report.diagnostics.push_back(
      "P T Y is closed automatically (finite-dimensional module), so the "
      "necessary condition is also sufficient here");
  return report;
}

std::pair<Submodule, Submodule> decompose(const ModuleSpace& space, const SesquilinearForm& b,
                                          const Submodule& y, double tol) {
  if (b.space != space || y.space() != space)
    throw ShapeError("decompose arguments live in different modules");
  Submodule full = full_module(space);
  if (!is_positive_on(b, full, tol))
    throw DomainError("decompose requires a positive form on the whole module");
  const int d = space.flat_dim();
  if (rank_of(b.flat) < d)
    throw DomainError("decompose requires a non-degenerate form (trivial kernel)");
  Matrix k = kernel_basis(y.projector() * b.flat);
  Submodule spline_space =
      k.cols() > 0 ? submodule_from_flat_basis(space, k) : zero_submodule(space);
  // directness certificate: dimensions add up and the pieces meet trivially
  if (spline_space.dim() + y.dim() != d)
    throw DomainError("decompose: dimensions do not sum to the module dimension");
  Matrix joint(d, spline_space.dim() + y.dim());
  joint << spline_space.basis(), y.basis();
  if (rank_of(joint) != joint.cols())
    throw DomainError("decompose: spline space and submodule intersect nontrivially");
  return {std::move(spline_space), y};
}

}  // namespace cspline
