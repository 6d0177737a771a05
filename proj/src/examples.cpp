#include "cspline/examples.hpp"

#include <cmath>
#include <sstream>

namespace cspline {

bool ExampleRun::all_passed() const {
  for (const VerdictLine& line : verdict)
    if (!line.passed) return false;
  return true;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string fmt(bool v) { return v ? "true" : "false"; }

void check_bool(ExampleRun& run, const std::string& name, bool expected, bool measured) {
  run.verdict.push_back({name, fmt(expected), fmt(measured), expected == measured});
}

void check_le(ExampleRun& run, const std::string& name, double measured, double bound) {
  run.verdict.push_back({name, "<= " + fmt(bound), fmt(measured), measured <= bound});
}

AlgebraElement scalar_element(const AlgebraSpec& spec, std::vector<Complex> diag) {
  AlgebraElement a = zero_element(spec);
  for (int k = 0; k < spec.num_blocks(); ++k)
    a.blocks[k] = diag[k] * Matrix::Identity(spec.block_sizes[k], spec.block_sizes[k]);
  return a;
}

}  // namespace

ExampleRun run_projection_example(int extra_dim, double tol) {
  if (extra_dim < 0 || extra_dim > 2) throw ValidationError("projection example: z must be 0, 1 or 2");
  ExampleRun run;
  run.name = "projection";

  const int m = 2 + extra_dim;
  ModuleSpace space{AlgebraSpec{{1}}, m};
  // P projects onto the first coordinate; Z spans the trailing extra slots.
  std::vector<std::vector<AlgebraElement>> entries(
      m, std::vector<AlgebraElement>(m, zero_element(space.spec)));
  entries[0][0] = identity_element(space.spec);
  SesquilinearForm b = form_from_operator(space, std::move(entries));

  std::vector<ModuleVector> gens;
  gens.push_back(module_basis_vector(space, 0));
  for (int z = 0; z < extra_dim; ++z) gens.push_back(module_basis_vector(space, 2 + z));
  Submodule y = submodule_from_generators(space, gens);

  ModuleVector x = zero_vector(space);
  for (int i = 0; i < m; ++i) x.entries[i] = identity_element(space.spec);

  SplineProblem p{space, y, b, x, tol};
  SplineReport report = analyze(p);

  check_bool(run, "solvable", true, report.solvable);
  check_le(run, "residual", report.residual, tol);
  check_bool(run, "unique", extra_dim == 0, report.unique);
  if (report.solution) {
    // s must equal (1-P)x up to an element of Z
    ModuleVector reference = x;
    reference.entries[0] = zero_element(space.spec);
    ModuleVector diff = *report.solution - reference;
    double off_z = 0.0;
    for (int i = 0; i < 2; ++i) off_z = std::max(off_z, norm(diff.entries[i]));
    check_le(run, "distance of s from (1-P)x modulo Z", off_z, 1e-9);
    if (extra_dim > 0) {
      Submodule rad = right_radical(b, y);
      ModuleVector second = *report.solution + unflatten(space, Vector(rad.basis().col(0)));
      double worst = 0.0;
      for (const ModuleVector& g : y.generators())
        worst = std::max(worst, norm(apply_form(b, second, g)));
      check_le(run, "second solution residual", worst, tol);
    }
  } else {
    run.verdict.push_back({"solution present", "true", "false", false});
  }
  run.problem = std::move(p);
  run.report = std::move(report);
  return run;
}

ExampleRun run_remark_example(double tol) {
  ExampleRun run;
  run.name = "remark";

  ModuleSpace space{AlgebraSpec{{1}}, 3};
  // T = Q = diag(1,1,0); Y = ran(diag(1,0,0)); QP = PQ = P.
  std::vector<std::vector<AlgebraElement>> entries(
      3, std::vector<AlgebraElement>(3, zero_element(space.spec)));
  entries[0][0] = identity_element(space.spec);
  entries[1][1] = identity_element(space.spec);
  SesquilinearForm b = form_from_operator(space, std::move(entries));
  Submodule y = submodule_from_generators(space, {module_basis_vector(space, 0)});
  ModuleVector x = zero_vector(space);
  for (int i = 0; i < 3; ++i) x.entries[i] = identity_element(space.spec);

  SplineProblem p{space, y, b, x, tol};
  SplineReport report = analyze(p);

  check_bool(run, "solvable", true, report.solvable);
  check_bool(run, "unique", true, report.unique);
  check_bool(run, "necessary condition", true, report.necessary_condition);
  check_bool(run, "solvable for every target", true, report.all_targets_solvable);
  check_bool(run, "range containment T(X) in T(Y)", false, report.operator_range_containment);
  if (report.solution) {
    ModuleVector expected = zero_vector(space);
    expected.entries[1] = identity_element(space.spec);
    expected.entries[2] = identity_element(space.spec);
    check_le(run, "distance of s from x - P(x)", module_norm(*report.solution - expected), 1e-9);
  } else {
    run.verdict.push_back({"solution present", "true", "false", false});
  }
  run.problem = std::move(p);
  run.report = std::move(report);
  return run;
}

ExampleRun run_abelian_example(double tol, unsigned long seed) {
  ExampleRun run;
  run.name = "abelian";

  ModuleSpace space{AlgebraSpec{{1, 1}}, 1};
  SesquilinearForm b = form_from_operator(
      space, {{scalar_element(space.spec, {Complex(1, 0), Complex(0, 0)})}});
  ModuleVector gen = zero_vector(space);
  gen.entries[0] = scalar_element(space.spec, {Complex(1, 0), Complex(0, 0)});
  Submodule y = submodule_from_generators(space, {gen});
  ModuleVector x = zero_vector(space);
  x.entries[0] = identity_element(space.spec);

  SplineProblem p{space, y, b, x, tol};
  SplineReport report = analyze(p);

  check_bool(run, "right radical trivial", true, report.radical_dims.first == 0);
  check_bool(run, "solvable", true, report.solvable);
  check_le(run, "residual", report.residual, tol);
  check_bool(run, "positive on constraint", true, report.positive_on_constraint);

  auto states = pure_state_grid(space.spec, 1, seed);
  CoercivityTable table = coercivity_estimate(b, y, {1.0}, states, 64, seed);
  double c_hat = table.rows.at(0).c_hat;
  run.verdict.push_back({"c_hat(1.0)", "1 within 1e-6", fmt(c_hat), std::abs(c_hat - 1.0) <= 1e-6});

  run.problem = std::move(p);
  run.report = std::move(report);
  run.table = std::move(table);
  return run;
}

ExampleRun run_l2_truncation(int n_block, int order, double tol, unsigned long seed) {
  ExampleRun run;
  run.name = "l2-truncation";
  TruncatedFamily family = truncated_counterexample(n_block, order);

  long rad = family.right_radical_dim();
  check_bool(run, "right radical trivial", true, rad == 0);

  double previous = std::numeric_limits<double>::infinity();
  bool decreasing = true;
  for (int j = 1; j <= order; ++j) {
    double bound = family.pairs()[j - 1].ratio_bound;
    double ratio = family.designated_ratio(j, 1.0, 32, seed);
    check_le(run, "ratio at designated pair j=" + std::to_string(j), ratio, bound + 1e-9);
    decreasing = decreasing && ratio < previous;
    previous = ratio;
  }
  check_bool(run, "ratios strictly decreasing in j", true, decreasing);
  (void)tol;
  return run;
}

}  // namespace cspline
