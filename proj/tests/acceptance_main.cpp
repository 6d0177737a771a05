// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <Eigen/QR>
#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "support.hpp"
#include "cspline/examples.hpp"
#include "cspline/localization.hpp"

using namespace cspline;
using namespace testsupport;

namespace {

struct Criterion {
  const char* name;
  std::function<bool(std::string&)> run;
};

// random module space with flat dimension at most 64, at most two blocks of
// sizes (<=3, <=2), rank <= 4
ModuleSpace random_space(std::mt19937_64& rng, int min_rank = 1, int max_rank = 4) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> n1(1, 3);
  std::uniform_int_distribution<int> n2(1, 2);
  AlgebraSpec spec;
  spec.block_sizes.push_back(n1(rng));
  if (coin(rng)) spec.block_sizes.push_back(n2(rng));
  std::uniform_int_distribution<int> rank(min_rank, max_rank);
  ModuleSpace space{spec, rank(rng)};
  while (space.flat_dim() > 64 && space.rank > min_rank) space.rank -= 1;
  return space;
}

Submodule random_submodule(const ModuleSpace& space, std::mt19937_64& rng) {
  return submodule_from_generators(space, random_generators(space, 1, rng));
}

double solve_scale(const SplineProblem& p) {
  return 1.0 + p.form.flat.norm() * module_norm(p.target);
}

bool criterion_projection(std::string& detail) {
  std::mt19937_64 rng(101);
  double worst_residual = 0.0;
  int nonunique_seen = 0;
  for (int trial = 0; trial < 50; ++trial) {
    ModuleSpace space = random_space(rng);
    Submodule w = submodule_from_generators(space, {random_vector(space, rng)});
    ModuleVector zgen = project(orthogonal_complement(w), thin_vector(space, rng));
    bool has_z = module_norm(zgen) > 1e-3;
    Submodule z = has_z ? submodule_from_generators(space, {zgen}) : zero_submodule(space);
    std::vector<ModuleVector> ygens = w.generators();
    if (has_z) ygens.push_back(zgen);
    Submodule y = submodule_from_generators(space, ygens);
    SesquilinearForm b = form_from_flat(space, w.projector());
    ModuleVector x = random_vector(space, rng);
    SplineProblem p{space, y, b, x, 1e-9};
    SplineReport report = solve(p);
    if (!report.solvable || !report.solution) return false;
    if (report.residual > 1e-9) return false;
    worst_residual = std::max(worst_residual, report.residual);

    // s matches (1-P)x up to an element of Z
    ModuleVector formula = x - project(w, x);
    ModuleVector diff = *report.solution - formula;
    ModuleVector off = diff - project(z, diff);
    if (module_norm(off) > 1e-9 * solve_scale(p)) return false;

    if (z.dim() > 0) {
      ++nonunique_seen;
      if (report.unique) return false;
      ModuleVector second = *report.solution + unflatten(space, Vector(z.basis().col(0)));
      for (const ModuleVector& g : y.generators())
        if (norm(apply_form(b, second, g)) > 1e-9 * solve_scale(p)) return false;
    } else if (!report.unique) {
      return false;
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "50 instances, %d with nontrivial Z, max residual %.2e",
                nonunique_seen, worst_residual);
  detail = buf;
  return nonunique_seen > 0;
}

bool criterion_remark(std::string& detail) {
  ExampleRun run = run_remark_example(1e-9);
  detail = "solvable/unique/necessary true, containment false";
  return run.all_passed();
}

bool criterion_abelian(std::string& detail) {
  std::mt19937_64 rng(103);
  ExampleRun run = run_abelian_example(1e-9, 0);
  if (!run.all_passed() || !run.problem) return false;
  SplineProblem p = *run.problem;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    p.target = random_vector(p.space, rng);
    SplineReport rep = solve(p);
    if (!rep.solvable || rep.residual > 1e-9) return false;
    worst = std::max(worst, rep.residual);
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "c_hat(1)=1 within 1e-6, 100 targets, max residual %.2e",
                worst);
  detail = buf;
  return true;
}

bool criterion_l2_truncation(std::string& detail) {
  TruncatedFamily fam = truncated_counterexample(18, 8);
  if (fam.right_radical_dim() != 0) return false;
  double previous = std::numeric_limits<double>::infinity();
  double worst_gap = std::numeric_limits<double>::infinity();
  for (int j = 1; j <= 8; ++j) {
    double ratio = fam.designated_ratio(j, 1.0, 32, 0);
    double bound = 1.0 / (4.0 * j * j);
    if (ratio > bound + 1e-9) return false;
    if (ratio >= previous) return false;
    worst_gap = std::min(worst_gap, bound + 1e-9 - ratio);
    previous = ratio;
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "8 designated pairs within (1/2j)^2 + 1e-9, radical trivial");
  detail = buf;
  return true;
}

bool criterion_radical_lemma(std::string& detail) {
  std::mt19937_64 rng(105);
  int probes = 0;
  int nontrivial = 0;
  for (int trial = 0; trial < 200; ++trial) {
    ModuleSpace space = random_space(rng, 3);
    SesquilinearForm b = inner_product_form(space);
    Submodule y = zero_submodule(space);
    if (trial % 2 == 0) {
      b = random_positive_form(space, rng);
      y = random_submodule(space, rng);
    } else {
      PositiveInstance inst = make_positive_instance(space, rng, /*with_junk=*/trial % 4 == 1);
      b = std::move(inst.form);
      y = std::move(inst.y);
    }
    if (!is_positive_on(b, y)) return false;
    RadicalReport rep = radical_report(b, y);
    if (rep.dims.first != rep.dims.second) return false;
    if (rep.dims.first > 0) {
      ++nontrivial;
      if (projector_distance(rep.right.projector(), rep.left.projector()) > 1e-8) return false;
    }
    // probes: radical members and generic members of Y
    for (int probe = 0; probe < 2; ++probe) {
      ModuleVector v = probe == 0 && rep.dims.first > 0
                           ? unflatten(space, Vector(rep.right.projector() *
                                                     flatten(random_vector(space, rng))))
                           : project(y, random_vector(space, rng));
      if (module_norm(v) < 1e-6) continue;
      bool is_null = null_membership(b, v, 1e-7 * (1 + spectral_norm(b.flat)));
      bool in_radical = rep.right.contains(v, 1e-7);
      if (is_null != in_radical) return false;
      ++probes;
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "200 positive forms (%d nontrivial radicals), %d probes",
                nontrivial, probes);
  detail = buf;
  return probes >= 200 && nontrivial > 0;
}

bool criterion_adjoint_swap(std::string& detail) {
  std::mt19937_64 rng(106);
  int nontrivial = 0;
  for (int trial = 0; trial < 200; ++trial) {
    ModuleSpace space = random_space(rng);
    SesquilinearForm b = random_form(space, rng);
    if (trial % 2 == 0) {
      // rank-deficient operators so the radicals are visible
      Submodule w = random_submodule(space, rng);
      b = form_from_flat(space, Matrix(b.flat * w.projector()));
    }
    SesquilinearForm b2 = adjoint_form(b);
    Submodule full = full_module(space);
    Submodule lt = left_radical(b, full);
    Submodule rt = right_radical(b2, full);
    if (lt.dim() != rt.dim()) return false;
    if (lt.dim() > 0) {
      ++nontrivial;
      if (projector_distance(lt.projector(), rt.projector()) > 1e-8) return false;
    }
    Submodule lt2 = left_radical(b2, full);
    Submodule rt2 = right_radical(b, full);
    if (lt2.dim() != rt2.dim()) return false;
    if (lt2.dim() > 0 && projector_distance(lt2.projector(), rt2.projector()) > 1e-8)
      return false;
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "200 forms, %d with nontrivial radicals", nontrivial);
  detail = buf;
  return nontrivial > 0;
}

bool criterion_solvability_iff(std::string& detail) {
  std::mt19937_64 rng(107);
  int done = 0;
  while (done < 500) {
    ModuleSpace space = random_space(rng);
    SesquilinearForm b = random_form(space, rng);
    Submodule y = random_submodule(space, rng);
    if (right_radical(b, y).dim() != 0) continue;  // criterion assumes a trivial radical
    ModuleVector x = random_vector(space, rng);
    SplineProblem p{space, y, b, x, 1e-9};
    bool mine = check_existence(p);

    Matrix pi = p.constraint.projector();
    Matrix sys = pi * p.form.flat * pi;
    Vector rhs = -(pi * (p.form.flat * flatten(p.target)));
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(sys);
    Vector v = cod.solve(rhs);
    bool brute = (sys * v - rhs).norm() <= p.tol * solve_scale(p);
    if (mine != brute) return false;
    ++done;
  }
  detail = "500 instances, zero disagreements with the least-squares classifier";
  return true;
}

bool criterion_necessity_sufficiency(std::string& detail) {
  std::mt19937_64 rng(108);
  int broken = 0;
  for (int trial = 0; trial < 100; ++trial) {
    ModuleSpace space = random_space(rng, 3);
    PositiveInstance inst = make_positive_instance(space, rng, /*with_junk=*/trial % 2 == 1);
    if (!is_positive_on(inst.form, inst.y)) return false;
    SplineProblem probe{space, inst.y, inst.form, zero_vector(space), 1e-9};
    bool necessary = check_necessary_condition(probe);
    bool all_solvable = true;
    for (int t = 0; t < 20 && all_solvable; ++t) {
      probe.target = random_vector(space, rng);
      all_solvable = check_existence(probe);
    }
    if (necessary != all_solvable) return false;
    broken += necessary ? 0 : 1;
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "100 positive instances, %d with a failing condition", broken);
  detail = buf;
  return broken > 0;
}

bool criterion_localization_identities(std::string& detail) {
  std::mt19937_64 rng(109);
  int triples = 0;
  while (triples < 200) {
    ModuleSpace space = random_space(rng, 1, 3);
    auto states = pure_state_grid(space.spec, 2, triples);
    for (const PureState& f : states) {
      LocalizedSpace loc = localize(f, space);
      ModuleVector x = random_vector(space, rng);
      ModuleVector y = random_vector(space, rng);
      double scale = 1 + module_norm(x) * module_norm(y);
      if (std::abs(loc.pairing(x, y) - evaluate(f, inner_product(y, x))) > 1e-10 * scale)
        return false;
      if (localized_functional_identity(loc, x, y) > 1e-10 * scale) return false;
      ++triples;
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%d triples, deviations within 1e-10", triples);
  detail = buf;
  return true;
}

bool criterion_riesz_roundtrip(std::string& detail) {
  std::mt19937_64 rng(110);
  for (int trial = 0; trial < 100; ++trial) {
    ModuleSpace space = random_space(rng);
    SesquilinearForm b = random_form(space, rng);
    SesquilinearForm rebuilt = riesz_from_values(space, form_values(b));
    if ((rebuilt.flat - b.flat).norm() > 1e-10 * (1 + b.flat.norm())) return false;
  }
  detail = "100 forms, reconstruction within 1e-10";
  return true;
}

}  // namespace

int main() {
  setvbuf(stdout, nullptr, _IOLBF, 0);
  std::vector<Criterion> criteria = {
      {"projection example", criterion_projection},
      {"remark reproduction", criterion_remark},
      {"abelian example", criterion_abelian},
      {"truncated l2 counterexample", criterion_l2_truncation},
      {"radical lemma suite", criterion_radical_lemma},
      {"adjoint swap suite", criterion_adjoint_swap},
      {"solvability iff criterion", criterion_solvability_iff},
      {"necessity and sufficiency", criterion_necessity_sufficiency},
      {"localization identities", criterion_localization_identities},
      {"riesz roundtrip", criterion_riesz_roundtrip},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", c.name, secs,
                detail.empty() ? "" : " — ", detail.c_str());
    failures += ok ? 0 : 1;
  }
  std::printf("ACCEPTANCE: %zu/%zu criteria passed\n", criteria.size() - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
