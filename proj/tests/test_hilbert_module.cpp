#include <doctest.h>

#include "support.hpp"

using namespace cspline;
using namespace testsupport;

namespace {
const ModuleSpace kSpace{AlgebraSpec{{2, 1}}, 3};
}

TEST_CASE("inner_product: fixed values and the embedding oracle") {
  ModuleSpace c2{AlgebraSpec{{1}}, 2};
  ModuleVector e0 = module_basis_vector(c2, 0);
  ModuleVector e1 = module_basis_vector(c2, 1);
  CHECK(norm(inner_product(e0, e1)) == doctest::Approx(0));

  ModuleSpace m2{AlgebraSpec{{2}}, 1};
  ModuleVector id = module_basis_vector(m2, 0);
  CHECK((inner_product(id, id).blocks[0] - Matrix::Identity(2, 2)).norm() == doctest::Approx(0));

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    ModuleVector x = random_vector(kSpace, rng);
    ModuleVector y = random_vector(kSpace, rng);
    Matrix expected = Matrix::Zero(3, 3);
    for (int i = 0; i < kSpace.rank; ++i)
      expected += embed_dense(x.entries[i]).adjoint() * embed_dense(y.entries[i]);
    CHECK((embed_dense(inner_product(x, y)) - expected).norm() < 1e-12 * (1 + expected.norm()));

    // A-sesquilinearity and symmetry
    AlgebraElement a = random_element(kSpace.spec, rng);
    AlgebraElement lhs = inner_product(x, right_action(y, a));
    AlgebraElement rhs = mul(inner_product(x, y), a);
    CHECK(norm(lhs - rhs) < 1e-10 * (1 + norm(rhs)));
    CHECK(norm(adjoint(inner_product(x, y)) - inner_product(y, x)) < 1e-12);
    CHECK(is_positive(inner_product(x, x), 1e-9));
  }

  ModuleVector foreign = zero_vector(ModuleSpace{AlgebraSpec{{2, 1}}, 2});
  CHECK_THROWS_AS(inner_product(zero_vector(kSpace), foreign), ShapeError);
}

TEST_CASE("flatten: bijection transporting the trace pairing") {
  std::mt19937_64 rng(4);
  CHECK(flatten(zero_vector(kSpace)).norm() == doctest::Approx(0));
  for (int trial = 0; trial < 100; ++trial) {
    ModuleVector x = random_vector(kSpace, rng);
    ModuleVector back = unflatten(kSpace, flatten(x));
    double diff = 0;
    for (int i = 0; i < kSpace.rank; ++i)
      diff += (embed_dense(back.entries[i]) - embed_dense(x.entries[i])).norm();
    CHECK(diff == doctest::Approx(0));

    ModuleVector y = random_vector(kSpace, rng);
    Complex via_trace = trace(inner_product(x, y));
    Complex via_flat = flatten(x).dot(flatten(y));
    CHECK(std::abs(via_trace - via_flat) < 1e-12 * (1 + std::abs(via_trace)));
  }
}

TEST_CASE("submodule_from_generators: span, invariance, fixed instances") {
  CHECK(zero_submodule(kSpace).dim() == 0);
  CHECK(submodule_from_generators(kSpace, {}).dim() == 0);

  // a single unit generator of A^1 spans everything
  ModuleSpace a1{AlgebraSpec{{2, 1}}, 1};
  Submodule full = submodule_from_generators(a1, {module_basis_vector(a1, 0)});
  CHECK(full.dim() == a1.flat_dim());
  CHECK((full.projector() - Matrix::Identity(a1.flat_dim(), a1.flat_dim())).norm() < 1e-12);
  CHECK((full.basis() - Matrix::Identity(a1.flat_dim(), a1.flat_dim())).norm() < 1e-12);

  // B ⊕ 0 inside C ⊕ C
  ModuleSpace ab{AlgebraSpec{{1, 1}}, 1};
  ModuleVector gen = zero_vector(ab);
  gen.entries[0].blocks[0](0, 0) = 1.0;
  Submodule first = submodule_from_generators(ab, {gen});
  CHECK(first.dim() == 1);
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  CHECK((first.projector() - expected).norm() < 1e-12);

  // random generators produce validated A-invariant submodules
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    Submodule y = submodule_from_generators(kSpace, random_generators(kSpace, 1 + trial % 2, rng));
    CHECK(y.dim() >= 0);
    for (const ModuleVector& g : y.generators()) CHECK(y.contains(g, 1e-9));
    // membership is closed under the module action
    ModuleVector moved = right_action(y.generators()[0], random_element(kSpace.spec, rng));
    CHECK(y.contains(moved, 1e-8));
  }
}

TEST_CASE("project: idempotent, coordinate case, A-orthogonal residual") {
  ModuleSpace ab{AlgebraSpec{{1, 1}}, 1};
  ModuleVector gen = zero_vector(ab);
  gen.entries[0].blocks[0](0, 0) = 1.0;
  Submodule first = submodule_from_generators(ab, {gen});
  ModuleVector x = zero_vector(ab);
  x.entries[0].blocks[0](0, 0) = 3.0;
  x.entries[0].blocks[1](0, 0) = 5.0;
  ModuleVector px = project(first, x);
  CHECK(std::abs(px.entries[0].blocks[0](0, 0) - Complex(3, 0)) < 1e-14);
  CHECK(std::abs(px.entries[0].blocks[1](0, 0)) < 1e-14);

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 25; ++trial) {
    Submodule y = submodule_from_generators(kSpace, random_generators(kSpace, 1, rng));
    ModuleVector v = random_vector(kSpace, rng);
    ModuleVector inside = project(y, v);
    CHECK(module_norm(project(y, inside) - inside) < 1e-10 * (1 + module_norm(inside)));
    ModuleVector residual = v - inside;
    for (const ModuleVector& g : y.generators())
      CHECK(norm(inner_product(residual, g)) < 1e-10 * (1 + module_norm(v)));
  }
}

TEST_CASE("orthogonal_complement: decomposition of the module") {
  Submodule zero = zero_submodule(kSpace);
  Submodule full = orthogonal_complement(zero);
  CHECK(full.dim() == kSpace.flat_dim());

  ModuleSpace ab{AlgebraSpec{{1, 1}}, 1};
  ModuleVector gen = zero_vector(ab);
  gen.entries[0].blocks[0](0, 0) = 1.0;
  Submodule first = submodule_from_generators(ab, {gen});
  Submodule second = orthogonal_complement(first);
  CHECK(second.dim() == 1);
  CHECK(std::abs(second.projector()(1, 1) - Complex(1, 0)) < 1e-12);

  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 15; ++trial) {
    Submodule y = submodule_from_generators(kSpace, random_generators(kSpace, 1, rng));
    Submodule yp = orthogonal_complement(y);
    CHECK(y.dim() + yp.dim() == kSpace.flat_dim());
    CHECK((y.projector() + yp.projector() - Matrix::Identity(kSpace.flat_dim(), kSpace.flat_dim()))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("functional_representer: self-duality roundtrip") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    ModuleVector x = random_vector(kSpace, rng);
    ModuleVector back = functional_representer(kSpace, functional_of(x), 1e-9);
    CHECK(module_norm(back - x) < 1e-10 * (1 + module_norm(x)));
  }

  Matrix zero_tau = Matrix::Zero(kSpace.spec.dim(), kSpace.flat_dim());
  CHECK(module_norm(functional_representer(kSpace, zero_tau)) == doctest::Approx(0));

  // a generic matrix is not A-linear
  Matrix bad = random_matrix(kSpace.spec.dim(), kSpace.flat_dim(), rng);
  CHECK_THROWS_AS(functional_representer(kSpace, bad), ValidationError);
}
