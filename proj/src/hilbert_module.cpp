#include "cspline/hilbert_module.hpp"

#include <Eigen/SVD>

namespace cspline {

void ModuleSpace::validate() const {
  spec.validate();
  if (rank < 1) throw ValidationError("module rank must be positive");
}

ModuleVector::ModuleVector(ModuleSpace s, std::vector<AlgebraElement> e)
    : space(std::move(s)), entries(std::move(e)) {
  if (static_cast<int>(entries.size()) != space.rank)
    throw ShapeError("module vector entry count does not match the module rank");
  for (const AlgebraElement& a : entries)
    if (!a.shape_matches(space.spec))
      throw ShapeError("module vector entry lives in the wrong algebra");
}

ModuleVector zero_vector(const ModuleSpace& space) {
  std::vector<AlgebraElement> entries(space.rank, zero_element(space.spec));
  return {space, std::move(entries)};
}

ModuleVector module_basis_vector(const ModuleSpace& space, int i) {
  if (i < 0 || i >= space.rank) throw ShapeError("module basis index out of range");
  ModuleVector x = zero_vector(space);
  x.entries[i] = identity_element(space.spec);
  return x;
}

namespace {

void require_same_space(const ModuleVector& x, const ModuleVector& y) {
  if (x.space != y.space) throw ShapeError("module vectors live in different modules");
}

}  // namespace

ModuleVector operator+(const ModuleVector& x, const ModuleVector& y) {
  require_same_space(x, y);
  ModuleVector z = x;
  for (int i = 0; i < z.space.rank; ++i) z.entries[i] = z.entries[i] + y.entries[i];
  return z;
}

ModuleVector operator-(const ModuleVector& x, const ModuleVector& y) {
  require_same_space(x, y);
  ModuleVector z = x;
  for (int i = 0; i < z.space.rank; ++i) z.entries[i] = z.entries[i] - y.entries[i];
  return z;
}

ModuleVector operator*(Complex lambda, const ModuleVector& x) {
  ModuleVector z = x;
  for (AlgebraElement& a : z.entries) a = lambda * a;
  return z;
}

ModuleVector right_action(const ModuleVector& x, const AlgebraElement& a) {
  if (!a.shape_matches(x.space.spec)) throw ShapeError("right action by a foreign element");
  ModuleVector z = x;
  for (AlgebraElement& e : z.entries) e = mul(e, a);
  return z;
}

AlgebraElement inner_product(const ModuleVector& x, const ModuleVector& y) {
  require_same_space(x, y);
  AlgebraElement s = zero_element(x.space.spec);
  for (int i = 0; i < x.space.rank; ++i)
    s = s + mul(adjoint(x.entries[i]), y.entries[i]);
  return s;
}

double module_norm(const ModuleVector& x) { return std::sqrt(norm(inner_product(x, x))); }

Vector flatten(const ModuleVector& x) {
  Vector v(x.space.flat_dim());
  const int da = x.space.spec.dim();
  for (int i = 0; i < x.space.rank; ++i)
    v.segment(i * da, da) = flatten_element(x.entries[i]);
  return v;
}

ModuleVector unflatten(const ModuleSpace& space, const Eigen::Ref<const Vector>& v) {
  if (v.size() != space.flat_dim()) throw ShapeError("flattened vector has the wrong length");
  const int da = space.spec.dim();
  std::vector<AlgebraElement> entries;
  entries.reserve(space.rank);
  for (int i = 0; i < space.rank; ++i)
    entries.push_back(unflatten_element(space.spec, v.segment(i * da, da)));
  return {space, std::move(entries)};
}

Matrix right_action_matrix(const ModuleSpace& space, const AlgebraElement& b) {
  if (!b.shape_matches(space.spec)) throw ShapeError("right action by a foreign element");
  const int d = space.flat_dim();
  Matrix r = Matrix::Zero(d, d);
  for (int i = 0; i < space.rank; ++i)
    for (int k = 0; k < space.spec.num_blocks(); ++k) {
      const int n = space.spec.block_sizes[k];
      const int off = space.flat_offset(i, k);
      const Matrix& bk = b.blocks[k];
      // vec(X b_k) = (b_kᵀ ⊗ I_n) vec(X)
      for (int q = 0; q < n; ++q)
        for (int qp = 0; qp < n; ++qp)
          for (int p = 0; p < n; ++p)
            r(off + qp * n + p, off + q * n + p) = bk(q, qp);
    }
  return r;
}

Submodule::Submodule(ModuleSpace space, Matrix projector, Matrix basis,
                     std::vector<ModuleVector> generators)
    : space_(std::move(space)),
      projector_(std::move(projector)),
      basis_(std::move(basis)),
      generators_(std::move(generators)) {
  const int d = space_.flat_dim();
  if (projector_.rows() != d || projector_.cols() != d)
    throw ShapeError("submodule projector has the wrong shape");
  if (basis_.rows() != d) throw ShapeError("submodule basis has the wrong shape");
  if ((projector_ * projector_ - projector_).norm() > 1e-9)
    throw ValidationError("submodule projector is not idempotent");
  if ((projector_ - projector_.adjoint()).norm() > 1e-9)
    throw ValidationError("submodule projector is not self-adjoint");
  if (basis_.cols() > 0 &&
      (basis_.adjoint() * basis_ - Matrix::Identity(basis_.cols(), basis_.cols())).norm() > 1e-9)
    throw ValidationError("submodule basis is not orthonormal");
  if ((basis_ * basis_.adjoint() - projector_).norm() > 1e-8)
    throw ValidationError("submodule basis does not span the projector range");
  for (const AlgebraElement& b : matrix_unit_basis(space_.spec)) {
    Matrix rb = right_action_matrix(space_, b);
    if ((projector_ * rb - rb * projector_).norm() > 1e-9)
      throw ValidationError("submodule is not invariant under the algebra action");
  }
  for (const ModuleVector& g : generators_) {
    Vector gv = flatten(g);
    if ((projector_ * gv - gv).norm() > 1e-9 * (1.0 + gv.norm()))
      throw ValidationError("submodule generator is not fixed by the projector");
  }
}

bool Submodule::contains(const ModuleVector& x, double tol) const {
  Vector v = flatten(x);
  return (projector_ * v - v).norm() <= tol * (1.0 + v.norm());
}

Submodule submodule_from_generators(const ModuleSpace& space,
                                    const std::vector<ModuleVector>& generators) {
  const int d = space.flat_dim();
  if (generators.empty()) return zero_submodule(space);
  const auto units = matrix_unit_basis(space.spec);
  Matrix span(d, static_cast<long>(generators.size()) * units.size());
  long c = 0;
  for (const ModuleVector& g : generators) {
    if (g.space != space) throw ShapeError("generator lives in a different module");
    for (const AlgebraElement& b : units) span.col(c++) = flatten(right_action(g, b));
  }
  Matrix u = range_basis(span);
  const long r = u.cols();
  Matrix projector = u * u.adjoint();
  // A canonical basis from the projector columns keeps coordinate subspaces
  // on the standard basis (so compressions of the full module stay verbatim).
  Matrix basis = r > 0 ? mgs_basis(projector, r) : Matrix(d, 0);
  return {space, std::move(projector), std::move(basis), generators};
}

Submodule zero_submodule(const ModuleSpace& space) {
  const int d = space.flat_dim();
  return {space, Matrix::Zero(d, d), Matrix(d, 0), {}};
}

Submodule full_module(const ModuleSpace& space) {
  const int d = space.flat_dim();
  std::vector<ModuleVector> gens;
  gens.reserve(space.rank);
  for (int i = 0; i < space.rank; ++i) gens.push_back(module_basis_vector(space, i));
  return {space, Matrix::Identity(d, d), Matrix::Identity(d, d), std::move(gens)};
}

Submodule submodule_from_flat_basis(const ModuleSpace& space, const Matrix& columns) {
  Matrix projector = columns * columns.adjoint();
  std::vector<ModuleVector> gens;
  gens.reserve(columns.cols());
  for (long c = 0; c < columns.cols(); ++c) gens.push_back(unflatten(space, columns.col(c)));
  return {space, std::move(projector), columns, std::move(gens)};
}

ModuleVector project(const Submodule& y, const ModuleVector& x) {
  if (x.space != y.space()) throw ShapeError("vector lives outside the submodule's module");
  return unflatten(y.space(), y.projector() * flatten(x));
}

Submodule orthogonal_complement(const Submodule& y) {
  const int d = y.space().flat_dim();
  Matrix projector = Matrix::Identity(d, d) - y.projector();
  const long r = d - y.dim();
  Matrix basis = r > 0 ? mgs_basis(projector, r) : Matrix(d, 0);
  std::vector<ModuleVector> gens;
  gens.reserve(r);
  for (long c = 0; c < r; ++c) gens.push_back(unflatten(y.space(), basis.col(c)));
  return {y.space(), std::move(projector), std::move(basis), std::move(gens)};
}

Matrix functional_of(const ModuleVector& x) {
  const ModuleSpace& space = x.space;
  const int d = space.flat_dim();
  const int da = space.spec.dim();
  Matrix tau(da, d);
  const auto units = matrix_unit_basis(space.spec);
  // column d0 of tau is flatten(<x, b_{d0}>); basis vectors b are unit
  // tuples, so <x, b> = x_i* E within the corresponding slot.
  long c = 0;
  for (int i = 0; i < space.rank; ++i)
    for (const AlgebraElement& e : units) {
      AlgebraElement val = mul(adjoint(x.entries[i]), e);
      tau.col(c++) = flatten_element(val);
    }
  return tau;
}

ModuleVector functional_representer(const ModuleSpace& space,
                                    const Eigen::Ref<const Matrix>& tau, double tol) {
  const int d = space.flat_dim();
  const int da = space.spec.dim();
  if (tau.rows() != da || tau.cols() != d)
    throw ShapeError("functional matrix has the wrong shape");
  // tr(τ(y)) = tr(<x,y>) = flatten(x).dot(flatten(y)) pins x uniquely.
  Eigen::RowVectorXcd trace_row = Eigen::RowVectorXcd::Zero(d);
  for (int k = 0; k < space.spec.num_blocks(); ++k) {
    const int n = space.spec.block_sizes[k];
    const int off = space.spec.block_offset(k);
    for (int p = 0; p < n; ++p) trace_row += tau.row(off + p * n + p);
  }
  ModuleVector x = unflatten(space, trace_row.transpose().conjugate());
  // The candidate matches τ exactly iff τ was A-linear.
  Matrix expected = functional_of(x);
  if ((expected - tau).norm() > tol * (1.0 + tau.norm()))
    throw ValidationError("functional is not A-linear: no representer exists");
  return x;
}

}  // namespace cspline
