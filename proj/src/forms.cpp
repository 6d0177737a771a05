#include "cspline/forms.hpp"

#include <Eigen/Eigenvalues>
#include <limits>

namespace cspline {

namespace {

Matrix flat_of_operator(const ModuleSpace& space,
                        const std::vector<std::vector<AlgebraElement>>& entries) {
  const int d = space.flat_dim();
  Matrix f = Matrix::Zero(d, d);
  for (int i = 0; i < space.rank; ++i)
    for (int j = 0; j < space.rank; ++j)
      for (int k = 0; k < space.spec.num_blocks(); ++k) {
        const int n = space.spec.block_sizes[k];
        const Matrix& m = entries[i][j].blocks[k];
        const int ro = space.flat_offset(i, k);
        const int co = space.flat_offset(j, k);
        // vec(m X) = (I_n ⊗ m) vec(X)
        for (int q = 0; q < n; ++q) f.block(ro + q * n, co + q * n, n, n) = m;
      }
  return f;
}

void require_entries_shape(const ModuleSpace& space,
                           const std::vector<std::vector<AlgebraElement>>& entries) {
  if (static_cast<int>(entries.size()) != space.rank)
    throw ShapeError("operator matrix has the wrong number of rows");
  for (int i = 0; i < space.rank; ++i) {
    if (static_cast<int>(entries[i].size()) != space.rank)
      throw ShapeError("operator matrix row " + std::to_string(i) + " has the wrong length");
    for (int j = 0; j < space.rank; ++j)
      if (!entries[i][j].shape_matches(space.spec))
        throw ShapeError("operator entry (" + std::to_string(i) + "," + std::to_string(j) +
                         ") lives in the wrong algebra");
  }
}

}  // namespace

SesquilinearForm form_from_operator(const ModuleSpace& space,
                                    std::vector<std::vector<AlgebraElement>> entries) {
  space.validate();
  require_entries_shape(space, entries);
  Matrix flat = flat_of_operator(space, entries);
  return {space, std::move(entries), std::move(flat)};
}

SesquilinearForm inner_product_form(const ModuleSpace& space) {
  std::vector<std::vector<AlgebraElement>> entries(
      space.rank, std::vector<AlgebraElement>(space.rank, zero_element(space.spec)));
  for (int i = 0; i < space.rank; ++i) entries[i][i] = identity_element(space.spec);
  return form_from_operator(space, std::move(entries));
}

SesquilinearForm form_from_flat(const ModuleSpace& space, const Matrix& flat, double tol) {
  const int d = space.flat_dim();
  if (flat.rows() != d || flat.cols() != d) throw ShapeError("flat operator has the wrong shape");
  std::vector<std::vector<AlgebraElement>> entries(
      space.rank, std::vector<AlgebraElement>(space.rank, zero_element(space.spec)));
  for (int i = 0; i < space.rank; ++i)
    for (int j = 0; j < space.rank; ++j)
      for (int k = 0; k < space.spec.num_blocks(); ++k) {
        const int n = space.spec.block_sizes[k];
        entries[i][j].blocks[k] = flat.block(space.flat_offset(i, k), space.flat_offset(j, k), n, n);
      }
  SesquilinearForm b = form_from_operator(space, std::move(entries));
  if ((b.flat - flat).norm() > tol * (1.0 + flat.norm()))
    throw ValidationError("flat matrix is not A-linear (no operator matrix over A induces it)");
  return b;
}

ModuleVector apply_operator(const SesquilinearForm& b, const ModuleVector& x) {
  if (x.space != b.space) throw ShapeError("vector lives outside the form's module");
  return unflatten(b.space, b.flat * flatten(x));
}

AlgebraElement apply_form(const SesquilinearForm& b, const ModuleVector& x,
                          const ModuleVector& y) {
  return inner_product(apply_operator(b, x), y);
}

SesquilinearForm adjoint_form(const SesquilinearForm& b) {
  std::vector<std::vector<AlgebraElement>> entries(
      b.space.rank, std::vector<AlgebraElement>(b.space.rank, zero_element(b.space.spec)));
  for (int i = 0; i < b.space.rank; ++i)
    for (int j = 0; j < b.space.rank; ++j) entries[i][j] = adjoint(b.op[j][i]);
  return form_from_operator(b.space, std::move(entries));
}

SesquilinearForm riesz_from_values(const ModuleSpace& space,
                                   const std::vector<std::vector<AlgebraElement>>& values) {
  require_entries_shape(space, values);
  std::vector<std::vector<AlgebraElement>> entries(
      space.rank, std::vector<AlgebraElement>(space.rank, zero_element(space.spec)));
  // <T e_i, e_j> = B(e_i, e_j) forces (T e_i)_j = B(e_i, e_j)*.
  for (int i = 0; i < space.rank; ++i)
    for (int j = 0; j < space.rank; ++j) entries[j][i] = adjoint(values[i][j]);
  return form_from_operator(space, std::move(entries));
}

std::vector<std::vector<AlgebraElement>> form_values(const SesquilinearForm& b) {
  std::vector<std::vector<AlgebraElement>> values(
      b.space.rank, std::vector<AlgebraElement>(b.space.rank, zero_element(b.space.spec)));
  for (int i = 0; i < b.space.rank; ++i) {
    ModuleVector ti = apply_operator(b, module_basis_vector(b.space, i));
    for (int j = 0; j < b.space.rank; ++j) values[i][j] = adjoint(ti.entries[j]);
  }
  return values;
}

Matrix compress(const SesquilinearForm& b, const Submodule& y) {
  if (y.space() != b.space) throw ShapeError("submodule lives outside the form's module");
  return y.basis().adjoint() * b.flat * y.basis();
}

namespace {

Submodule radical_from_kernel(const SesquilinearForm& b, const Submodule& y, bool adjoint_side) {
  if (y.dim() == 0) return zero_submodule(b.space);
  Matrix s = compress(b, y);
  Matrix w = adjoint_side ? kernel_basis(Matrix(s.adjoint())) : kernel_basis(s);
  if (w.cols() == 0) return zero_submodule(b.space);
  return submodule_from_flat_basis(y.space(), y.basis() * w);
}

}  // namespace

Submodule right_radical(const SesquilinearForm& b, const Submodule& y) {
  return radical_from_kernel(b, y, /*adjoint_side=*/false);
}

Submodule left_radical(const SesquilinearForm& b, const Submodule& y) {
  return radical_from_kernel(b, y, /*adjoint_side=*/true);
}

RadicalReport radical_report(const SesquilinearForm& b, const Submodule& y) {
  Submodule r = right_radical(b, y);
  Submodule l = left_radical(b, y);
  std::pair<long, long> dims{r.dim(), l.dim()};
  return {std::move(r), std::move(l), dims};
}

bool null_membership(const SesquilinearForm& b, const ModuleVector& y, double tol) {
  return norm(apply_form(b, y, y)) <= tol;
}

bool is_positive_on(const SesquilinearForm& b, const Submodule& y, double tol) {
  if (y.dim() == 0) return true;
  Matrix s = compress(b, y);
  if ((s - s.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  return hermitian_min_eigenvalue(s) >= -tol;
}

double ellipticity_constant(const SesquilinearForm& b, const Submodule& y, double tol) {
  if (!is_positive_on(b, y, tol))
    throw DomainError("ellipticity constant requires a form positive on the submodule");
  if (y.dim() == 0) return std::numeric_limits<double>::infinity();
  return std::max(0.0, hermitian_min_eigenvalue(compress(b, y)));
}

bool is_normal_on(const SesquilinearForm& b, const Submodule& y, double tol) {
  if (y.dim() == 0) return true;
  Matrix s = compress(b, y);
  Matrix k1 = kernel_basis(s);
  Matrix k2 = kernel_basis(Matrix(s.adjoint()));
  if (k1.cols() != k2.cols()) return false;
  if (k1.cols() == 0) return true;
  return projector_distance(k1 * k1.adjoint(), k2 * k2.adjoint()) <= tol;
}

}  // namespace cspline
