#pragma once

#include <utility>
#include <vector>

#include "cspline/hilbert_module.hpp"

namespace cspline {

/// Bounded A-sesquilinear form B(x,y) = <T x, y>, carried by its Riesz
/// operator T. T is an m×m matrix over A acting by (T x)_i = Σ_j T_ij · x_j;
/// the flattened matrix of the induced linear map is kept alongside and
/// commutes with every right-action operator.
struct SesquilinearForm {
  ModuleSpace space;
  std::vector<std::vector<AlgebraElement>> op;  // op[i][j]
  Matrix flat;                                  // D×D
};

/// Builds the form from operator entries; the flattened matrix is derived.
SesquilinearForm form_from_operator(const ModuleSpace& space,
                                    std::vector<std::vector<AlgebraElement>> entries);

/// The A-valued inner product itself (T = identity).
SesquilinearForm inner_product_form(const ModuleSpace& space);

/// Recovers operator entries from a flattened D×D matrix. Throws
/// ValidationError when the matrix does not commute with the right action
/// (i.e. is not induced by an operator matrix over A).
SesquilinearForm form_from_flat(const ModuleSpace& space, const Matrix& flat,
                                double tol = kDefaultTol);

/// T x.
ModuleVector apply_operator(const SesquilinearForm& b, const ModuleVector& x);

/// B(x, y) = <T x, y>; anti-A-linear in x, A-linear in y.
AlgebraElement apply_form(const SesquilinearForm& b, const ModuleVector& x,
                          const ModuleVector& y);

/// Replaces T by T*: entries (T*)_ij = (T_ji)*.
SesquilinearForm adjoint_form(const SesquilinearForm& b);

/// Reconstructs the Riesz operator from the value table values[i][j]
/// = B(e_i, e_j) on the module basis: (T e_i)_j = B(e_i, e_j)*. The table
/// must be complete with entries in the right algebra.
SesquilinearForm riesz_from_values(const ModuleSpace& space,
                                   const std::vector<std::vector<AlgebraElement>>& values);

/// Value table B(e_i, e_j) of a form (inverse of riesz_from_values).
std::vector<std::vector<AlgebraElement>> form_values(const SesquilinearForm& b);

/// Compression S = Π flat(T) Π restricted to ran Π, expressed in the
/// submodule's stored basis (r×r).
Matrix compress(const SesquilinearForm& b, const Submodule& y);

/// Right radical Y̌ = {y̌ in Y : B(y̌, y) = 0 for all y in Y} = U·ker S.
Submodule right_radical(const SesquilinearForm& b, const Submodule& y);

/// Left radical Ỹ = {ỹ in Y : B(y, ỹ) = 0 for all y in Y} = U·ker S*.
Submodule left_radical(const SesquilinearForm& b, const Submodule& y);

struct RadicalReport {
  Submodule right;
  Submodule left;
  std::pair<long, long> dims;
};

RadicalReport radical_report(const SesquilinearForm& b, const Submodule& y);

/// Membership in the diagonal null set {y : B(y,y) = 0}: ||B(y,y)|| <= tol.
/// Not linear for general forms; for positive forms it coincides with the
/// radicals.
bool null_membership(const SesquilinearForm& b, const ModuleVector& y,
                     double tol = kDefaultTol);

/// B(y,y) >= 0 in A for all y in Y. Equivalent to the compression being
/// Hermitian PSD in the flattened picture; the equivalence is exercised by
/// pure-state sampling in the test suite.
bool is_positive_on(const SesquilinearForm& b, const Submodule& y, double tol = kDefaultTol);

/// Largest c >= 0 with B(y,y) >= c<y,y> on Y: the minimum eigenvalue of the
/// Hermitian compression. Requires a positive form; the zero submodule is
/// vacuously elliptic at every constant (+infinity).
double ellipticity_constant(const SesquilinearForm& b, const Submodule& y,
                            double tol = kDefaultTol);

/// ker(PTP) = ker(PT*P) as subspaces of Y (equal dimension and mutual
/// containment within tol).
bool is_normal_on(const SesquilinearForm& b, const Submodule& y, double tol = 1e-8);

}  // namespace cspline
