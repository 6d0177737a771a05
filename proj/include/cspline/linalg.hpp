#pragma once

#include <Eigen/Dense>
#include <complex>

namespace cspline {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Relative singular-value cutoff used for every rank decision.
inline constexpr double kRankCutoff = 1e-8;

/// Default absolute tolerance for eigenvalue / norm comparisons.
inline constexpr double kDefaultTol = 1e-9;

double spectral_norm(const Eigen::Ref<const Matrix>& m);

/// Smallest eigenvalue of the Hermitian part (m + m*)/2.
double hermitian_min_eigenvalue(const Eigen::Ref<const Matrix>& m);

long rank_of(const Eigen::Ref<const Matrix>& m, double rel_cutoff = kRankCutoff);

/// Orthonormal basis of the column space of m.
Matrix range_basis(const Eigen::Ref<const Matrix>& m, double rel_cutoff = kRankCutoff);

/// Orthonormal basis of {v : m v = 0}.
Matrix kernel_basis(const Eigen::Ref<const Matrix>& m, double rel_cutoff = kRankCutoff);

/// Minimum-norm least-squares solution of m w = rhs.
Vector pseudo_solve(const Eigen::Ref<const Matrix>& m, const Eigen::Ref<const Vector>& rhs,
                    double rel_cutoff = kRankCutoff);

/// True iff every column of `inner` lies in the column space of `outer`,
/// measured against tol * max(1, ||inner||).
bool range_contained(const Eigen::Ref<const Matrix>& inner,
                     const Eigen::Ref<const Matrix>& outer, double tol);

/// Spectral distance between two orthogonal projectors.
double projector_distance(const Eigen::Ref<const Matrix>& p, const Eigen::Ref<const Matrix>& q);

/// Orthonormalizes the columns of `candidates` by modified Gram-Schmidt with
/// re-orthogonalization, keeping the first `target_rank` independent columns
/// in their original order. Columns already orthonormal pass through unchanged.
Matrix mgs_basis(const Eigen::Ref<const Matrix>& candidates, long target_rank,
                 double drop_tol = 1e-7);

}  // namespace cspline
