#include "cspline/linalg.hpp"

#include <Eigen/SVD>
#include <Eigen/Eigenvalues>

#include "cspline/errors.hpp"

namespace cspline {

double spectral_norm(const Eigen::Ref<const Matrix>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double hermitian_min_eigenvalue(const Eigen::Ref<const Matrix>& m) {
  if (m.rows() == 0) return 0.0;
  Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

long rank_of(const Eigen::Ref<const Matrix>& m, double rel_cutoff) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(0) <= 0.0) return 0;
  long r = 0;
  for (long i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_cutoff * sv(0)) ++r;
  return r;
}

Matrix range_basis(const Eigen::Ref<const Matrix>& m, double rel_cutoff) {
  if (m.rows() == 0 || m.cols() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  long r = 0;
  if (sv.size() > 0 && sv(0) > 0.0)
    for (long i = 0; i < sv.size(); ++i)
      if (sv(i) > rel_cutoff * sv(0)) ++r;
  return svd.matrixU().leftCols(r);
}

Matrix kernel_basis(const Eigen::Ref<const Matrix>& m, double rel_cutoff) {
  if (m.cols() == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  long r = 0;
  if (sv.size() > 0 && sv(0) > 0.0)
    for (long i = 0; i < sv.size(); ++i)
      if (sv(i) > rel_cutoff * sv(0)) ++r;
  return svd.matrixV().rightCols(m.cols() - r);
}

Vector pseudo_solve(const Eigen::Ref<const Matrix>& m, const Eigen::Ref<const Vector>& rhs,
                    double rel_cutoff) {
  if (m.rows() == 0 || m.cols() == 0) return Vector::Zero(m.cols());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(rel_cutoff);
  return svd.solve(rhs);
}

bool range_contained(const Eigen::Ref<const Matrix>& inner,
                     const Eigen::Ref<const Matrix>& outer, double tol) {
  if (inner.cols() == 0) return true;
  Matrix q = range_basis(outer);
  Matrix residual = inner - q * (q.adjoint() * inner);
  return spectral_norm(residual) <= tol * std::max(1.0, spectral_norm(inner));
}

double projector_distance(const Eigen::Ref<const Matrix>& p, const Eigen::Ref<const Matrix>& q) {
  return spectral_norm(p - q);
}

Matrix mgs_basis(const Eigen::Ref<const Matrix>& candidates, long target_rank, double drop_tol) {
  const long n = candidates.rows();
  Matrix q(n, target_rank);
  long kept = 0;
  for (long c = 0; c < candidates.cols() && kept < target_rank; ++c) {
    Vector v = candidates.col(c);
    // two projection passes keep orthogonality near machine precision
    for (int pass = 0; pass < 2; ++pass)
      if (kept > 0) v -= q.leftCols(kept) * (q.leftCols(kept).adjoint() * v);
    double nv = v.norm();
    if (nv > drop_tol) {
      q.col(kept++) = v / nv;
    }
  }
  if (kept != target_rank)
    throw ValidationError("mgs_basis: candidate columns do not span the requested rank");
  return q;
}

}  // namespace cspline
