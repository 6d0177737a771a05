#include "cspline/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <random>

namespace cspline {

int AlgebraSpec::dim() const {
  int d = 0;
  for (int n : block_sizes) d += n * n;
  return d;
}

int AlgebraSpec::block_offset(int k) const {
  int off = 0;
  for (int i = 0; i < k; ++i) off += block_sizes[i] * block_sizes[i];
  return off;
}

void AlgebraSpec::validate() const {
  if (block_sizes.empty()) throw ValidationError("algebra spec needs at least one block");
  for (int n : block_sizes)
    if (n < 1) throw ValidationError("algebra block sizes must be positive");
}

AlgebraElement::AlgebraElement(AlgebraSpec s, std::vector<Matrix> b)
    : spec(std::move(s)), blocks(std::move(b)) {
  if (static_cast<int>(blocks.size()) != spec.num_blocks())
    throw ShapeError("element block count does not match the algebra spec");
  for (int k = 0; k < spec.num_blocks(); ++k) {
    const int n = spec.block_sizes[k];
    if (blocks[k].rows() != n || blocks[k].cols() != n)
      throw ShapeError("element block " + std::to_string(k) + " has the wrong shape");
  }
}

AlgebraElement zero_element(const AlgebraSpec& spec) {
  std::vector<Matrix> blocks;
  blocks.reserve(spec.num_blocks());
  for (int n : spec.block_sizes) blocks.push_back(Matrix::Zero(n, n));
  return {spec, std::move(blocks)};
}

AlgebraElement identity_element(const AlgebraSpec& spec) {
  std::vector<Matrix> blocks;
  blocks.reserve(spec.num_blocks());
  for (int n : spec.block_sizes) blocks.push_back(Matrix::Identity(n, n));
  return {spec, std::move(blocks)};
}

std::vector<AlgebraElement> matrix_unit_basis(const AlgebraSpec& spec) {
  std::vector<AlgebraElement> basis;
  basis.reserve(spec.dim());
  for (int k = 0; k < spec.num_blocks(); ++k) {
    const int n = spec.block_sizes[k];
    for (int q = 0; q < n; ++q)
      for (int p = 0; p < n; ++p) {
        AlgebraElement e = zero_element(spec);
        e.blocks[k](p, q) = 1.0;
        basis.push_back(std::move(e));
      }
  }
  return basis;
}

Vector flatten_element(const AlgebraElement& a) {
  Vector v(a.spec.dim());
  int off = 0;
  for (const Matrix& blk : a.blocks) {
    const long sz = blk.size();
    v.segment(off, sz) = Eigen::Map<const Vector>(blk.data(), sz);
    off += static_cast<int>(sz);
  }
  return v;
}

AlgebraElement unflatten_element(const AlgebraSpec& spec, const Eigen::Ref<const Vector>& v) {
  if (v.size() != spec.dim()) throw ShapeError("flattened element has the wrong length");
  AlgebraElement a = zero_element(spec);
  int off = 0;
  for (Matrix& blk : a.blocks) {
    const long sz = blk.size();
    Eigen::Map<Vector>(blk.data(), sz) = v.segment(off, sz);
    off += static_cast<int>(sz);
  }
  return a;
}

namespace {

void require_same_spec(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.spec != b.spec) throw ShapeError("algebra elements live in different algebras");
}

}  // namespace

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_spec(a, b);
  AlgebraElement c = a;
  for (size_t k = 0; k < c.blocks.size(); ++k) c.blocks[k] = a.blocks[k] * b.blocks[k];
  return c;
}

AlgebraElement adjoint(const AlgebraElement& a) {
  AlgebraElement c = a;
  for (Matrix& blk : c.blocks) blk = blk.adjoint().eval();
  return c;
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_spec(a, b);
  AlgebraElement c = a;
  for (size_t k = 0; k < c.blocks.size(); ++k) c.blocks[k] += b.blocks[k];
  return c;
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_spec(a, b);
  AlgebraElement c = a;
  for (size_t k = 0; k < c.blocks.size(); ++k) c.blocks[k] -= b.blocks[k];
  return c;
}

AlgebraElement operator-(const AlgebraElement& a) { return Complex(-1.0, 0.0) * a; }

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return mul(a, b); }

AlgebraElement operator*(Complex lambda, const AlgebraElement& a) {
  AlgebraElement c = a;
  for (Matrix& blk : c.blocks) blk *= lambda;
  return c;
}

bool is_positive(const AlgebraElement& a, double tol) {
  if (tol < 0) throw ValidationError("tolerance must be nonnegative");
  for (const Matrix& blk : a.blocks) {
    if ((blk - blk.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    Matrix h = 0.5 * (blk + blk.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < -tol) return false;
  }
  return true;
}

double norm(const AlgebraElement& a) {
  double m = 0.0;
  for (const Matrix& blk : a.blocks) {
    Eigen::JacobiSVD<Matrix> svd(blk);
    if (svd.singularValues().size() > 0) m = std::max(m, svd.singularValues()(0));
  }
  return m;
}

Complex trace(const AlgebraElement& a) {
  Complex t = 0.0;
  for (const Matrix& blk : a.blocks) t += blk.trace();
  return t;
}

Complex evaluate(const PureState& f, const AlgebraElement& a) {
  const int k = f.block_index;
  if (k < 0 || k >= a.spec.num_blocks())
    throw ShapeError("pure state block index outside the algebra");
  if (f.vector.size() != a.spec.block_sizes[k])
    throw ShapeError("pure state vector length does not match its block");
  return f.vector.dot(a.blocks[k] * f.vector);
}

std::vector<PureState> pure_state_grid(const AlgebraSpec& spec, int samples_per_block,
                                       unsigned long seed) {
  if (samples_per_block < 1) throw ValidationError("samples_per_block must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<PureState> states;
  for (int k = 0; k < spec.num_blocks(); ++k) {
    const int n = spec.block_sizes[k];
    for (int i = 0; i < n; ++i) {
      Vector v = Vector::Zero(n);
      v(i) = 1.0;
      states.push_back({k, std::move(v)});
    }
    if (n >= 2) {
      for (int i = n; i < samples_per_block; ++i) {
        Vector v(n);
        for (int j = 0; j < n; ++j) v(j) = Complex(gauss(rng), gauss(rng));
        v.normalize();
        states.push_back({k, std::move(v)});
      }
    }
  }
  return states;
}

}  // namespace cspline
