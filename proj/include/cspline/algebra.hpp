#pragma once

#include <vector>

#include "cspline/errors.hpp"
#include "cspline/linalg.hpp"

namespace cspline {

/// Shape of a finite-dimensional C*-algebra A = ⊕_k M_{n_k}(C).
///
/// Every finite-dimensional C*-algebra is of this form, so fixing the shape
/// makes all order, norm and state computations decidable linear algebra.
struct AlgebraSpec {
  std::vector<int> block_sizes;

  [[nodiscard]] int num_blocks() const { return static_cast<int>(block_sizes.size()); }

  /// Complex dimension Σ_k n_k² of the underlying vector space.
  [[nodiscard]] int dim() const;

  /// Offset of block k in the flattened coordinate vector.
  [[nodiscard]] int block_offset(int k) const;

  void validate() const;  // at least one block, every n_k >= 1

  bool operator==(const AlgebraSpec&) const = default;
};

/// Element of ⊕_k M_{n_k}(C), stored blockwise.
struct AlgebraElement {
  AlgebraSpec spec;
  std::vector<Matrix> blocks;

  AlgebraElement() = default;
  AlgebraElement(AlgebraSpec s, std::vector<Matrix> b);

  [[nodiscard]] bool shape_matches(const AlgebraSpec& s) const { return spec == s; }
};

AlgebraElement zero_element(const AlgebraSpec& spec);
AlgebraElement identity_element(const AlgebraSpec& spec);

/// Matrix units E^{(k)}_{pq}, a linear basis of the algebra. Ordering: block
/// major, then column-major within the block (matching flatten_element).
std::vector<AlgebraElement> matrix_unit_basis(const AlgebraSpec& spec);

/// Coordinates of a with respect to matrix_unit_basis (column-major blocks).
Vector flatten_element(const AlgebraElement& a);
AlgebraElement unflatten_element(const AlgebraSpec& spec, const Eigen::Ref<const Vector>& v);

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement adjoint(const AlgebraElement& a);

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a);
AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(Complex lambda, const AlgebraElement& a);

/// True iff every block is Hermitian within tol and its minimum eigenvalue
/// is >= -tol (the order relation a >= 0 of the algebra).
bool is_positive(const AlgebraElement& a, double tol = kDefaultTol);

/// C*-norm: the largest singular value over all blocks.
double norm(const AlgebraElement& a);

Complex trace(const AlgebraElement& a);

/// Pure state of ⊕_k M_{n_k}(C): a vector state supported on one block,
/// f(a) = v* a_k v with ||v|| = 1.
struct PureState {
  int block_index = 0;
  Vector vector;
};

Complex evaluate(const PureState& f, const AlgebraElement& a);

/// Deterministic sample of the pure state space. Each block contributes its
/// standard basis vectors plus, for blocks of size >= 2, enough Haar-random
/// unit vectors to reach samples_per_block. Blocks of size 1 carry a single
/// vector state, so no random duplicates are added for them.
std::vector<PureState> pure_state_grid(const AlgebraSpec& spec, int samples_per_block,
                                       unsigned long seed);

}  // namespace cspline
