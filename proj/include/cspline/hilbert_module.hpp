#pragma once

#include <vector>

#include "cspline/algebra.hpp"

namespace cspline {

/// The free Hilbert A-module X = A^m with inner product <x,y> = Σ_i x_i* y_i.
struct ModuleSpace {
  AlgebraSpec spec;
  int rank = 0;  // m

  /// Complex dimension D = m · dim(A) of the flattened space.
  [[nodiscard]] int flat_dim() const { return rank * spec.dim(); }

  /// Offset of (entry i, block k) in the flattened coordinate vector.
  [[nodiscard]] int flat_offset(int entry, int block) const {
    return entry * spec.dim() + spec.block_offset(block);
  }

  void validate() const;

  bool operator==(const ModuleSpace&) const = default;
};

/// Element of A^m: an m-tuple of algebra elements.
struct ModuleVector {
  ModuleSpace space;
  std::vector<AlgebraElement> entries;

  ModuleVector() = default;
  ModuleVector(ModuleSpace s, std::vector<AlgebraElement> e);
};

ModuleVector zero_vector(const ModuleSpace& space);

/// e_i: identity of A at slot i, zero elsewhere. The e_i generate A^m.
ModuleVector module_basis_vector(const ModuleSpace& space, int i);

ModuleVector operator+(const ModuleVector& x, const ModuleVector& y);
ModuleVector operator-(const ModuleVector& x, const ModuleVector& y);
ModuleVector operator*(Complex lambda, const ModuleVector& x);

/// Right module action x·a, entrywise multiplication by a.
ModuleVector right_action(const ModuleVector& x, const AlgebraElement& a);

/// A-valued inner product <x,y> = Σ_i x_i* y_i.
AlgebraElement inner_product(const ModuleVector& x, const ModuleVector& y);

/// Module norm ||x|| = ||<x,x>||^{1/2}.
double module_norm(const ModuleVector& x);

/// Linear bijection onto C^D (entry major, block major, column-major blocks).
/// The trace pairing transports to the standard inner product:
/// flatten(x).dot(flatten(y)) = tr(<x,y>).
Vector flatten(const ModuleVector& x);
ModuleVector unflatten(const ModuleSpace& space, const Eigen::Ref<const Vector>& v);

/// Matrix of the right action v ↦ flatten(unflatten(v)·b) on C^D.
Matrix right_action_matrix(const ModuleSpace& space, const AlgebraElement& b);

/// A-invariant subspace of A^m, stored as an orthogonal projector on the
/// flattened space together with an orthonormal basis of its range and the
/// defining generators. Construction validates the projector identities and
/// the commutation with every right-action operator.
class Submodule {
 public:
  Submodule(ModuleSpace space, Matrix projector, Matrix basis,
            std::vector<ModuleVector> generators);

  [[nodiscard]] const ModuleSpace& space() const { return space_; }
  [[nodiscard]] const Matrix& projector() const { return projector_; }
  [[nodiscard]] const Matrix& basis() const { return basis_; }
  [[nodiscard]] const std::vector<ModuleVector>& generators() const { return generators_; }
  [[nodiscard]] long dim() const { return basis_.cols(); }

  [[nodiscard]] bool contains(const ModuleVector& x, double tol = kDefaultTol) const;

 private:
  ModuleSpace space_;
  Matrix projector_;  // D×D, Π = Π* = Π²
  Matrix basis_;      // D×r, orthonormal columns spanning ran Π
  std::vector<ModuleVector> generators_;
};

/// Smallest A-invariant subspace containing the generators: the complex span
/// of {g·b : g generator, b matrix unit}. Empty generators give the zero
/// submodule.
Submodule submodule_from_generators(const ModuleSpace& space,
                                    const std::vector<ModuleVector>& generators);

Submodule zero_submodule(const ModuleSpace& space);
Submodule full_module(const ModuleSpace& space);

/// Submodule spanned by orthonormal flattened columns. The span must be
/// A-invariant; generators default to the unflattened columns.
Submodule submodule_from_flat_basis(const ModuleSpace& space, const Matrix& columns);

/// Orthogonal projection onto Y; the residual x − P(x) is A-orthogonal to Y.
ModuleVector project(const Submodule& y, const ModuleVector& x);

/// Y^⊥ = {x : <x,y> = 0 for all y in Y}; projector I − Π.
Submodule orthogonal_complement(const Submodule& y);

/// Riesz representation for A-linear functionals: given τ: X → A as a matrix
/// taking flattened module coordinates to flattened algebra coordinates,
/// returns the unique x with <x,·> = τ. Throws ValidationError when τ is not
/// A-linear (equivalently, not representable).
ModuleVector functional_representer(const ModuleSpace& space,
                                    const Eigen::Ref<const Matrix>& tau,
                                    double tol = kDefaultTol);

/// Matrix of x̂ = <x,·>: flattened module coordinates → flattened algebra
/// coordinates. Inverse direction of functional_representer.
Matrix functional_of(const ModuleVector& x);

}  // namespace cspline
