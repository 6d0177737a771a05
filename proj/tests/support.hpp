#pragma once

// Shared generators and independent oracles for the test suites. The dense
// block-diagonal embedding below is the reference implementation the
// blockwise algebra is checked against; it must stay independent of the
// library code paths.

#include <random>

#include "cspline/forms.hpp"

namespace testsupport {

using namespace cspline;

inline Complex crand(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  return {gauss(rng), gauss(rng)};
}

inline Matrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = crand(rng);
  return m;
}

inline AlgebraElement random_element(const AlgebraSpec& spec, std::mt19937_64& rng) {
  AlgebraElement a = zero_element(spec);
  for (int k = 0; k < spec.num_blocks(); ++k)
    a.blocks[k] = random_matrix(spec.block_sizes[k], spec.block_sizes[k], rng);
  return a;
}

inline ModuleVector random_vector(const ModuleSpace& space, std::mt19937_64& rng) {
  ModuleVector x = zero_vector(space);
  for (int i = 0; i < space.rank; ++i) x.entries[i] = random_element(space.spec, rng);
  return x;
}

inline std::vector<ModuleVector> random_generators(const ModuleSpace& space, int count,
                                                   std::mt19937_64& rng) {
  std::vector<ModuleVector> gens;
  for (int i = 0; i < count; ++i) gens.push_back(random_vector(space, rng));
  return gens;
}

inline SesquilinearForm random_form(const ModuleSpace& space, std::mt19937_64& rng) {
  std::vector<std::vector<AlgebraElement>> entries(
      space.rank, std::vector<AlgebraElement>(space.rank, zero_element(space.spec)));
  for (int i = 0; i < space.rank; ++i)
    for (int j = 0; j < space.rank; ++j) entries[i][j] = random_element(space.spec, rng);
  return form_from_operator(space, entries);
}

/// T = R* R for a random R: positive on the whole module.
inline SesquilinearForm random_positive_form(const ModuleSpace& space, std::mt19937_64& rng) {
  SesquilinearForm r = random_form(space, rng);
  return form_from_flat(space, Matrix(r.flat.adjoint() * r.flat));
}

/// Slim generator: right-multiplying by a corner unit cuts the generated
/// submodule down to a proper slice (block-0 column space only).
inline ModuleVector thin_vector(const ModuleSpace& space, std::mt19937_64& rng) {
  AlgebraElement corner = zero_element(space.spec);
  corner.blocks[0](0, 0) = 1.0;
  return right_action(random_vector(space, rng), corner);
}

/// Positive-on-Y instance with Y = W ⊕ Z, compression = projector of W and
/// radical Z. With junk enabled, T picks up Π_Z H (1−Π_Y), which leaves the
/// compression untouched but makes T* visible on the radical: the necessary
/// condition fails and generic targets become unsolvable.
struct PositiveInstance {
  SesquilinearForm form;
  Submodule y;
};

/// Needs enough room for Z ⊕ W to sit properly inside the module
/// (rank >= 3 always suffices); throws instead of spinning when the space is
/// too small.
inline PositiveInstance make_positive_instance(const ModuleSpace& space, std::mt19937_64& rng,
                                               bool with_junk) {
  for (int attempt = 0; attempt < 500; ++attempt) {
    ModuleVector zgen = thin_vector(space, rng);
    if (module_norm(zgen) < 1e-3) continue;
    Submodule z = submodule_from_generators(space, {zgen});
    ModuleVector wgen = project(orthogonal_complement(z), thin_vector(space, rng));
    if (module_norm(wgen) < 1e-3) continue;
    Submodule w = submodule_from_generators(space, {wgen});
    Submodule y = submodule_from_generators(space, {zgen, wgen});
    if (y.dim() >= space.flat_dim() || y.dim() != z.dim() + w.dim()) continue;
    Matrix t = w.projector();
    if (with_junk) {
      SesquilinearForm h = random_form(space, rng);
      Matrix eye = Matrix::Identity(space.flat_dim(), space.flat_dim());
      t += z.projector() * h.flat * (eye - y.projector());
    }
    return {form_from_flat(space, t), std::move(y)};
  }
  throw ValidationError("make_positive_instance: module too small for a proper split");
}

// ---- independent oracles -------------------------------------------------

/// Dense block-diagonal embedding of ⊕_k M_{n_k} into M_{Σ n_k}.
inline Matrix embed_dense(const AlgebraElement& a) {
  int total = 0;
  for (int n : a.spec.block_sizes) total += n;
  Matrix m = Matrix::Zero(total, total);
  int off = 0;
  for (int k = 0; k < a.spec.num_blocks(); ++k) {
    const int n = a.spec.block_sizes[k];
    m.block(off, off, n, n) = a.blocks[k];
    off += n;
  }
  return m;
}

/// Gram matrix of a localization built entry by entry from the definitions.
inline Matrix brute_gram(const PureState& f, const ModuleSpace& space) {
  const int d = space.flat_dim();
  Matrix gram(d, d);
  std::vector<ModuleVector> basis;
  for (int i = 0; i < d; ++i) {
    Vector e = Vector::Zero(d);
    e(i) = 1.0;
    basis.push_back(unflatten(space, e));
  }
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) gram(j, i) = evaluate(f, inner_product(basis[j], basis[i]));
  return gram;
}

}  // namespace testsupport
