#pragma once

#include <string>
#include <vector>

#include "cspline/spline.hpp"

namespace cspline {

/// The Hilbert space obtained from X by the semi-inner product f(<·,·>),
/// with its null space quotiented out. In finite dimensions this is simply
/// the rank-revealing factor of the Gram matrix; no completion is needed.
///
/// The localized pairing follows the convention (x, y)_f = f(<y, x>)
/// (note the argument swap), so it is linear in the first slot.
struct LocalizedSpace {
  PureState state;
  ModuleSpace space;
  long dim = 0;
  Matrix embed_map;  // dim × D, Gram = embed_map* embed_map
  Matrix gram;       // D × D, gram[j,i] = f(<b_j, b_i>)

  [[nodiscard]] Vector embed(const ModuleVector& x) const;

  /// (x, y)_f = f(<y, x>) evaluated through the embedding.
  [[nodiscard]] Complex pairing(const ModuleVector& x, const ModuleVector& y) const;
};

LocalizedSpace localize(const PureState& f, const ModuleSpace& space);

/// Deviation |(x, w)_f − f(<w, x>)| for the functional τ = <w, ·> given by
/// its representer w. Zero (up to rounding) by self-duality.
double localized_functional_identity(const LocalizedSpace& loc, const ModuleVector& x,
                                     const ModuleVector& representer);

struct CoercivityRow {
  double k = 0.0;
  double c_hat = 0.0;
  long witnesses = 0;  // (state, target) pairs that contributed a ratio
  std::string note;
};

struct CoercivityTable {
  std::vector<CoercivityRow> rows;  // sorted by k
  long n_states = 0;
  long n_targets = 0;
  unsigned long seed = 0;
};

struct CoercivityOptions {
  int random_candidates = 32;
  double tol = kDefaultTol;
};

/// Estimates the largest constant c for which every pure state f and every
/// unit target x in Y ⊖ Y̌ admit a unit y in Y with f(|y|²) >= k and
/// |f(B(x,y))|² >= c f(|x|²) f(|y|²).
///
/// The inner existential is replaced by a finite candidate search (x itself,
/// the projected image Π T x, the basis of Y, and a seeded random pool), so
/// ĉ(k) is a lower bound for the true best constant over the sampled grid.
/// Targets with f(|x|²) <= tol are skipped (the inequality is vacuous); a
/// (state, target) pair with no admissible candidate forces ĉ(k) = 0 and is
/// recorded in the row note.
CoercivityTable coercivity_estimate(const SesquilinearForm& b, const Submodule& y,
                                    std::vector<double> k_grid,
                                    const std::vector<PureState>& states, int n_targets,
                                    unsigned long seed, const CoercivityOptions& opts = {});

/// One designated (state, target) pair of the truncated sequence-space
/// family, with the closed-form ceiling its ratio cannot exceed.
struct DesignatedPair {
  int index = 0;  // j
  PureState state;
  ModuleVector target;
  double ratio_bound = 0.0;  // (1/2j)²
};

/// Finite truncation of the sequence-space family over A = M_n(C):
/// X = A^{2N}, Y the odd-slot-free submodule, and the weighted shift-type
/// operator (φT)_j = (1/j) T_j + (1/√j) T_{j+1} for even j (the coupling
/// term is dropped at the last even slot). The designated pairs witness the
/// decay that rules out a uniform coercivity constant.
///
/// Ratio evaluation and the radical rank check work on the structured
/// representation, so large truncations never materialize D×D matrices;
/// problem() builds the dense instance and is meant for small sizes.
class TruncatedFamily {
 public:
  TruncatedFamily(int n_block, int order);

  [[nodiscard]] int n_block() const { return n_block_; }
  [[nodiscard]] int order() const { return order_; }
  [[nodiscard]] const ModuleSpace& space() const { return space_; }
  [[nodiscard]] const std::vector<DesignatedPair>& pairs() const { return pairs_; }

  /// Real m×m coefficient matrix of the operator (entries are multiples of
  /// the identity of M_n).
  [[nodiscard]] const Eigen::MatrixXd& scalar_operator() const { return scalar_op_; }

  /// Flat-module slots spanned by Y.
  [[nodiscard]] const std::vector<int>& constraint_slots() const { return slots_; }

  /// Best coercivity ratio at the designated pair j over the finite
  /// candidate set, admissibility f(|y|²) >= k.
  [[nodiscard]] double designated_ratio(int j, double k, int random_candidates,
                                        unsigned long seed) const;

  /// Flat dimension of the right radical of Y. Entries of the operator are
  /// scalar multiples of the identity of the (simple) algebra, so the
  /// radical is ker(C_YY) ⊗ M_n for the scalar compression C_YY; the rank
  /// computation happens at that scalar level.
  [[nodiscard]] long right_radical_dim() const;

  /// Dense instance for the designated target j. Materializes the full
  /// submodule machinery; intended for small n_block and order.
  [[nodiscard]] SplineProblem problem(int j, double tol = kDefaultTol) const;

 private:
  int n_block_;
  int order_;  // N
  ModuleSpace space_;
  Eigen::MatrixXd scalar_op_;
  std::vector<int> slots_;
  std::vector<DesignatedPair> pairs_;
};

/// Validated constructor: requires n_block >= 2·order + 2 and order >= 1.
TruncatedFamily truncated_counterexample(int n_block, int order);

}  // namespace cspline
