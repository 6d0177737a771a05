#include "cspline/localization.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

namespace cspline {

Vector LocalizedSpace::embed(const ModuleVector& x) const { return embed_map * flatten(x); }

Complex LocalizedSpace::pairing(const ModuleVector& x, const ModuleVector& y) const {
  return embed(y).dot(embed(x));
}

LocalizedSpace localize(const PureState& f, const ModuleSpace& space) {
  space.validate();
  const int d = space.flat_dim();
  const int kf = f.block_index;
  const int n = space.spec.block_sizes.at(kf);
  Matrix gram = Matrix::Zero(d, d);
  // Only coordinates inside the state's block pair nontrivially:
  // f(<E_{p'q'}, E_{pq}>) = δ_{p'p} conj(v_{q'}) v_q.
  for (int i = 0; i < space.rank; ++i) {
    const int off = space.flat_offset(i, kf);
    for (int q = 0; q < n; ++q)
      for (int qp = 0; qp < n; ++qp)
        for (int p = 0; p < n; ++p)
          gram(off + qp * n + p, off + q * n + p) = std::conj(f.vector(qp)) * f.vector(q);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  const auto& ev = es.eigenvalues();
  const double top = ev.size() > 0 ? ev(ev.size() - 1) : 0.0;
  const double cutoff = std::max(0.0, top) * kRankCutoff;
  long rank = 0;
  for (long i = 0; i < ev.size(); ++i)
    if (ev(i) > cutoff) ++rank;
  Matrix embed_map(rank, d);
  for (long r = 0; r < rank; ++r) {
    const long idx = ev.size() - 1 - r;  // descending
    embed_map.row(r) = std::sqrt(ev(idx)) * es.eigenvectors().col(idx).adjoint();
  }
  return {f, space, rank, std::move(embed_map), std::move(gram)};
}

double localized_functional_identity(const LocalizedSpace& loc, const ModuleVector& x,
                                     const ModuleVector& representer) {
  Complex via_embedding = loc.pairing(x, representer);
  Complex direct = evaluate(loc.state, inner_product(representer, x));
  return std::abs(via_embedding - direct);
}

namespace {

// Stacked images (y_i · v) over the slots; carries everything a vector
// state sees of a module vector:
//   f(<y, x>) = img(y)† img(x),  f(<x, x>) = ||img(x)||².
Vector state_image(const ModuleVector& y, const PureState& f) {
  const int n = y.space.spec.block_sizes.at(f.block_index);
  Vector img(y.space.rank * n);
  for (int i = 0; i < y.space.rank; ++i)
    img.segment(i * n, n) = y.entries[i].blocks[f.block_index] * f.vector;
  return img;
}

constexpr double kAdmissibleSlack = 1e-12;

}  // namespace

CoercivityTable coercivity_estimate(const SesquilinearForm& b, const Submodule& y,
                                    std::vector<double> k_grid,
                                    const std::vector<PureState>& states, int n_targets,
                                    unsigned long seed, const CoercivityOptions& opts) {
  if (!is_positive_on(b, y, opts.tol))
    throw DomainError("coercivity estimation requires a form positive on the submodule");
  for (double k : k_grid)
    if (!(k > 0.0 && k <= 1.0)) throw ValidationError("k grid values must lie in (0, 1]");
  if (n_targets < 1) throw ValidationError("need at least one target per state");
  std::sort(k_grid.begin(), k_grid.end());

  CoercivityTable table;
  table.n_states = static_cast<long>(states.size());
  table.n_targets = n_targets;
  table.seed = seed;

  // Targets live in Y ⊖ Y̌; for a positive compression the orthogonal
  // complement of the kernel is the range.
  Matrix s = compress(b, y);
  Matrix w = y.dim() > 0 ? range_basis(s) : Matrix(0, 0);
  Matrix target_basis = y.dim() > 0 ? Matrix(y.basis() * w) : Matrix(b.space.flat_dim(), 0);

  if (target_basis.cols() == 0 || states.empty()) {
    for (double k : k_grid)
      table.rows.push_back({k, 0.0, 0, "vacuous: no nondegenerate targets"});
    return table;
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_in = [&](const Matrix& basis) {
    Vector g(basis.cols());
    for (long i = 0; i < g.size(); ++i) g(i) = Complex(gauss(rng), gauss(rng));
    return Vector(basis * g);
  };

  // Shared candidate pool: the basis of Y plus seeded random unit vectors.
  std::vector<ModuleVector> pool;
  for (long c = 0; c < y.basis().cols(); ++c) {
    ModuleVector cand = unflatten(b.space, y.basis().col(c));
    double nrm = module_norm(cand);
    if (nrm > 0) pool.push_back((1.0 / nrm) * cand);
  }
  for (int i = 0; i < opts.random_candidates; ++i) {
    ModuleVector cand = unflatten(b.space, random_in(y.basis()));
    double nrm = module_norm(cand);
    if (nrm > 0) pool.push_back((1.0 / nrm) * cand);
  }

  struct Sample {  // one candidate seen from one (state, target) pair
    double f_yy;
    double ratio;
  };
  struct PairSamples {
    std::vector<Sample> samples;
  };
  std::vector<PairSamples> pairs;

  for (const PureState& f : states) {
    std::vector<Vector> pool_img;
    std::vector<double> pool_fyy;
    pool_img.reserve(pool.size());
    for (const ModuleVector& cand : pool) {
      Vector img = state_image(cand, f);
      pool_fyy.push_back(img.squaredNorm());
      pool_img.push_back(std::move(img));
    }
    for (int t = 0; t < n_targets; ++t) {
      Vector xv = random_in(target_basis);
      xv.normalize();
      ModuleVector x = unflatten(b.space, xv);
      Vector x_img = state_image(x, f);
      const double f_xx = x_img.squaredNorm();
      if (f_xx <= opts.tol) continue;  // vacuous target for this state
      ModuleVector tx = unflatten(b.space, Vector(b.flat * xv));
      Vector tx_img = state_image(tx, f);

      PairSamples ps;
      auto add = [&](const Vector& img, double f_yy) {
        if (f_yy <= 0) return;
        double num = std::norm(tx_img.dot(img));
        ps.samples.push_back({f_yy, num / (f_xx * f_yy)});
      };
      for (size_t i = 0; i < pool.size(); ++i) add(pool_img[i], pool_fyy[i]);
      // target-derived candidates: x itself and its projected image under T
      {
        double nrm = module_norm(x);
        if (nrm > 0) {
          Vector img = state_image((1.0 / nrm) * x, f);
          add(img, img.squaredNorm());
        }
        ModuleVector sx = unflatten(b.space, Vector(y.projector() * (b.flat * xv)));
        double snrm = module_norm(sx);
        if (snrm > 0) {
          Vector img = state_image((1.0 / snrm) * sx, f);
          add(img, img.squaredNorm());
        }
      }
      pairs.push_back(std::move(ps));
    }
  }

  for (double k : k_grid) {
    CoercivityRow row;
    row.k = k;
    double cmin = std::numeric_limits<double>::infinity();
    long witnesses = 0;
    long starved = 0;
    for (const PairSamples& ps : pairs) {
      double best = -1.0;
      for (const Sample& smp : ps.samples)
        if (smp.f_yy >= k - kAdmissibleSlack) best = std::max(best, smp.ratio);
      if (best < 0) {
        ++starved;
      } else {
        cmin = std::min(cmin, best);
        ++witnesses;
      }
    }
    if (starved > 0) {
      row.c_hat = 0.0;
      row.note = std::to_string(starved) + " (state, target) pairs had no candidate with f(|y|^2) >= k";
    } else if (witnesses == 0) {
      row.c_hat = 0.0;
      row.note = "vacuous: every target was null for every state";
    } else {
      row.c_hat = std::max(0.0, cmin);
    }
    row.witnesses = witnesses;
    table.rows.push_back(std::move(row));
  }
  return table;
}

TruncatedFamily::TruncatedFamily(int n_block, int order) : n_block_(n_block), order_(order) {
  if (order_ < 1) throw ValidationError("truncation order must be >= 1");
  if (n_block_ < 2 * order_ + 2)
    throw ValidationError("block size too small: need n >= 2·order + 2");
  const int m = 2 * order_;
  space_ = ModuleSpace{AlgebraSpec{{n_block_}}, m};

  // Slots carry 1-based labels j = 1..2N; Y zeroes the odd ones. The
  // coupling (1/√j) T_{j+1} is dropped at j = 2N (truncation boundary).
  scalar_op_ = Eigen::MatrixXd::Zero(m, m);
  for (int j = 2; j <= m; j += 2) {
    scalar_op_(j - 1, j - 1) = 1.0 / j;
    if (j + 1 <= m) scalar_op_(j - 1, j) = 1.0 / std::sqrt(static_cast<double>(j));
  }
  for (int j = 2; j <= m; j += 2) slots_.push_back(j - 1);

  for (int j = 1; j <= order_; ++j) {
    PureState f;
    f.block_index = 0;
    f.vector = Vector::Zero(n_block_);
    f.vector(2 * j) = 1.0;
    ModuleVector x = zero_vector(space_);
    x.entries[2 * j - 1].blocks[0](2 * j, 2 * j) = 1.0;  // rank-one projection
    double bound = 1.0 / (4.0 * j * j);
    pairs_.push_back({j, std::move(f), std::move(x), bound});
  }
}

double TruncatedFamily::designated_ratio(int j, double k, int random_candidates,
                                         unsigned long seed) const {
  if (j < 1 || j > order_) throw ValidationError("designated index out of range");
  if (!(k > 0.0 && k <= 1.0)) throw ValidationError("k must lie in (0, 1]");
  const DesignatedPair& pair = pairs_[j - 1];
  const PureState& f = pair.state;
  const int n = n_block_;

  auto apply_scalar_op = [&](const ModuleVector& v) {
    ModuleVector out = zero_vector(space_);
    for (int r = 0; r < space_.rank; ++r)
      for (int c = 0; c < space_.rank; ++c)
        if (scalar_op_(r, c) != 0.0)
          out.entries[r] = out.entries[r] + Complex(scalar_op_(r, c), 0.0) * v.entries[c];
    return out;
  };

  ModuleVector tx = apply_scalar_op(pair.target);
  Vector tx_img = state_image(tx, f);
  const double f_xx = state_image(pair.target, f).squaredNorm();

  double best = -1.0;
  auto consider = [&](const ModuleVector& y) {
    double nrm = module_norm(y);
    if (nrm <= 0) return;
    Vector img = state_image((1.0 / nrm) * y, f);
    double f_yy = img.squaredNorm();
    if (f_yy < k - kAdmissibleSlack) return;
    double num = std::norm(tx_img.dot(img));
    best = std::max(best, num / (f_xx * f_yy));
  };

  consider(pair.target);
  consider(apply_scalar_op(pair.target));  // image stays inside Y here
  for (int slot : slots_)
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        ModuleVector y = zero_vector(space_);
        y.entries[slot].blocks[0](p, q) = 1.0;
        consider(y);
      }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < random_candidates; ++i) {
    ModuleVector y = zero_vector(space_);
    for (int slot : slots_)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) y.entries[slot].blocks[0](p, q) = Complex(gauss(rng), gauss(rng));
    consider(y);
  }
  return best < 0 ? 0.0 : best;
}

long TruncatedFamily::right_radical_dim() const {
  const long ny = static_cast<long>(slots_.size());
  Eigen::MatrixXd compressed(ny, ny);
  for (long r = 0; r < ny; ++r)
    for (long c = 0; c < ny; ++c) compressed(r, c) = scalar_op_(slots_[r], slots_[c]);
  long rank = rank_of(compressed.cast<Complex>());
  return (ny - rank) * static_cast<long>(n_block_) * static_cast<long>(n_block_);
}

SplineProblem TruncatedFamily::problem(int j, double tol) const {
  if (j < 1 || j > order_) throw ValidationError("designated index out of range");
  std::vector<std::vector<AlgebraElement>> entries(
      space_.rank, std::vector<AlgebraElement>(space_.rank, zero_element(space_.spec)));
  for (int r = 0; r < space_.rank; ++r)
    for (int c = 0; c < space_.rank; ++c)
      if (scalar_op_(r, c) != 0.0)
        entries[r][c] = Complex(scalar_op_(r, c), 0.0) * identity_element(space_.spec);
  SesquilinearForm b = form_from_operator(space_, std::move(entries));
  std::vector<ModuleVector> gens;
  for (int slot : slots_) gens.push_back(module_basis_vector(space_, slot));
  Submodule y = submodule_from_generators(space_, gens);
  return {space_, std::move(y), std::move(b), pairs_[j - 1].target, tol};
}

TruncatedFamily truncated_counterexample(int n_block, int order) {
  return TruncatedFamily(n_block, order);
}

}  // namespace cspline
