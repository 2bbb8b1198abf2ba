#include "qgraph/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace qgraph {

VnAlgebra::VnAlgebra(std::vector<AlgebraBlock> blocks, std::optional<CMatrix> unitary, Tolerance tol)
    : blocks_(std::move(blocks)), unitary_(std::move(unitary)) {
  if (blocks_.empty()) throw ShapeError("VnAlgebra: at least one block is required");
  for (const auto& b : blocks_) {
    if (b.mult < 1 || b.dim < 1) throw ShapeError("VnAlgebra: block multiplicity and dimension must be >= 1");
    offsets_.push_back(n_);
    n_ += b.mult * b.dim;
  }
  if (unitary_) {
    if (unitary_->rows() != n_ || unitary_->cols() != n_)
      throw ShapeError("VnAlgebra: unitary size does not match sum of n_r k_r");
    if (unitary_defect(*unitary_) > tol.eps) throw DomainError("VnAlgebra: embedding matrix is not unitary");
  }
}

VnAlgebra VnAlgebra::full(Index n) { return VnAlgebra({{1, n}}); }

VnAlgebra VnAlgebra::diagonal(Index n) {
  return VnAlgebra(std::vector<AlgebraBlock>(static_cast<std::size_t>(n), AlgebraBlock{1, 1}));
}

Index VnAlgebra::dim() const {
  Index d = 0;
  for (const auto& b : blocks_) d += b.dim * b.dim;
  return d;
}

Index VnAlgebra::commutant_dim() const {
  Index d = 0;
  for (const auto& b : blocks_) d += b.mult * b.mult;
  return d;
}

bool VnAlgebra::abelian() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const AlgebraBlock& b) { return b.dim == 1; });
}

CMatrix VnAlgebra::to_canonical(const CMatrix& x) const {
  return unitary_ ? CMatrix(unitary_->adjoint() * x * *unitary_) : x;
}

CMatrix VnAlgebra::from_canonical(const CMatrix& x) const {
  return unitary_ ? CMatrix(*unitary_ * x * unitary_->adjoint()) : x;
}

CMatrix VnAlgebra::to_canonical(const CMatrix& x, Index ancilla) const {
  if (!unitary_) return x;
  const CMatrix w = kron(*unitary_, identity(ancilla));
  return w.adjoint() * x * w;
}

CMatrix VnAlgebra::from_canonical(const CMatrix& x, Index ancilla) const {
  if (!unitary_) return x;
  const CMatrix w = kron(*unitary_, identity(ancilla));
  return w * x * w.adjoint();
}

std::vector<CMatrix> VnAlgebra::basis() const {
  std::vector<CMatrix> out;
  for (std::size_t r = 0; r < blocks_.size(); ++r) {
    const auto [nr, kr] = blocks_[r];
    const double scale = 1.0 / std::sqrt(static_cast<double>(nr));
    for (Index i = 0; i < kr; ++i)
      for (Index j = 0; j < kr; ++j) {
        CMatrix e = CMatrix::Zero(n_, n_);
        e.block(offsets_[r], offsets_[r], nr * kr, nr * kr) = scale * kron(identity(nr), matrix_unit(kr, i, j));
        out.push_back(from_canonical(e));
      }
  }
  return out;
}

std::vector<CMatrix> VnAlgebra::central_projections() const {
  std::vector<CMatrix> out;
  for (std::size_t r = 0; r < blocks_.size(); ++r) {
    const Index size = blocks_[r].mult * blocks_[r].dim;
    CMatrix e = CMatrix::Zero(n_, n_);
    e.block(offsets_[r], offsets_[r], size, size) = identity(size);
    out.push_back(from_canonical(e));
  }
  return out;
}

std::vector<IrreducibleSubspace> VnAlgebra::irreducible_subspaces() const {
  std::vector<IrreducibleSubspace> out;
  for (std::size_t r = 0; r < blocks_.size(); ++r) {
    const auto [nr, kr] = blocks_[r];
    for (Index x = 0; x < nr; ++x) {
      CMatrix e = CMatrix::Zero(n_, n_);
      e.block(offsets_[r] + x * kr, offsets_[r] + x * kr, kr, kr) = identity(kr);
      out.push_back({r, x, from_canonical(e)});
    }
  }
  return out;
}

std::vector<CMatrix> commutant(const VnAlgebra& m) {
  std::vector<CMatrix> out;
  const auto& blocks = m.blocks();
  for (std::size_t r = 0; r < blocks.size(); ++r) {
    const auto [nr, kr] = blocks[r];
    const double scale = 1.0 / std::sqrt(static_cast<double>(kr));
    for (Index x = 0; x < nr; ++x)
      for (Index y = 0; y < nr; ++y) {
        CMatrix e = CMatrix::Zero(m.n(), m.n());
        e.block(m.offset(r), m.offset(r), nr * kr, nr * kr) = scale * kron(matrix_unit(nr, x, y), identity(kr));
        out.push_back(m.from_canonical(e));
      }
  }
  return out;
}

namespace {

CMatrix expand(const std::vector<CMatrix>& basis, const CMatrix& x) {
  CMatrix out = CMatrix::Zero(x.rows(), x.cols());
  for (const auto& b : basis) out += hs_inner(x, b) * b;
  return out;
}

}  // namespace

CMatrix project(const VnAlgebra& m, Subspace space, const CMatrix& x) {
  if (x.rows() != m.n() || x.cols() != m.n()) throw ShapeError("project: matrix does not match algebra dimension");
  switch (space) {
    case Subspace::algebra: return expand(m.basis(), x);
    case Subspace::commutant: return expand(commutant(m), x);
    case Subspace::commutant_perp: return x - expand(commutant(m), x);
  }
  return x;
}

double PlancherelTrace::operator()(const VnAlgebra& m, const CMatrix& x) const {
  if (x.rows() != m.n() || x.cols() != m.n()) throw ShapeError("plancherel: matrix does not match algebra dimension");
  const CMatrix c = m.to_canonical(x);
  cplx total = 0.0;
  for (std::size_t r = 0; r < weights.size(); ++r) {
    const Index size = m.blocks()[r].mult * m.blocks()[r].dim;
    total += weights[r] * c.block(m.offset(r), m.offset(r), size, size).trace();
  }
  return total.real();
}

PlancherelTrace plancherel(const VnAlgebra& m) {
  PlancherelTrace t;
  const double dim = static_cast<double>(m.dim());
  for (const auto& b : m.blocks())
    t.weights.push_back(static_cast<double>(b.dim) / (static_cast<double>(b.mult) * dim));
  return t;
}

// ---------------------------------------------------------------------------
// Structure recovery

namespace {

using Clusters = std::vector<std::vector<Index>>;

// Splits ascending eigenvalues into `groups` runs at the largest gaps.
// Empty result when the split is not clean (within-run spread not well
// below the smallest separating gap).
Clusters split_at_gaps(const RVector& vals, std::size_t groups) {
  const Index size = vals.size();
  if (groups == 0 || static_cast<Index>(groups) > size) return {};
  std::vector<Index> order(static_cast<std::size_t>(size - 1));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return vals(a + 1) - vals(a) > vals(b + 1) - vals(b); });
  std::vector<Index> cuts(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(groups - 1));
  std::sort(cuts.begin(), cuts.end());

  Clusters out;
  double min_cut = std::numeric_limits<double>::infinity();
  double max_spread = 0.0;
  Index start = 0;
  for (std::size_t c = 0; c <= cuts.size(); ++c) {
    const Index end = c < cuts.size() ? cuts[c] + 1 : size;
    std::vector<Index> run;
    for (Index i = start; i < end; ++i) run.push_back(i);
    max_spread = std::max(max_spread, vals(end - 1) - vals(start));
    if (c < cuts.size()) min_cut = std::min(min_cut, vals(end) - vals(end - 1));
    out.push_back(std::move(run));
    start = end;
  }
  if (groups > 1 && !(max_spread < 1e-3 * min_cut)) return {};
  return out;
}

CMatrix columns(const CMatrix& v, const std::vector<Index>& idx) {
  CMatrix out(v.rows(), static_cast<Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) out.col(static_cast<Index>(c)) = v.col(idx[c]);
  return out;
}

std::vector<CMatrix> hermitian_parts(const std::vector<CMatrix>& xs) {
  std::vector<CMatrix> out;
  for (const auto& x : xs) {
    out.push_back(0.5 * (x + x.adjoint()));
    out.push_back(cplx(0.0, -0.5) * (x - x.adjoint()));
  }
  return out;
}

template <class Rng>
CMatrix random_real_combination(const std::vector<CMatrix>& xs, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMatrix out = CMatrix::Zero(xs.front().rows(), xs.front().cols());
  for (const auto& x : xs) out += u(rng) * x;
  return out;
}

struct RecoveredBlock {
  AlgebraBlock shape;
  CMatrix isometry;  // n x (n_r k_r), canonical column order
  double key = 0.0;  // central eigenvalue, tie-breaker for ordering
};

}  // namespace

NormalForm normal_form(const std::vector<CMatrix>& generators, Tolerance tol) {
  if (generators.empty()) throw ShapeError("normal_form: no generators");
  const Index n = generators.front().rows();
  for (const auto& g : generators)
    if (g.rows() != n || g.cols() != n) throw ShapeError("normal_form: generators must be square of equal size");

  const double structural = std::max(std::sqrt(tol.eps), 1e-7);

  // *-closure of the generators under products.
  MatrixSpan span(n, n, 10.0 * tol.eps);
  for (const auto& g : generators) {
    span.add(g);
    span.add(g.adjoint());
  }
  if (span.dim() == 0) throw DomainError("normal_form: generators span the zero space");
  for (;;) {
    const std::size_t before = span.dim();
    const auto current = span.basis();
    for (const auto& x : current)
      for (const auto& y : current) span.add(x * y);
    if (span.dim() == before) break;
  }
  if (span.distance(identity(n)) > structural * std::sqrt(static_cast<double>(n)))
    throw DomainError("normal_form: generated algebra does not contain the identity (degenerate)");

  const auto& basis = span.basis();
  const auto m = static_cast<Index>(basis.size());

  // Center: coefficient vectors x with sum_i x_i [B_i, B_j] = 0 for all j.
  std::vector<CMatrix> comm(static_cast<std::size_t>(m * m));
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) comm[i * m + j] = basis[i] * basis[j] - basis[j] * basis[i];
  CMatrix gram = CMatrix::Zero(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index l = i; l < m; ++l) {
      cplx s = 0.0;
      for (Index j = 0; j < m; ++j) s += hs_inner(comm[l * m + j], comm[i * m + j]);
      gram(i, l) = s;
      gram(l, i) = std::conj(s);
    }
  const auto geig = hermitian_eigen(gram);
  const double gscale = std::max(1.0, geig.values.maxCoeff());
  std::vector<CMatrix> center;
  for (Index t = 0; t < m; ++t) {
    if (geig.values(t) > 1e-10 * gscale) continue;
    CMatrix z = CMatrix::Zero(n, n);
    for (Index i = 0; i < m; ++i) z += geig.vectors(i, t) * basis[i];
    center.push_back(z);
  }
  const std::size_t n_blocks = center.size();
  if (n_blocks == 0) throw DomainError("normal_form: empty center");
  const auto center_herm = hermitian_parts(center);

  std::mt19937_64 rng(0x5eedULL);
  std::vector<RecoveredBlock> recovered;
  bool ok = false;
  for (int attempt = 0; attempt < 8 && !ok; ++attempt) {
    recovered.clear();
    const CMatrix h = random_real_combination(center_herm, rng);
    const auto eig = hermitian_eigen(h);
    const auto clusters = split_at_gaps(eig.values, n_blocks);
    if (clusters.empty()) continue;

    ok = true;
    for (const auto& cl : clusters) {
      const CMatrix v = columns(eig.vectors, cl);
      const Index rank = v.cols();

      MatrixSpan local(rank, rank, 10.0 * tol.eps);
      for (const auto& b : basis) local.add(v.adjoint() * b * v);
      const auto k = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(local.dim()))));
      if (k * k != static_cast<Index>(local.dim()) || rank % k != 0) {
        ok = false;
        break;
      }
      const Index mult = rank / k;

      CMatrix cols(rank, rank);
      bool block_ok = false;
      for (int inner = 0; inner < 8 && !block_ok; ++inner) {
        // Minimal projections from a generic self-adjoint element.
        const auto leig = hermitian_eigen(random_real_combination(hermitian_parts(local.basis()), rng));
        const auto minimal = split_at_gaps(leig.values, static_cast<std::size_t>(k));
        if (minimal.empty() ||
            std::any_of(minimal.begin(), minimal.end(), [&](const auto& c) { return static_cast<Index>(c.size()) != mult; }))
          continue;
        std::vector<CMatrix> f;
        for (const auto& c : minimal) f.push_back(columns(leig.vectors, c));

        // Matrix units e_{1j} from a generic element x: f_1 x f_j.
        std::normal_distribution<double> g(0.0, 1.0);
        CMatrix x = CMatrix::Zero(rank, rank);
        for (const auto& b : local.basis()) x += cplx(g(rng), g(rng)) * b;
        std::vector<CMatrix> units{f[0]};
        block_ok = true;
        for (Index j = 1; j < k; ++j) {
          const CMatrix w = f[0].adjoint() * x * f[static_cast<std::size_t>(j)];
          const double alpha = w.norm() / std::sqrt(static_cast<double>(mult));
          if (alpha < structural) {
            block_ok = false;
            break;
          }
          units.push_back(f[static_cast<std::size_t>(j)] * w.adjoint() / alpha);
        }
        if (!block_ok) continue;
        for (Index copy = 0; copy < mult; ++copy)
          for (Index j = 0; j < k; ++j) cols.col(copy * k + j) = units[static_cast<std::size_t>(j)].col(copy);
      }
      if (!block_ok) {
        ok = false;
        break;
      }
      recovered.push_back({{mult, k}, v * cols, eig.values(cl.front())});
    }
  }
  if (!ok) throw DomainError("normal_form: could not resolve the block structure of the generated algebra");

  std::stable_sort(recovered.begin(), recovered.end(), [](const RecoveredBlock& a, const RecoveredBlock& b) {
    if (a.shape.dim != b.shape.dim) return a.shape.dim < b.shape.dim;
    if (a.shape.mult != b.shape.mult) return a.shape.mult < b.shape.mult;
    return a.key < b.key;
  });

  std::vector<AlgebraBlock> blocks;
  CMatrix u(n, n);
  Index col = 0;
  for (const auto& rb : recovered) {
    blocks.push_back(rb.shape);
    u.middleCols(col, rb.isometry.cols()) = rb.isometry;
    col += rb.isometry.cols();
  }
  if (col != n) throw DomainError("normal_form: recovered blocks do not exhaust C^n");

  VnAlgebra canonical(blocks);
  const auto cbasis = canonical.basis();
  for (const auto& gen : generators) {
    const CMatrix c = u.adjoint() * gen * u;
    if ((c - expand(cbasis, c)).norm() > structural * std::max(1.0, gen.norm()))
      throw DomainError("normal_form: generators do not map into the recovered canonical form");
  }
  return {VnAlgebra(blocks, u, Tolerance(std::max(tol.eps, 1e-10))), u};
}

}  // namespace qgraph
