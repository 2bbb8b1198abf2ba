#include "qgraph/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qgraph {

TracialAncilla TracialAncilla::with_dims(std::vector<Index> dims) {
  TracialAncilla a{std::move(dims), {}};
  double total = 0.0;
  for (Index d : a.block_dims) total += static_cast<double>(d * d);
  for (Index d : a.block_dims) a.trace_weights.push_back(static_cast<double>(d * d) / total);
  return a;
}

TracialAncilla TracialAncilla::matrix_block(Index d) { return {{d}, {1.0}}; }

Index TracialAncilla::dim() const { return std::accumulate(block_dims.begin(), block_dims.end(), Index{0}); }

Index TracialAncilla::offset(std::size_t s) const {
  return std::accumulate(block_dims.begin(), block_dims.begin() + static_cast<std::ptrdiff_t>(s), Index{0});
}

void TracialAncilla::check(Tolerance tol) const {
  if (block_dims.empty()) throw ShapeError("ancilla: no blocks");
  if (block_dims.size() != trace_weights.size()) throw ShapeError("ancilla: block_dims and trace_weights differ in length");
  double total = 0.0;
  for (std::size_t s = 0; s < block_dims.size(); ++s) {
    if (block_dims[s] < 1) throw ShapeError("ancilla: block dimension must be >= 1");
    if (!(trace_weights[s] > 0.0)) throw DomainError("ancilla: trace weights must be positive");
    total += trace_weights[s];
  }
  if (std::abs(total - 1.0) > tol.eps) throw DomainError("ancilla: trace weights do not sum to 1");
}

cplx TracialAncilla::trace(const CMatrix& a) const {
  const Index d = dim();
  if (a.rows() != d || a.cols() != d) throw ShapeError("ancilla trace: size mismatch");
  cplx t = 0.0;
  Index off = 0;
  for (std::size_t s = 0; s < block_dims.size(); ++s) {
    const Index ds = block_dims[s];
    t += trace_weights[s] / static_cast<double>(ds) * a.block(off, off, ds, ds).trace();
    off += ds;
  }
  return t;
}

double TracialAncilla::off_block(const CMatrix& a) const {
  CMatrix r = a;
  Index off = 0;
  for (Index ds : block_dims) {
    r.block(off, off, ds, ds).setZero();
    off += ds;
  }
  return r.norm();
}

CMatrix BlockStrategy::cell(Index a, Index i, Index j) const {
  const Index d = ancilla_dim();
  return projections.at(static_cast<std::size_t>(a)).block(i * d, j * d, d, d);
}

void BlockStrategy::check_shapes(Tolerance tol) const {
  if (n < 1 || c < 1) throw ShapeError("strategy: n and c must be >= 1");
  ancilla.check(tol);
  if (static_cast<Index>(projections.size()) != c) throw ShapeError("strategy: expected c projections");
  const Index size = n * ancilla_dim();
  for (const auto& p : projections)
    if (p.rows() != size || p.cols() != size) throw ShapeError("strategy: projection size is not n*D");
}

Report check_block_strategy(const BlockStrategy& s, Tolerance tol) {
  s.check_shapes(tol);
  Report rep;
  const auto m = check_measurement(s.projections, tol);
  rep.add(make_check("pvm", std::max({m.hermiticity, m.positivity, m.completeness, m.idempotence, m.orthogonality}),
                     tol.eps, {m.worst_a, m.worst_b, -1}));
  double worst = 0.0;
  Witness w;
  for (Index a = 0; a < s.c; ++a)
    for (Index i = 0; i < s.n; ++i)
      for (Index j = 0; j < s.n; ++j) {
        const double r = s.ancilla.off_block(s.cell(a, i, j));
        if (r > worst) worst = r, w = {static_cast<int>(a), -1, static_cast<int>(i * s.n + j)};
      }
  rep.add(make_check("ancilla_blocks", worst, tol.eps, w));
  return rep;
}

BlockStrategy conjugate(const BlockStrategy& s, const CMatrix& u) {
  if (u.rows() != s.n || u.cols() != s.n) throw ShapeError("conjugate: unitary size differs from n");
  const CMatrix w = kron(u, identity(s.ancilla_dim()));
  BlockStrategy out = s;
  for (auto& p : out.projections) p = w * p * w.adjoint();
  return out;
}

void TensorStrategy::check_shapes() const {
  if (n < 1 || c < 1 || dim_a < 1 || dim_b < 1) throw ShapeError("tensor strategy: dimensions must be >= 1");
  if (static_cast<Index>(alice.size()) != c || static_cast<Index>(bob.size()) != c)
    throw ShapeError("tensor strategy: expected c operators per party");
  for (const auto& p : alice)
    if (p.rows() != n * dim_a || p.cols() != n * dim_a) throw ShapeError("tensor strategy: Alice operator size");
  for (const auto& q : bob)
    if (q.rows() != n * dim_b || q.cols() != n * dim_b) throw ShapeError("tensor strategy: Bob operator size");
  if (state.size() != dim_a * dim_b) throw ShapeError("tensor strategy: state length is not dim_a * dim_b");
}

CMatrix TensorStrategy::alice_cell(Index a, Index i, Index j) const {
  return alice.at(static_cast<std::size_t>(a)).block(i * dim_a, j * dim_a, dim_a, dim_a);
}

CMatrix TensorStrategy::bob_cell(Index b, Index k, Index l) const {
  return bob.at(static_cast<std::size_t>(b)).block(k * dim_b, l * dim_b, dim_b, dim_b);
}

namespace {

void require_povm(const std::vector<CMatrix>& q, Tolerance tol, const char* what) {
  if (q.empty()) throw ShapeError(std::string(what) + ": empty POVM");
  if (!check_measurement(q, tol).is_povm) throw DomainError(std::string(what) + ": input is not a POVM");
}

}  // namespace

std::vector<CMatrix> dilate_povm(const std::vector<CMatrix>& q, Tolerance tol) {
  require_povm(q, tol, "dilate_povm");
  const auto c = static_cast<Index>(q.size());
  const Index h = q.front().rows();

  CMatrix v(c * h, h);
  for (Index a = 0; a < c; ++a) v.middleRows(a * h, h) = psd_sqrt(q[static_cast<std::size_t>(a)], tol);

  // U = [[V, sqrt(I - V V^*)], [0, -V^*]] on (C^c (x) H) + H. V is an
  // isometry, so I - V V^* is a projection and its own square root; taking
  // the square root numerically would inflate roundoff near 0 to sqrt(eps).
  const Index size = (c + 1) * h;
  CMatrix u = CMatrix::Zero(size, size);
  u.topLeftCorner(c * h, h) = v;
  u.topRightCorner(c * h, c * h) = identity(c * h) - v * v.adjoint();
  u.bottomRightCorner(h, c * h) = -v.adjoint();

  std::vector<CMatrix> p;
  for (Index a = 0; a < c; ++a) {
    CMatrix e = CMatrix::Zero(size, size);
    const Index rows = a + 1 < c ? h : 2 * h;
    e.block(a * h, a * h, rows, rows) = identity(rows);
    p.push_back(u.adjoint() * e * u);
  }
  return p;
}

std::vector<CMatrix> dilate_block_povm(const std::vector<CMatrix>& q, Index n, Tolerance tol) {
  if (q.empty()) throw ShapeError("dilate_block_povm: empty POVM");
  if (n < 1 || q.front().rows() % n != 0) throw ShapeError("dilate_block_povm: operator size is not a multiple of n");
  const Index h = q.front().rows() / n;
  const auto c = static_cast<Index>(q.size());
  auto p = dilate_povm(q, tol);
  for (auto& m : p) m = canonical_shuffle(m, c + 1, n, h);
  return p;
}

CMatrix dilation_corner(Index c, Index h) {
  CMatrix v = CMatrix::Zero((c + 1) * h, h);
  v.topRows(h) = identity(h);
  return v;
}

CMatrix pvm_to_unitary(const std::vector<CMatrix>& p, Tolerance tol) {
  if (p.empty()) throw ShapeError("pvm_to_unitary: empty family");
  if (!check_measurement(p, tol).is_pvm) throw DomainError("pvm_to_unitary: input is not a PVM");
  const auto c = static_cast<long long>(p.size());
  CMatrix u = CMatrix::Zero(p.front().rows(), p.front().cols());
  for (long long a = 0; a < c; ++a) u += root_of_unity(a + 1, c) * p[static_cast<std::size_t>(a)];
  return u;
}

std::vector<CMatrix> unitary_to_pvm(const CMatrix& u, Index c, Tolerance tol) {
  require_square(u, "unitary_to_pvm");
  if (c < 1) throw ShapeError("unitary_to_pvm: c must be >= 1");
  if (unitary_defect(u) > tol.eps) throw DomainError("unitary_to_pvm: matrix is not unitary");
  std::vector<CMatrix> powers{identity(u.rows())};
  for (Index d = 1; d <= c; ++d) powers.push_back(powers.back() * u);
  if ((powers.back() - identity(u.rows())).norm() > tol.eps) throw DomainError("unitary_to_pvm: U^c != I");

  std::vector<CMatrix> p;
  for (Index a = 0; a < c; ++a) {
    CMatrix pa = CMatrix::Zero(u.rows(), u.cols());
    for (Index d = 1; d <= c; ++d) pa += root_of_unity(-(a + 1) * d, c) * powers[static_cast<std::size_t>(d)];
    p.push_back(pa / static_cast<double>(c));
  }
  return p;
}

double operator_norm(const CMatrix& a) {
  const RVector ev = hermitian_eigen(a.adjoint() * a).values;
  return std::sqrt(std::max(0.0, ev.maxCoeff()));
}

RoundedPvm round_almost_pvm(const std::vector<CMatrix>& p, Tolerance tol) {
  if (p.empty()) throw ShapeError("round_almost_pvm: empty family");
  RoundedPvm out;
  out.input = check_measurement(p, tol);
  const auto c = static_cast<Index>(p.size());
  const Index n = p.front().rows();

  CMatrix a = CMatrix::Zero(n, n);
  for (Index k = 0; k < c; ++k) a += static_cast<double>(k + 1) * p[static_cast<std::size_t>(k)];
  const auto eig = hermitian_eigen(a);

  out.projections.assign(static_cast<std::size_t>(c), CMatrix::Zero(n, n));
  for (Index i = 0; i < n; ++i) {
    const auto level = std::clamp<Index>(static_cast<Index>(std::llround(eig.values(i))), 1, c);
    out.projections[static_cast<std::size_t>(level - 1)] += eig.vectors.col(i) * eig.vectors.col(i).adjoint();
  }
  for (Index k = 0; k < c; ++k)
    out.distance = std::max(out.distance, operator_norm(out.projections[static_cast<std::size_t>(k)] -
                                                        p[static_cast<std::size_t>(k)]));
  return out;
}

TensorStrategy bob_from_alice(const BlockStrategy& s) {
  s.check_shapes();
  const Index d = s.ancilla_dim();
  TensorStrategy t{s.n, s.c, d, d, s.projections, {}, CVector::Zero(d * d)};
  for (const auto& p : s.projections) t.bob.push_back(p.conjugate());
  Index off = 0;
  for (std::size_t b = 0; b < s.ancilla.block_dims.size(); ++b) {
    const Index ds = s.ancilla.block_dims[b];
    const double amp = std::sqrt(s.ancilla.trace_weights[b] / static_cast<double>(ds));
    for (Index p = 0; p < ds; ++p) t.state((off + p) * d + off + p) = amp;
    off += ds;
  }
  return t;
}

}  // namespace qgraph
