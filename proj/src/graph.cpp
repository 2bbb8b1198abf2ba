#include "qgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qgraph {

namespace {

void require_shapes(const QuantumGraph& g) {
  if (g.n <= 0) throw ShapeError("quantum graph: n must be positive");
  if (g.algebra.n() != g.n) throw ShapeError("quantum graph: algebra dimension differs from n");
  if (g.s_basis.empty()) throw ShapeError("quantum graph: empty spanning set for S");
  for (const auto& y : g.s_basis)
    if (y.rows() != g.n || y.cols() != g.n) throw ShapeError("quantum graph: S element is not n x n");
}

}  // namespace

MatrixSpan s_span(const QuantumGraph& g, Tolerance tol) {
  require_shapes(g);
  MatrixSpan span(g.n, g.n, 10.0 * tol.eps);
  for (const auto& y : g.s_basis) span.add(y);
  return span;
}

Report validate(const QuantumGraph& g, Tolerance tol) {
  const MatrixSpan span = s_span(g, tol);
  Report rep;

  double worst = 0.0;
  Witness w;
  for (std::size_t i = 0; i < g.s_basis.size(); ++i) {
    const double r = span.distance(g.s_basis[i].adjoint());
    if (r > worst) worst = r, w = {-1, -1, static_cast<int>(i)};
  }
  rep.add(make_check("self_adjoint", worst, tol.eps, w));

  if (g.traceless) {
    worst = 0.0;
    w = {};
    for (std::size_t i = 0; i < g.s_basis.size(); ++i) {
      const double r = std::abs(g.s_basis[i].trace());
      if (r > worst) worst = r, w = {-1, -1, static_cast<int>(i)};
    }
    rep.add(make_check("traceless", worst, tol.eps, w));
  } else {
    rep.add(make_check("operator_system", span.distance(identity(g.n)), tol.eps));
  }

  const auto comm = commutant(g.algebra);
  worst = 0.0;
  w = {};
  for (std::size_t a = 0; a < comm.size(); ++a)
    for (std::size_t b = 0; b < comm.size(); ++b)
      for (std::size_t i = 0; i < g.s_basis.size(); ++i) {
        const double r = span.distance(comm[a] * g.s_basis[i] * comm[b]);
        if (r > worst) worst = r, w = {static_cast<int>(a), static_cast<int>(b), static_cast<int>(i)};
      }
  rep.add(make_check("bimodule", worst, tol.eps, w));
  return rep;
}

std::vector<CMatrix> EdgeBasis::of_kind(EdgeKind k) const {
  std::vector<CMatrix> out;
  for (const auto& e : elements)
    if (e.kind == k) out.push_back(e.y);
  return out;
}

std::size_t EdgeBasis::count(EdgeKind k) const {
  return static_cast<std::size_t>(
      std::count_if(elements.begin(), elements.end(), [k](const EdgeElement& e) { return e.kind == k; }));
}

EdgeBasis edge_basis(const QuantumGraph& g, Tolerance tol) {
  const Report rep = validate(g, tol);
  if (!rep.pass) throw DomainError("edge_basis: input is not a quantum graph");

  const MatrixSpan span = s_span(g, tol);
  const auto subspaces = g.algebra.irreducible_subspaces();
  const auto& blocks = g.algebra.blocks();

  std::vector<CMatrix> perp, comm;
  for (const auto& y : span.basis()) {
    comm.push_back(project(g.algebra, Subspace::commutant, y));
    perp.push_back(y - comm.back());
  }

  EdgeBasis out;
  for (std::size_t p = 0; p < subspaces.size(); ++p)
    for (std::size_t q = 0; q < subspaces.size(); ++q) {
      const auto& ep = subspaces[p].projection;
      const auto& eq = subspaces[q].projection;
      MatrixSpan local(g.n, g.n, 10.0 * tol.eps);

      // E_p M' E_q is one-dimensional when p, q are copies inside the same
      // block and zero otherwise.
      if (subspaces[p].block == subspaces[q].block) {
        if (!g.traceless) {
          const auto [nr, kr] = blocks[subspaces[p].block];
          CMatrix seed = CMatrix::Zero(g.n, g.n);
          const Index off = g.algebra.offset(subspaces[p].block);
          seed.block(off, off, nr * kr, nr * kr) =
              kron(matrix_unit(nr, subspaces[p].copy, subspaces[q].copy), identity(kr)) /
              std::sqrt(static_cast<double>(kr));
          local.add(g.algebra.from_canonical(seed));
        } else {
          for (const auto& c : comm) local.add(ep * c * eq);
        }
      }
      const std::size_t seeds = local.dim();
      for (const auto& y : perp) local.add(ep * y * eq);

      for (std::size_t i = 0; i < local.dim(); ++i)
        out.elements.push_back({local.basis()[i], i < seeds ? EdgeKind::same_vertex : EdgeKind::adjacency, p, q});
    }

  if (out.elements.size() != span.dim())
    throw DomainError("edge_basis: block decomposition does not reproduce dim S");
  for (const auto& e : out.elements)
    if (span.distance(e.y) > std::max(tol.eps, 1e-8))
      throw DomainError("edge_basis: constructed element lies outside S");
  return out;
}

namespace {

void require_basis(const std::optional<CMatrix>& basis, Index n, Tolerance tol) {
  if (!basis) return;
  if (basis->rows() != n || basis->cols() != n) throw ShapeError("vectorize: basis size mismatch");
  if (unitary_defect(*basis) > tol.eps) throw DomainError("vectorize: basis is not orthonormal");
}

}  // namespace

CVector vectorize(const CMatrix& y, const std::optional<CMatrix>& basis, Tolerance tol) {
  require_square(y, "vectorize");
  const Index n = y.rows();
  require_basis(basis, n, tol);
  const CMatrix coeff = basis ? CMatrix(basis->adjoint() * y * *basis) : y;
  CVector v(n * n);
  for (Index p = 0; p < n; ++p)
    for (Index q = 0; q < n; ++q) v(p * n + q) = coeff(p, q);
  return basis ? CVector(kron(*basis, *basis) * v) : v;
}

CMatrix devectorize(const CVector& v, Index n, const std::optional<CMatrix>& basis, Tolerance tol) {
  if (n <= 0 || v.size() != n * n) throw ShapeError("devectorize: vector length is not n^2");
  require_basis(basis, n, tol);
  const CVector w = basis ? CVector(kron(*basis, *basis).adjoint() * v) : v;
  CMatrix coeff(n, n);
  for (Index p = 0; p < n; ++p)
    for (Index q = 0; q < n; ++q) coeff(p, q) = w(p * n + q);
  return basis ? CMatrix(*basis * coeff * basis->adjoint()) : coeff;
}

CVector bell_state(Index n, const std::vector<Index>& subset) {
  if (subset.empty()) throw ShapeError("bell_state: empty index set");
  std::set<Index> s(subset.begin(), subset.end());
  if (s.size() != subset.size()) throw ShapeError("bell_state: repeated index");
  CVector v = CVector::Zero(n * n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(s.size()));
  for (Index j : s) {
    if (j < 0 || j >= n) throw ShapeError("bell_state: index out of range");
    v(j * n + j) = amp;
  }
  return v;
}

void ClassicalGraph::check() const {
  if (vertices < 0) throw ShapeError("graph: negative vertex count");
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= vertices || b >= vertices) throw ShapeError("graph: edge endpoint out of range");
    if (a == b) throw ShapeError("graph: loops are not allowed");
  }
}

bool ClassicalGraph::adjacent(int a, int b) const {
  return std::any_of(edges.begin(), edges.end(),
                     [&](const auto& e) { return (e.first == a && e.second == b) || (e.first == b && e.second == a); });
}

std::vector<std::vector<bool>> ClassicalGraph::adjacency() const {
  check();
  std::vector<std::vector<bool>> adj(static_cast<std::size_t>(vertices), std::vector<bool>(vertices, false));
  for (const auto& [a, b] : edges) adj[a][b] = adj[b][a] = true;
  return adj;
}

ClassicalGraph complete_graph(int c) {
  ClassicalGraph g{c, {}};
  for (int a = 0; a < c; ++a)
    for (int b = a + 1; b < c; ++b) g.edges.emplace_back(a, b);
  return g;
}

ClassicalGraph cycle_graph(int n) {
  ClassicalGraph g{n, {}};
  if (n < 3) throw ShapeError("cycle_graph: needs at least 3 vertices");
  for (int a = 0; a < n; ++a) g.edges.emplace_back(a, (a + 1) % n);
  return g;
}

QuantumGraph graph_operator_system(const ClassicalGraph& g) {
  const auto adj = g.adjacency();
  const Index n = g.vertices;
  if (n <= 0) throw ShapeError("graph_operator_system: empty graph");
  QuantumGraph q{n, VnAlgebra::diagonal(n), {}, false};
  for (Index i = 0; i < n; ++i) q.s_basis.push_back(matrix_unit(n, i, i));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i != j && adj[i][j]) q.s_basis.push_back(matrix_unit(n, i, j));
  return q;
}

double containment_residual(const QuantumGraph& s, const QuantumGraph& t, Tolerance tol) {
  if (s.n != t.n) throw ShapeError("containment_residual: ambient dimensions differ");
  const MatrixSpan target = s_span(t, tol);
  double worst = 0.0;
  for (const auto& y : s.s_basis) worst = std::max(worst, target.distance(y));
  return worst;
}

namespace {

bool extend(const std::vector<std::vector<bool>>& ga, const std::vector<std::vector<bool>>& ha,
            std::vector<int>& map, int v) {
  const int n = static_cast<int>(ga.size());
  if (v == n) return true;
  const int m = static_cast<int>(ha.size());
  for (int img = 0; img < m; ++img) {
    bool ok = true;
    for (int u = 0; u < v && ok; ++u)
      if (ga[u][v] && !ha[map[u]][img]) ok = false;
    if (!ok) continue;
    map[v] = img;
    if (extend(ga, ha, map, v + 1)) return true;
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> find_homomorphism(const ClassicalGraph& g, const ClassicalGraph& h, int cap) {
  if (g.vertices > cap) throw ShapeError("classical oracle: source graph exceeds the vertex cap");
  const auto ga = g.adjacency();
  const auto ha = h.adjacency();
  std::vector<int> map(static_cast<std::size_t>(g.vertices), -1);
  if (g.vertices > 0 && h.vertices == 0) return std::nullopt;
  if (extend(ga, ha, map, 0)) return map;
  return std::nullopt;
}

bool hom_exists(const ClassicalGraph& g, const ClassicalGraph& h, int cap) {
  return find_homomorphism(g, h, cap).has_value();
}

int chromatic_number(const ClassicalGraph& g, int cap) {
  if (g.vertices > cap) throw ShapeError("classical oracle: graph exceeds the vertex cap");
  for (int c = 0; c <= g.vertices; ++c)
    if (hom_exists(g, complete_graph(c), cap)) return c;
  return g.vertices;
}

}  // namespace qgraph
