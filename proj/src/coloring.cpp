#include "qgraph/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qgraph/homgame.hpp"

namespace qgraph {

QuantumGraph complete_quantum_graph(const VnAlgebra& m) {
  QuantumGraph g{m.n(), m, {}, false};
  for (Index i = 0; i < m.n(); ++i)
    for (Index j = 0; j < m.n(); ++j) g.s_basis.push_back(matrix_unit(m.n(), i, j));
  return g;
}

BlockStrategy teleport_coloring(Index d, Index k) {
  if (d < 1 || k < 1) throw ShapeError("teleport_coloring: d and k must be >= 1");
  const Index n = d * k;
  const CMatrix id = identity(d);
  BlockStrategy s{n, k * k, TracialAncilla::matrix_block(n), {}};
  for (Index a = 0; a < k; ++a)
    for (Index b = 0; b < k; ++b) {
      CMatrix p = CMatrix::Zero(n * n, n * n);
      for (Index x = 0; x < k; ++x)
        for (Index y = 0; y < k; ++y) {
          const cplx phase = root_of_unity(a * (x - y), k) / static_cast<double>(k);
          p += phase * kron(kron(id, matrix_unit(k, (b + x) % k, (b + y) % k)), kron(id, matrix_unit(k, x, y)));
        }
      s.projections.push_back(std::move(p));
    }
  return s;
}

BlockStrategy shift_multiply_coloring(const VnAlgebra& m) {
  const auto& blocks = m.blocks();
  Index d = 1;
  for (const auto& b : blocks) d = std::lcm(d, b.dim);
  const Index n = m.n();

  BlockStrategy s{n, m.dim(), TracialAncilla::matrix_block(d), {}};
  for (std::size_t r = 0; r < blocks.size(); ++r) {
    const auto [nr, kr] = blocks[r];
    const CMatrix id_dr = identity(d / kr);
    for (Index a = 0; a < kr; ++a)
      for (Index b = 0; b < kr; ++b) {
        CMatrix p = CMatrix::Zero(n * d, n * d);
        for (Index x = 0; x < nr; ++x)
          for (Index i = 0; i < kr; ++i)
            for (Index j = 0; j < kr; ++j) {
              const Index row = m.offset(r) + x * kr + i;
              const Index col = m.offset(r) + x * kr + j;
              p.block(row * d, col * d, d, d) = root_of_unity(a * (i - j), kr) / static_cast<double>(kr) *
                                                kron(id_dr, matrix_unit(kr, (i + b) % kr, (j + b) % kr));
            }
        s.projections.push_back(m.from_canonical(p, d));
      }
  }
  return s;
}

BlockStrategy abelian_loc_coloring(const VnAlgebra& m) {
  if (!m.abelian()) throw DomainError("abelian_loc_coloring: algebra is not abelian");
  BlockStrategy s{m.n(), m.dim(), TracialAncilla::matrix_block(1), m.central_projections()};
  return s;
}

double loc_residual(const BlockStrategy& s) {
  s.check_shapes();
  const Index d = s.ancilla_dim();
  MatrixSpan span(d, d, 1e-12);
  for (Index a = 0; a < s.c; ++a)
    for (Index i = 0; i < s.n; ++i)
      for (Index j = 0; j < s.n; ++j) {
        const CMatrix e = s.cell(a, i, j);
        span.add(e);
        span.add(e.adjoint());
      }
  return max_commutator(span.basis(), span.basis());
}

RigidityReport rigidity_check(const BlockStrategy& s, const VnAlgebra& m, Tolerance tol) {
  const GameInstance inst{complete_quantum_graph(m), complete_graph(static_cast<int>(s.c))};
  const Report coloring = verify_structural(inst, s, tol);
  if (!coloring.pass) throw DomainError("rigidity_check: strategy is not a coloring of the complete quantum graph");

  RigidityReport out;
  out.report.add(make_check("coloring", coloring.worst_residual(), tol.eps));
  const Index d = s.ancilla_dim();
  const auto& blocks = m.blocks();
  const double dim_m = static_cast<double>(m.dim());
  const CMatrix id = identity(d);

  double idem = 0.0, block_sum = 0.0, total = 0.0, plancherel_dev = 0.0, ident = 0.0;
  Witness idem_w, plan_w, ident_w, block_w;
  std::vector<CMatrix> sums(blocks.size(), CMatrix::Zero(d, d));
  CMatrix all = CMatrix::Zero(d, d);
  for (Index a = 0; a < s.c; ++a) {
    const CMatrix p = m.to_canonical(s.projections[static_cast<std::size_t>(a)], d);
    std::vector<CMatrix> rb;
    CMatrix ra = CMatrix::Zero(d, d);
    for (std::size_t r = 0; r < blocks.size(); ++r) {
      const auto [nr, kr] = blocks[r];
      CMatrix tr = CMatrix::Zero(d, d);
      for (Index i = 0; i < nr * kr; ++i) {
        const Index row = (m.offset(r) + i) * d;
        tr += p.block(row, row, d, d);
      }
      const CMatrix rr = static_cast<double>(kr) / static_cast<double>(nr) * tr;
      const double e = (rr * rr - rr).norm();
      if (e > idem) idem = e, idem_w = {static_cast<int>(a), -1, static_cast<int>(r)};
      sums[r] += rr;
      ra += rr;
      rb.push_back(rr);
    }
    all += ra;
    out.psi.push_back(ra / dim_m);
    out.r_blocks.push_back(std::move(rb));
    out.r_total.push_back(ra);
  }
  for (std::size_t r = 0; r < blocks.size(); ++r) {
    const double kr = static_cast<double>(blocks[r].dim);
    const double e = (sums[r] - kr * kr * id).norm();
    if (e > block_sum) block_sum = e, block_w = {-1, -1, static_cast<int>(r)};
  }
  total = (all - dim_m * id).norm();
  out.report.add(make_check("idempotent", idem, tol.eps, idem_w));
  out.report.add(make_check("block_sum", block_sum, tol.eps, block_w));
  out.report.add(make_check("total", total, tol.eps));

  if (s.c == m.dim()) {
    for (Index a = 0; a < s.c; ++a) {
      const double e = (out.psi[static_cast<std::size_t>(a)] - id / dim_m).norm();
      if (e > plancherel_dev) plancherel_dev = e, plan_w = {static_cast<int>(a), -1, -1};
      const double f = (out.r_total[static_cast<std::size_t>(a)] - id).norm();
      if (f > ident) ident = f, ident_w = {static_cast<int>(a), -1, -1};
    }
    out.report.add(make_check("plancherel", plancherel_dev, tol.eps, plan_w));
    out.report.add(make_check("identity", ident, tol.eps, ident_w));
  }
  return out;
}

std::optional<int> BoundsReport::best(const std::string& model) const {
  std::optional<int> b;
  for (const auto& x : bounds) {
    // A loc strategy is also a q strategy.
    if (x.model != model && !(model == "q" && x.model == "loc")) continue;
    if (!x.verification.pass) continue;
    if (!b || x.colors < *b) b = x.colors;
  }
  return b;
}

std::optional<ClassicalGraph> as_classical(const QuantumGraph& g, Tolerance tol) {
  if (g.traceless) return std::nullopt;
  const Index n = g.n;
  const auto central = g.algebra.central_projections();
  if (static_cast<Index>(central.size()) != n) return std::nullopt;
  for (const auto& e : central) {
    bool unit = false;
    for (Index i = 0; i < n && !unit; ++i) unit = (e - matrix_unit(n, i, i)).norm() <= tol.eps;
    if (!unit) return std::nullopt;
  }
  const MatrixSpan span = s_span(g, tol);
  ClassicalGraph h{static_cast<int>(n), {}};
  std::size_t units = static_cast<std::size_t>(n);
  for (Index i = 0; i < n; ++i) {
    if (span.distance(matrix_unit(n, i, i)) > tol.eps) return std::nullopt;
    for (Index j = 0; j < n; ++j) {
      if (i == j || span.distance(matrix_unit(n, i, j)) > tol.eps) continue;
      ++units;
      if (i < j) h.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  if (units != span.dim() || units != static_cast<std::size_t>(n) + 2 * h.edges.size()) return std::nullopt;
  return h;
}

BoundsReport chromatic_bounds(const QuantumGraph& g, Tolerance tol) {
  if (!validate(g, tol).pass) throw DomainError("chromatic_bounds: input is not a quantum graph");
  const auto eb = edge_basis(g, tol);
  const VnAlgebra& m = g.algebra;
  BoundsReport out;

  auto add = [&](std::string model, std::string construction, BlockStrategy w, bool exact) {
    const GameInstance inst{g, complete_graph(static_cast<int>(w.c))};
    Report v = verify_structural(inst, eb, w, tol);
    out.bounds.push_back({std::move(model), static_cast<int>(w.c), std::move(construction), exact, std::move(w), std::move(v)});
  };

  add("q", "shift-multiply coloring of (M_n, M, M_n), restricted to S", shift_multiply_coloring(m), false);
  if (m.blocks().size() == 1) {
    const auto [nr, kr] = m.blocks().front();
    BlockStrategy t = teleport_coloring(nr, kr);
    if (m.unitary()) t = conjugate(t, *m.unitary());
    add("q", "teleportation coloring of the single block, restricted to S", std::move(t), false);
  }
  if (m.abelian()) {
    add("loc", "central projections of the abelian algebra", abelian_loc_coloring(m), false);
  } else {
    out.notes.push_back(
        "M is not abelian: no loc coloring of (M_n, M, M_n) exists (known result, not certified numerically)");
  }

  out.classical = as_classical(g, tol);
  if (out.classical && out.classical->vertices <= kOracleCap) {
    const int chi = chromatic_number(*out.classical);
    const auto map = find_homomorphism(*out.classical, complete_graph(chi));
    BlockStrategy w{g.n, chi, TracialAncilla::matrix_block(1), std::vector<CMatrix>(static_cast<std::size_t>(chi), CMatrix::Zero(g.n, g.n))};
    for (Index x = 0; x < g.n; ++x) w.projections[static_cast<std::size_t>((*map)[static_cast<std::size_t>(x)])](x, x) = 1.0;
    add("loc", "classical coloring of H with S = S_H (exhaustive search)", std::move(w), true);
    out.notes.push_back("S = S_H over D_n: chi_loc equals the classical chromatic number of H (" +
                        std::to_string(chi) + "), minimality certified by exhaustive search");
  } else if (out.classical) {
    out.notes.push_back("S = S_H over D_n but H exceeds the exhaustive-search cap; exact value not computed");
  }
  out.notes.push_back("lower bounds on chi_q are not certified numerically");
  return out;
}

}  // namespace qgraph
