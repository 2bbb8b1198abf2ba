#include "qgraph/homgame.hpp"

#include <algorithm>
#include <cmath>

#include "qgraph/correlation.hpp"

namespace qgraph {

namespace {

void require_match(const GameInstance& inst, const BlockStrategy& s) {
  inst.target.check();
  if (s.n != inst.source.n) throw ShapeError("strategy input dimension differs from the source graph");
  if (s.c != inst.target.vertices) throw ShapeError("strategy output count differs from the target vertex count");
}

Check pvm_check(const BlockStrategy& s, Tolerance tol) {
  s.check_shapes(tol);
  const auto m = check_measurement(s.projections, tol);
  return make_check("pvm", std::max({m.hermiticity, m.positivity, m.completeness, m.idempotence, m.orthogonality}),
                    tol.eps, {m.worst_a, m.worst_b, -1});
}

// max ||P_a (Y (x) 1) P_b|| over Y in `ys` and non-adjacent (a, b).
Check forbidden_products(const char* name, const std::vector<CMatrix>& ys, const BlockStrategy& s,
                         const std::vector<std::vector<bool>>& allowed, Tolerance tol) {
  const CMatrix id = identity(s.ancilla_dim());
  double worst = 0.0;
  Witness w;
  for (std::size_t y = 0; y < ys.size(); ++y) {
    const CMatrix yy = kron(ys[y], id);
    for (Index a = 0; a < s.c; ++a) {
      const CMatrix left = s.projections[static_cast<std::size_t>(a)] * yy;
      for (Index b = 0; b < s.c; ++b) {
        if (allowed[a][b]) continue;
        const double r = (left * s.projections[static_cast<std::size_t>(b)]).norm();
        if (r > worst) worst = r, w = {static_cast<int>(a), static_cast<int>(b), static_cast<int>(y)};
      }
    }
  }
  return make_check(name, worst, tol.eps, w);
}

std::vector<std::vector<bool>> edge_allowed(const ClassicalGraph& g) { return g.adjacency(); }

std::vector<std::vector<bool>> diagonal_allowed(Index c) {
  std::vector<std::vector<bool>> d(static_cast<std::size_t>(c), std::vector<bool>(c, false));
  for (Index a = 0; a < c; ++a) d[a][a] = true;
  return d;
}

}  // namespace

Report verify_structural(const GameInstance& inst, const BlockStrategy& s, Tolerance tol) {
  return verify_structural(inst, edge_basis(inst.source, tol), s, tol);
}

Report verify_structural(const GameInstance& inst, const EdgeBasis& eb, const BlockStrategy& s, Tolerance tol) {
  require_match(inst, s);
  Report rep;
  rep.add(pvm_check(s, tol));

  const auto comm = commutant(inst.source.algebra);
  const CMatrix id = identity(s.ancilla_dim());
  double worst = 0.0;
  Witness w;
  for (std::size_t k = 0; k < comm.size(); ++k) {
    const CMatrix a_op = kron(comm[k], id);
    for (Index a = 0; a < s.c; ++a) {
      const auto& p = s.projections[static_cast<std::size_t>(a)];
      const double r = (p * a_op - a_op * p).norm();
      if (r > worst) worst = r, w = {static_cast<int>(a), -1, static_cast<int>(k)};
    }
  }
  rep.add(make_check("membership", worst, tol.eps, w));
  rep.add(forbidden_products("adjacency", eb.of_kind(EdgeKind::adjacency), s, edge_allowed(inst.target), tol));
  return rep;
}

Report verify_operational(const GameInstance& inst, const BlockStrategy& s, Tolerance tol) {
  return verify_operational(inst, edge_basis(inst.source, tol), s, tol);
}

Report verify_operational(const GameInstance& inst, const EdgeBasis& eb, const BlockStrategy& s, Tolerance tol) {
  require_match(inst, s);
  Report rep;
  rep.add(pvm_check(s, tol));

  const auto adj = inst.target.adjacency();
  auto rule = [&](const char* name, EdgeKind kind, auto forbidden) {
    double worst = 0.0;
    Witness w;
    int idx = 0;
    for (const auto& e : eb.elements) {
      if (e.kind != kind) continue;
      const auto p = outcome_probability(s, e.y, tol);
      for (Index a = 0; a < s.c; ++a)
        for (Index b = 0; b < s.c; ++b)
          if (forbidden(a, b)) {
            const double r = std::sqrt(std::max(0.0, p(a, b)));
            if (r > worst) worst = r, w = {static_cast<int>(a), static_cast<int>(b), idx};
          }
      ++idx;
    }
    rep.add(make_check(name, worst, tol.eps, w));
  };
  rule("same_vertex_rule", EdgeKind::same_vertex, [](Index a, Index b) { return a != b; });
  rule("adjacency_rule", EdgeKind::adjacency, [&](Index a, Index b) { return !adj[a][b]; });
  return rep;
}

Report check_game_algebra_rep(const GameInstance& inst, const BlockStrategy& s, Tolerance tol) {
  require_match(inst, s);
  s.check_shapes(tol);
  Report rep;

  double worst = 0.0;
  Witness w;
  CMatrix total = CMatrix::Zero(s.projections.front().rows(), s.projections.front().cols());
  for (Index a = 0; a < s.c; ++a) {
    const auto& p = s.projections[static_cast<std::size_t>(a)];
    total += p;
    const double r = std::max(hermitian_defect(p), (p * p - p).norm());
    if (r > worst) worst = r, w = {static_cast<int>(a), -1, -1};
  }
  rep.add(make_check("projection", worst, tol.eps, w));
  rep.add(make_check("sum", (total - identity(total.rows())).norm(), tol.eps));

  const auto eb = edge_basis(inst.source, tol);
  rep.add(forbidden_products("adjacency", eb.of_kind(EdgeKind::adjacency), s, edge_allowed(inst.target), tol));
  rep.add(forbidden_products("commutant", commutant(inst.source.algebra), s, diagonal_allowed(s.c), tol));
  return rep;
}

ChannelRep extract_channel(const GameInstance& inst, const BlockStrategy& s, Tolerance tol) {
  require_match(inst, s);
  s.check_shapes(tol);
  if (!check_measurement(s.projections, tol).is_pvm) throw DomainError("extract_channel: strategy is not a PVM");
  const Index dim = s.projections.front().rows();

  ChannelRep out;
  for (Index a = 0; a < s.c; ++a) {
    const auto eig = hermitian_eigen(s.projections[static_cast<std::size_t>(a)]);
    for (Index k = 0; k < dim; ++k) {
      const double lam = eig.values(k);
      if (std::min(std::abs(lam), std::abs(lam - 1.0)) > tol.eps)
        throw DomainError("extract_channel: projection eigenvalue is not in {0, 1}");
      if (lam <= 0.5) continue;
      CMatrix f = CMatrix::Zero(s.c, dim);
      f.row(a) = eig.vectors.col(k).adjoint();
      out.kraus.push_back(std::move(f));
      out.outcome.push_back(static_cast<int>(a));
      out.vectors.push_back(eig.vectors.col(k));
    }
  }

  CMatrix sum = CMatrix::Zero(dim, dim);
  for (const auto& f : out.kraus) sum += f.adjoint() * f;
  out.report.add(make_check("completeness", (sum - identity(dim)).norm(), tol.eps));

  // Choi = sum_F v_F v_F^* with v_F = sum_p e_p (x) F e_p.
  out.choi = CMatrix::Zero(dim * s.c, dim * s.c);
  for (const auto& f : out.kraus) {
    CVector v = CVector::Zero(dim * s.c);
    for (Index p = 0; p < dim; ++p) v.segment(p * s.c, s.c) = f.col(p);
    out.choi += v * v.adjoint();
  }
  const double neg = std::max(0.0, -hermitian_eigen(out.choi).values.minCoeff());
  out.report.add(make_check("choi_psd", std::max(neg, hermitian_defect(out.choi)), tol.eps));

  const auto eb = edge_basis(inst.source, tol);
  const auto adj = inst.target.adjacency();
  CMatrix u(dim, static_cast<Index>(out.vectors.size()));
  for (std::size_t i = 0; i < out.vectors.size(); ++i) u.col(static_cast<Index>(i)) = out.vectors[i];
  const CMatrix id = identity(s.ancilla_dim());

  auto subset = [&](const char* name, EdgeKind kind, auto allowed) {
    double worst = 0.0;
    Witness w;
    int idx = 0;
    for (const auto& e : eb.elements) {
      if (e.kind != kind) continue;
      const CMatrix m = u.adjoint() * kron(e.y, id) * u;
      for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) {
          const int a = out.outcome[static_cast<std::size_t>(i)];
          const int b = out.outcome[static_cast<std::size_t>(j)];
          if (allowed(a, b)) continue;
          const double r = std::abs(m(i, j));
          if (r > worst) worst = r, w = {a, b, idx};
        }
      ++idx;
    }
    out.report.add(make_check(name, worst, tol.eps, w));
  };
  subset("adjacency_subset", EdgeKind::adjacency, [&](int a, int b) { return static_cast<bool>(adj[a][b]); });
  subset("same_vertex_subset", EdgeKind::same_vertex, [](int a, int b) { return a == b; });
  return out;
}

ComposeResult compose_reps(const QuantumGraph& source, const BlockStrategy& p,
                           const std::vector<std::vector<CMatrix>>& f, const TracialAncilla& fb, Tolerance tol) {
  if (!check_block_strategy(p, tol).pass) throw DomainError("compose_reps: input strategy is not a valid PVM");
  fb.check(tol);
  const Index c = p.c;
  if (static_cast<Index>(f.size()) != c) throw ShapeError("compose_reps: f must have one family per input color");
  const auto r = static_cast<Index>(f.front().size());
  if (r < 1) throw ShapeError("compose_reps: empty target color set");
  const Index db = fb.dim();
  for (const auto& fa : f) {
    if (static_cast<Index>(fa.size()) != r) throw ShapeError("compose_reps: families differ in target color count");
    for (const auto& m : fa)
      if (m.rows() != db || m.cols() != db) throw ShapeError("compose_reps: f operator size differs from the ancilla");
  }

  // Hom(K_c, K_r) relations.
  double worst = 0.0;
  for (Index a = 0; a < c; ++a) {
    CMatrix total = CMatrix::Zero(db, db);
    for (Index v = 0; v < r; ++v) {
      const auto& m = f[a][v];
      total += m;
      worst = std::max({worst, hermitian_defect(m), (m * m - m).norm(), fb.off_block(m)});
      for (Index b = 0; b < c; ++b)
        if (b != a) worst = std::max(worst, (m * f[b][v]).norm());
    }
    worst = std::max(worst, (total - identity(db)).norm());
  }
  if (worst > tol.eps) throw DomainError("compose_reps: f does not satisfy the Hom(K_c, K_r) relations");

  // Tensor ancilla, re-indexed so that each block (s, t) is contiguous.
  const Index da = p.ancilla_dim();
  TracialAncilla anc;
  std::vector<Index> perm(static_cast<std::size_t>(da * db));
  Index pos = 0;
  for (std::size_t s = 0; s < p.ancilla.block_dims.size(); ++s)
    for (std::size_t t = 0; t < fb.block_dims.size(); ++t) {
      const Index ds = p.ancilla.block_dims[s], et = fb.block_dims[t];
      anc.block_dims.push_back(ds * et);
      anc.trace_weights.push_back(p.ancilla.trace_weights[s] * fb.trace_weights[t]);
      for (Index i = 0; i < ds; ++i)
        for (Index j = 0; j < et; ++j) perm[static_cast<std::size_t>((p.ancilla.offset(s) + i) * db + fb.offset(t) + j)] = pos++;
    }

  const Index dd = da * db;
  BlockStrategy out{p.n, r, anc, {}};
  for (Index v = 0; v < r; ++v) {
    CMatrix q = CMatrix::Zero(p.n * dd, p.n * dd);
    for (Index a = 0; a < c; ++a) q += kron(p.projections[static_cast<std::size_t>(a)], f[a][v]);
    CMatrix permuted(q.rows(), q.cols());
    for (Index row = 0; row < q.rows(); ++row) {
      const Index pr = (row / dd) * dd + perm[static_cast<std::size_t>(row % dd)];
      for (Index col = 0; col < q.cols(); ++col)
        permuted(pr, (col / dd) * dd + perm[static_cast<std::size_t>(col % dd)]) = q(row, col);
    }
    out.projections.push_back(std::move(permuted));
  }
  GameInstance inst{source, complete_graph(static_cast<int>(r))};
  return {out, verify_structural(inst, out, tol)};
}

}  // namespace qgraph
