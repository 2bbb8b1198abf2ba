#include <doctest.h>

#include "qgraph/coloring.hpp"
#include "qgraph/homgame.hpp"
#include "support.hpp"

using namespace qgraph;
using qtest::Rng;

namespace {

// P_a = sum of E_vv over f(v) = a, trivial ancilla.
BlockStrategy diagonal_strategy(Index n, Index c, const std::vector<int>& f) {
  BlockStrategy s{n, c, TracialAncilla::matrix_block(1), std::vector<CMatrix>(static_cast<std::size_t>(c), CMatrix::Zero(n, n))};
  for (Index v = 0; v < n; ++v) s.projections[static_cast<std::size_t>(f[static_cast<std::size_t>(v)])](v, v) = 1.0;
  return s;
}

// (span{I, E_ij : i != j}, M_n, M_n)
QuantumGraph identity_plus_offdiag(Index n) {
  std::vector<CMatrix> s{identity(n)};
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i != j) s.push_back(matrix_unit(n, i, j));
  return {n, VnAlgebra::full(n), s};
}

bool agree(const GameInstance& inst, const BlockStrategy& s) {
  return verify_structural(inst, s).pass == verify_operational(inst, s).pass;
}

}  // namespace

TEST_CASE("teleportation coloring wins against K_{k^2}") {
  for (auto [d, k] : std::vector<std::pair<Index, Index>>{{1, 2}, {2, 2}, {1, 3}}) {
    const auto s = teleport_coloring(d, k);
    const GameInstance inst{complete_quantum_graph(VnAlgebra({{d, k}})), complete_graph(static_cast<int>(k * k))};
    const auto st = verify_structural(inst, s);
    CHECK(st.pass);
    CHECK(st.worst_residual() <= 1e-10);
    for (const char* name : {"pvm", "membership", "adjacency"}) CHECK(st.find(name));
    const auto op = verify_operational(inst, s);
    CHECK(op.pass);
    for (const char* name : {"pvm", "same_vertex_rule", "adjacency_rule"}) CHECK(op.find(name));
    CHECK(check_game_algebra_rep(inst, s).pass);
  }
}

TEST_CASE("diagonal matrix-unit coloring of span{I, E_ij}") {
  for (Index n : {2, 3, 4}) {
    std::vector<int> f(static_cast<std::size_t>(n));
    std::iota(f.begin(), f.end(), 0);
    const auto s = diagonal_strategy(n, n, f);
    const GameInstance inst{identity_plus_offdiag(n), complete_graph(static_cast<int>(n))};
    CHECK(verify_structural(inst, s).pass);
    CHECK(verify_operational(inst, s).pass);
  }
}

TEST_CASE("single color loses whenever S has adjacency elements") {
  const auto g = graph_operator_system(cycle_graph(4));
  const BlockStrategy one{4, 1, TracialAncilla::matrix_block(1), {identity(4)}};
  const GameInstance inst{g, complete_graph(1)};
  const auto st = verify_structural(inst, one);
  CHECK_FALSE(st.pass);
  CHECK_FALSE(st.find("adjacency")->pass);
  REQUIRE(st.find("adjacency")->witness);
  CHECK(st.find("adjacency")->witness->a == 0);
  const auto op = verify_operational(inst, one);
  CHECK_FALSE(op.pass);
  CHECK_FALSE(op.find("adjacency_rule")->pass);
}

TEST_CASE("swapping two projections against a non-complete target") {
  const auto path = ClassicalGraph{3, {{0, 1}, {1, 2}}};
  const GameInstance inst{graph_operator_system(path), path};
  const auto good = diagonal_strategy(3, 3, {0, 1, 2});
  CHECK(verify_structural(inst, good).pass);
  auto swapped = good;
  std::swap(swapped.projections[0], swapped.projections[1]);
  const auto st = verify_structural(inst, swapped);
  const auto op = verify_operational(inst, swapped);
  CHECK_FALSE(st.pass);
  CHECK_FALSE(op.pass);
  CHECK(op.find("adjacency_rule")->max_residual > 0.1);
}

TEST_CASE("structural and operational verification agree on corruptions") {
  Rng rng(51);
  std::uniform_int_distribution<int> pick(0, 2);
  const VnAlgebra m({{1, 1}, {1, 2}});
  const GameInstance inst{complete_quantum_graph(m), complete_graph(5)};
  const auto base = shift_multiply_coloring(m);
  for (int t = 0; t < 30; ++t) {
    auto s = base;
    switch (pick(rng)) {
      case 0:
        std::swap(s.projections[0], s.projections[3]);
        break;
      case 1: {
        const CMatrix h = qtest::random_hermitian(s.projections[0].rows(), rng);
        s.projections[1] += 1e-3 * h / h.norm();
        break;
      }
      default:
        s = conjugate(s, qtest::random_unitary(m.n(), rng));
    }
    CHECK(agree(inst, s));
  }
  // Random strategies lose almost surely, and both paths see it.
  for (int t = 0; t < 10; ++t) {
    const auto s = qtest::random_block_strategy(3, 5, TracialAncilla::with_dims({2}), rng);
    CHECK_FALSE(verify_structural(inst, s).pass);
    CHECK(agree(inst, s));
  }
}

TEST_CASE("verification is covariant under unitary conjugation") {
  Rng rng(52);
  const auto h = cycle_graph(5);
  const auto g = graph_operator_system(h);
  const auto s = diagonal_strategy(5, 3, {0, 1, 0, 1, 2});
  const GameInstance inst{g, complete_graph(3)};
  const auto base = verify_structural(inst, s);
  CHECK(base.pass);

  const CMatrix u = qtest::random_unitary(5, rng);
  QuantumGraph gu{5, VnAlgebra(g.algebra.blocks(), u), {}};
  for (const auto& y : g.s_basis) gu.s_basis.push_back(u * y * u.adjoint());
  const GameInstance inst_u{gu, complete_graph(3)};
  const auto su = conjugate(s, u);
  const auto ru = verify_structural(inst_u, su);
  CHECK(ru.pass);
  CHECK(verify_operational(inst_u, su).pass);
  CHECK_FALSE(verify_structural(inst_u, s).pass);
}

TEST_CASE("game algebra relations") {
  const VnAlgebra m({{1, 2}});
  const GameInstance inst{complete_quantum_graph(m), complete_graph(4)};
  const auto s = teleport_coloring(1, 2);
  const auto rel = check_game_algebra_rep(inst, s);
  CHECK(rel.pass);
  CHECK(rel.find("adjacency")->max_residual == doctest::Approx(verify_structural(inst, s).find("adjacency")->max_residual));

  BlockStrategy zero = s;
  for (auto& p : zero.projections) p.setZero();
  const auto z = check_game_algebra_rep(inst, zero);
  CHECK_FALSE(z.find("sum")->pass);
  CHECK(z.find("projection")->pass);

  // Classical strategies over S_G satisfy e_{x,a} e_{y,b} = 0 exactly.
  const auto c5 = graph_operator_system(cycle_graph(5));
  const GameInstance classical{c5, complete_graph(3)};
  const auto r = check_game_algebra_rep(classical, diagonal_strategy(5, 3, {0, 1, 0, 1, 2}));
  CHECK(r.pass);
  CHECK(r.worst_residual() == 0.0);
  CHECK_FALSE(check_game_algebra_rep(classical, diagonal_strategy(5, 3, {0, 1, 0, 1, 0})).pass);
}

TEST_CASE("extract_channel") {
  const VnAlgebra m({{1, 1}, {1, 2}});
  const GameInstance inst{complete_quantum_graph(m), complete_graph(5)};
  const auto s = shift_multiply_coloring(m);
  const auto ch = extract_channel(inst, s);
  CHECK(ch.report.pass);
  for (const char* name : {"completeness", "choi_psd", "adjacency_subset", "same_vertex_subset"}) CHECK(ch.report.find(name));

  Index ranks = 0;
  for (const auto& p : s.projections) ranks += static_cast<Index>(std::lround(p.trace().real()));
  CHECK(static_cast<Index>(ch.kraus.size()) == ranks);

  const Index dim = s.projections[0].rows();
  CMatrix sum = CMatrix::Zero(dim, dim);
  for (const auto& f : ch.kraus) {
    CHECK(f.rows() == s.c);
    sum += f.adjoint() * f;
  }
  CHECK((sum - identity(dim)).norm() < 1e-10);

  std::vector<CMatrix> rebuilt(static_cast<std::size_t>(s.c), CMatrix::Zero(dim, dim));
  for (std::size_t i = 0; i < ch.vectors.size(); ++i)
    rebuilt[static_cast<std::size_t>(ch.outcome[i])] += ch.vectors[i] * ch.vectors[i].adjoint();
  for (std::size_t a = 0; a < rebuilt.size(); ++a) CHECK((rebuilt[a] - s.projections[a]).norm() < 1e-10);
  CHECK(hermitian_defect(ch.choi) < 1e-10);

  // Losing strategy: the subset conditions report the violation.
  auto swapped = diagonal_strategy(3, 3, {0, 1, 2});
  const auto path = ClassicalGraph{3, {{0, 1}, {1, 2}}};
  std::swap(swapped.projections[0], swapped.projections[1]);
  const auto bad = extract_channel({graph_operator_system(path), path}, swapped);
  CHECK_FALSE(bad.report.find("adjacency_subset")->pass);

  auto notpvm = s;
  notpvm.projections[0] *= 0.5;
  CHECK_THROWS_AS(extract_channel(inst, notpvm), DomainError);
}

TEST_CASE("compose_reps") {
  const VnAlgebra m({{1, 1}, {1, 2}});
  const auto g = complete_quantum_graph(m);
  const auto p = shift_multiply_coloring(m);
  const Index c = p.c;
  const auto one = TracialAncilla::matrix_block(1);

  // Identity homomorphism.
  std::vector<std::vector<CMatrix>> id(static_cast<std::size_t>(c), std::vector<CMatrix>(static_cast<std::size_t>(c), CMatrix::Zero(1, 1)));
  for (Index a = 0; a < c; ++a) id[a][a](0, 0) = 1.0;
  const auto same = compose_reps(g, p, id, one);
  CHECK(same.report.pass);
  for (std::size_t a = 0; a < p.projections.size(); ++a) CHECK((same.strategy.projections[a] - p.projections[a]).norm() == 0.0);

  // A non-scalar f over M_2: f_{a,v} = E_11 for v = a and E_22 for v = a+1 mod c.
  const auto two = TracialAncilla::matrix_block(2);
  std::vector<std::vector<CMatrix>> f(static_cast<std::size_t>(c), std::vector<CMatrix>(static_cast<std::size_t>(c), CMatrix::Zero(2, 2)));
  for (Index a = 0; a < c; ++a) {
    f[a][a] += matrix_unit(2, 0, 0);
    f[a][(a + 1) % c] += matrix_unit(2, 1, 1);
  }
  const auto comp = compose_reps(g, p, f, two);
  CHECK(comp.report.pass);
  CHECK(comp.strategy.projections[0].rows() == p.n * p.ancilla_dim() * 2);
  CHECK(check_block_strategy(comp.strategy).pass);

  // Broken relations.
  auto broken = id;
  broken[0][1](0, 0) = 1.0;
  CHECK_THROWS_AS(compose_reps(g, p, broken, one), DomainError);
  CHECK_THROWS_AS(compose_reps(g, p, {id[0]}, one), ShapeError);
}

TEST_CASE("shape mismatches throw") {
  const auto s = teleport_coloring(1, 2);
  const GameInstance wrong_c{complete_quantum_graph(VnAlgebra({{1, 2}})), complete_graph(3)};
  CHECK_THROWS_AS(verify_structural(wrong_c, s), ShapeError);
  const GameInstance wrong_n{graph_operator_system(complete_graph(3)), complete_graph(4)};
  CHECK_THROWS_AS(verify_operational(wrong_n, s), ShapeError);
}
