#include <doctest.h>

#include "qgraph/algebra.hpp"
#include "support.hpp"

using namespace qgraph;
using qtest::Rng;

namespace {

double span_distance(const std::vector<CMatrix>& basis, const CMatrix& x) {
  MatrixSpan s(x.rows(), x.cols());
  for (const auto& b : basis) s.add(b);
  return s.distance(x);
}

double max_orthonormality_defect(const std::vector<CMatrix>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      worst = std::max(worst, std::abs(hs_inner(b[i], b[j]) - (i == j ? 1.0 : 0.0)));
  return worst;
}

// Membership of x in the canonical algebra with the given blocks.
double canonical_residual(const std::vector<AlgebraBlock>& blocks, const CMatrix& x) {
  return span_distance(VnAlgebra(blocks).basis(), x);
}

const std::vector<std::vector<AlgebraBlock>> kShapes = {
    {{1, 1}}, {{1, 3}}, {{2, 1}, {1, 2}}, {{1, 1}, {1, 1}, {1, 2}}, {{1, 2}, {1, 2}}, {{2, 2}}, {{3, 1}, {1, 2}},
};

}  // namespace

TEST_CASE("commutant of D_n, M_n and C I_d (x) M_k") {
  const auto dn = commutant(VnAlgebra::diagonal(4));
  CHECK(dn.size() == 4);
  for (const auto& e : dn) CHECK((e - CMatrix(e.diagonal().asDiagonal())).norm() == 0.0);

  const auto mn = commutant(VnAlgebra::full(3));
  REQUIRE(mn.size() == 1);
  CHECK((mn[0] - identity(3) / std::sqrt(3.0)).norm() < 1e-15);

  const VnAlgebra tele({{2, 3}});
  const auto c = commutant(tele);
  CHECK(c.size() == 4);
  for (Index x = 0; x < 2; ++x)
    for (Index y = 0; y < 2; ++y) CHECK(span_distance(c, kron(matrix_unit(2, x, y), identity(3))) < 1e-12);
}

TEST_CASE("bases are orthonormal with the right counts") {
  Rng rng(11);
  for (const auto& shape : kShapes) {
    Index n = 0;
    for (const auto& b : shape) n += b.mult * b.dim;
    const VnAlgebra m(shape, qtest::random_unitary(n, rng));
    const auto basis = m.basis();
    const auto comm = commutant(m);
    CHECK(static_cast<Index>(basis.size()) == m.dim());
    CHECK(static_cast<Index>(comm.size()) == m.commutant_dim());
    CHECK(max_orthonormality_defect(basis) < 1e-12);
    CHECK(max_orthonormality_defect(comm) < 1e-12);
    CHECK(max_commutator(basis, comm) <= 1e-10);

    // dim M plus the dimension of its HS-complement is n^2.
    MatrixSpan rest(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        const CMatrix e = matrix_unit(n, i, j);
        rest.add(e - project(m, Subspace::algebra, e));
      }
    CHECK(static_cast<Index>(rest.dim()) + m.dim() == n * n);
  }
}

TEST_CASE("project onto M, M' and the complement of M'") {
  Rng rng(12);
  const CMatrix x = qtest::random_matrix(4, 4, rng);
  const CMatrix traceless = x - x.trace() / 4.0 * identity(4);
  CHECK((project(VnAlgebra::full(4), Subspace::commutant_perp, traceless) - traceless).norm() < 1e-12);
  CHECK((project(VnAlgebra::diagonal(3), Subspace::commutant_perp, matrix_unit(3, 0, 1)) - matrix_unit(3, 0, 1)).norm() == 0.0);

  for (const auto& shape : kShapes) {
    Index n = 0;
    for (const auto& b : shape) n += b.mult * b.dim;
    const VnAlgebra m(shape, qtest::random_unitary(n, rng));
    const CMatrix y = qtest::random_matrix(n, n, rng);
    CHECK((project(m, Subspace::commutant, y) + project(m, Subspace::commutant_perp, y) - y).norm() < 1e-12);
    const CMatrix py = project(m, Subspace::algebra, y);
    CHECK((project(m, Subspace::algebra, py) - py).norm() < 1e-12);
  }
  CHECK_THROWS_AS(project(VnAlgebra::full(2), Subspace::algebra, identity(3)), ShapeError);
}

TEST_CASE("Plancherel trace") {
  const auto m2 = plancherel(VnAlgebra::full(2));
  REQUIRE(m2.weights.size() == 1);
  CHECK(m2.weights[0] == doctest::Approx(0.5));

  const VnAlgebra ab = VnAlgebra::diagonal(5);
  for (double w : plancherel(ab).weights) CHECK(w == doctest::Approx(0.2));

  Rng rng(13);
  for (const auto& shape : kShapes) {
    Index n = 0;
    for (const auto& b : shape) n += b.mult * b.dim;
    const VnAlgebra m(shape, qtest::random_unitary(n, rng));
    const auto psi = plancherel(m);
    CHECK(psi(m, identity(n)) == doctest::Approx(1.0).epsilon(1e-12));
    const auto basis = m.basis();
    for (const auto& a : basis) {
      CHECK(psi(m, a.adjoint() * a) > 0.0);
      for (const auto& b : basis) CHECK(std::abs(psi(m, a * b) - psi(m, b * a)) < 1e-12);
    }
  }
}

TEST_CASE("central projections and irreducible subspaces") {
  const VnAlgebra m({{2, 1}, {1, 2}});
  const auto e = m.central_projections();
  REQUIRE(e.size() == 2);
  CHECK((e[0] + e[1] - identity(4)).norm() == 0.0);
  const auto k = m.irreducible_subspaces();
  CHECK(k.size() == 3);
  CMatrix total = CMatrix::Zero(4, 4);
  for (const auto& s : k) total += s.projection;
  CHECK((total - identity(4)).norm() == 0.0);
  CHECK_THROWS_AS(VnAlgebra({{2, 1}}, identity(3)), ShapeError);
  CHECK_THROWS_AS(VnAlgebra({{1, 2}}, 2.0 * identity(2)), DomainError);
}

TEST_CASE("normal_form on canonical generators") {
  for (const auto& shape : kShapes) {
    const VnAlgebra m(shape);
    const auto nf = normal_form(m.basis());
    std::vector<AlgebraBlock> sorted = shape;
    std::stable_sort(sorted.begin(), sorted.end(), [](auto a, auto b) { return std::pair(a.dim, a.mult) < std::pair(b.dim, b.mult); });
    CHECK(nf.algebra.blocks() == sorted);
    CHECK(unitary_defect(nf.unitary) < 1e-10);
    // U maps the canonical algebra onto the one we started with.
    for (const auto& b : VnAlgebra(sorted).basis()) CHECK(span_distance(m.basis(), nf.unitary * b * nf.unitary.adjoint()) < 1e-9);
  }
}

TEST_CASE("normal_form recovers blocks after permutation and unitary conjugation") {
  Rng rng(14);
  for (const auto& shape : kShapes) {
    Index n = 0;
    for (const auto& b : shape) n += b.mult * b.dim;
    std::vector<Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), Index{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    CMatrix pm = CMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) pm(perm[static_cast<std::size_t>(i)], i) = 1.0;

    for (const CMatrix& w : {pm, qtest::random_unitary(n, rng)}) {
      std::vector<CMatrix> gens;
      for (const auto& b : VnAlgebra(shape).basis()) gens.push_back(w * b * w.adjoint());
      const auto nf = normal_form(gens);
      std::vector<AlgebraBlock> sorted = shape;
      std::stable_sort(sorted.begin(), sorted.end(), [](auto a, auto b) { return std::pair(a.dim, a.mult) < std::pair(b.dim, b.mult); });
      CHECK(nf.algebra.blocks() == sorted);
      for (const auto& g : gens) CHECK(canonical_residual(sorted, nf.unitary.adjoint() * g * nf.unitary) < 1e-9);

      // Idempotent: normalizing the recovered algebra's own basis gives the same blocks.
      CHECK(normal_form(nf.algebra.basis()).algebra.blocks() == nf.algebra.blocks());
    }
  }
}

TEST_CASE("normal_form from a small generating set") {
  const auto full = normal_form({matrix_unit(2, 0, 0), matrix_unit(2, 0, 1), matrix_unit(2, 1, 0), matrix_unit(2, 1, 1)});
  CHECK(full.algebra.blocks() == std::vector<AlgebraBlock>{{1, 2}});

  // A single generic Hermitian element generates a maximal abelian algebra.
  Rng rng(15);
  const auto masa = normal_form({qtest::random_hermitian(4, rng)});
  CHECK(masa.algebra.blocks() == std::vector<AlgebraBlock>(4, {1, 1}));

  // I_2 (x) M_2 from two Pauli generators on the second leg.
  CMatrix x(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  const auto amp = normal_form({kron(identity(2), x), kron(identity(2), z)});
  CHECK(amp.algebra.blocks() == std::vector<AlgebraBlock>{{2, 2}});
}

TEST_CASE("normal_form rejects degenerate and malformed input") {
  CHECK_THROWS_AS(normal_form({CMatrix::Zero(2, 2)}), DomainError);
  // E11 + E12 is not normal, yet its *-algebra is all of M_2.
  CHECK(normal_form({matrix_unit(2, 0, 0) + matrix_unit(2, 0, 1)}).algebra.blocks() == std::vector<AlgebraBlock>{{1, 2}});
  CHECK_THROWS_AS(normal_form({matrix_unit(3, 0, 0)}), DomainError);
  CHECK_THROWS_AS(normal_form({}), ShapeError);
  CHECK_THROWS_AS(normal_form({identity(2), identity(3)}), ShapeError);
}
