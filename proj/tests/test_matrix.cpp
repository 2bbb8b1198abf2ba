#include <doctest.h>

#include "qgraph/coloring.hpp"
#include "qgraph/matrix.hpp"
#include "support.hpp"

using namespace qgraph;
using qtest::Rng;

TEST_CASE("hs_inner on matrix units and the identity") {
  CHECK(hs_inner(matrix_unit(2, 0, 0), matrix_unit(2, 0, 0)) == cplx(1.0, 0.0));
  CHECK(hs_inner(matrix_unit(2, 0, 1), matrix_unit(2, 1, 0)) == cplx(0.0, 0.0));
  CHECK(hs_inner(identity(5), identity(5)) == cplx(5.0, 0.0));
  CHECK_THROWS_AS(hs_inner(identity(2), identity(3)), ShapeError);
}

TEST_CASE("hs_inner is conjugate-linear in the second slot and positive") {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const CMatrix a = qtest::random_matrix(4, 3, rng), b = qtest::random_matrix(4, 3, rng);
    const cplx z(0.3, -1.7);
    CHECK(std::abs(hs_inner(a, z * b) - std::conj(z) * hs_inner(a, b)) < 1e-12);
    CHECK(std::abs(hs_inner(a, b) - (b.adjoint() * a).trace()) < 1e-12);
    const cplx aa = hs_inner(a, a);
    CHECK(aa.real() > 0.0);
    CHECK(std::abs(aa.imag()) < 1e-12);
  }
}

TEST_CASE("kron matches the index formula") {
  Rng rng(2);
  const CMatrix a = qtest::random_matrix(2, 3, rng), b = qtest::random_matrix(3, 2, rng);
  CHECK((kron(a, b) - qtest::naive_kron(a, b)).norm() < 1e-14);
}

TEST_CASE("canonical_shuffle permutes tensor legs") {
  const Index p = 2, q = 3;
  for (Index a = 0; a < p; ++a)
    for (Index b = 0; b < p; ++b)
      for (Index i = 0; i < q; ++i)
        for (Index j = 0; j < q; ++j) {
          const CMatrix m = kron(matrix_unit(p, a, b), matrix_unit(q, i, j));
          CHECK(canonical_shuffle(m, p, q) == kron(matrix_unit(q, i, j), matrix_unit(p, a, b)));
        }

  Rng rng(3);
  const CMatrix m = qtest::random_matrix(p * q, p * q, rng);
  CHECK((canonical_shuffle(canonical_shuffle(m, p, q), q, p) - m).norm() == 0.0);
  CHECK(std::abs(canonical_shuffle(m, p, q).trace() - m.trace()) < 1e-12);

  const CMatrix x = qtest::random_matrix(2, 2, rng), y = qtest::random_matrix(3, 3, rng), z = qtest::random_matrix(2, 2, rng);
  CHECK((canonical_shuffle(kron(kron(x, y), z), 2, 3, 2) - kron(kron(y, x), z)).norm() < 1e-12);
  CHECK_THROWS_AS(canonical_shuffle(m, 4, 2), ShapeError);
}

TEST_CASE("canonical_shuffle preserves Hermiticity, positivity and PVMs") {
  Rng rng(4);
  const auto pvm = qtest::random_pvm(6, 3, rng);
  std::vector<CMatrix> shuffled;
  for (const auto& p : pvm) shuffled.push_back(canonical_shuffle(p, 2, 3));
  CHECK(check_measurement(shuffled).is_pvm);
  const CMatrix h = qtest::random_hermitian(6, rng);
  CHECK(hermitian_defect(canonical_shuffle(h, 3, 2)) < 1e-14);
}

TEST_CASE("partial traces") {
  Rng rng(5);
  const CMatrix a = qtest::random_matrix(2, 2, rng), b = qtest::random_matrix(3, 3, rng);
  CHECK((partial_trace(kron(a, b), 2, 3, TraceSide::left) - a.trace() * b).norm() < 1e-12);
  CHECK((partial_trace(kron(a, b), 2, 3, TraceSide::right) - b.trace() * a).norm() < 1e-12);

  CVector phi = CVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  const CMatrix bell = phi * phi.adjoint();
  CHECK((partial_trace(bell, 2, 2, TraceSide::left) - 0.5 * identity(2)).norm() < 1e-15);
  CHECK((partial_trace(identity(4), 2, 2, TraceSide::left) - 2.0 * identity(2)).norm() == 0.0);

  for (int t = 0; t < 10; ++t) {
    const CMatrix m = qtest::random_matrix(12, 12, rng);
    CHECK(std::abs(partial_trace(m, 3, 4, TraceSide::left).trace() - m.trace()) < 1e-12);
    CHECK(std::abs(partial_trace(m, 3, 4, TraceSide::right).trace() - m.trace()) < 1e-12);
  }
  CHECK_THROWS_AS(partial_trace(identity(5), 2, 2, TraceSide::left), ShapeError);
}

TEST_CASE("Hermitian eigendecomposition residual up to size 64") {
  Rng rng(6);
  for (Index n : {1, 2, 7, 16, 33, 64}) {
    const CMatrix a = qtest::random_hermitian(n, rng);
    const auto e = hermitian_eigen(a);
    const CMatrix back = e.vectors * e.values.cast<cplx>().asDiagonal() * e.vectors.adjoint();
    CHECK((a - back).norm() <= 1e-10 * a.norm());
    for (Index i = 1; i < n; ++i) CHECK(e.values(i) >= e.values(i - 1));
  }
}

TEST_CASE("psd_sqrt clamps roundoff and rejects negative input") {
  Rng rng(7);
  const CMatrix g = qtest::random_matrix(4, 2, rng);
  const CMatrix p = g * g.adjoint();  // rank 2
  const CMatrix r = psd_sqrt(p);
  CHECK((r * r - p).norm() < 1e-10);
  CHECK_THROWS_AS(psd_sqrt(-identity(2)), DomainError);
}

TEST_CASE("check_measurement") {
  const auto tele = teleport_coloring(1, 2);
  const auto m = check_measurement(tele.projections);
  CHECK(m.is_pvm);
  CHECK(std::max({m.hermiticity, m.completeness, m.idempotence, m.orthogonality}) < 1e-12);

  const std::vector<CMatrix> halves{0.5 * identity(2), 0.5 * identity(2)};
  const auto h = check_measurement(halves);
  CHECK(h.is_povm);
  CHECK_FALSE(h.is_pvm);

  auto perturbed = tele.projections;
  perturbed[1](2, 3) += 1e-6;
  CHECK_FALSE(check_measurement(perturbed, Tolerance(1e-9)).is_pvm);

  CHECK_THROWS_AS(check_measurement(std::vector<CMatrix>{}), ShapeError);
  CHECK_THROWS_AS(check_measurement(std::vector<CMatrix>{identity(2), identity(3)}), ShapeError);

  const std::vector<CMatrix> negative{2.0 * identity(2), -identity(2)};
  const auto n = check_measurement(negative);
  CHECK_FALSE(n.is_povm);
  CHECK(n.worst_a == 1);
}

TEST_CASE("Tolerance must be positive") {
  CHECK_THROWS_AS(Tolerance(0.0), ShapeError);
  CHECK_THROWS_AS(Tolerance(-1.0), ShapeError);
  CHECK(Tolerance().eps == 1e-9);
}

TEST_CASE("root_of_unity is exact on quarter turns") {
  CHECK(root_of_unity(1, 4) == cplx(0.0, 1.0));
  CHECK(root_of_unity(2, 4) == cplx(-1.0, 0.0));
  CHECK(root_of_unity(-1, 4) == cplx(0.0, -1.0));
  CHECK(root_of_unity(3, 2) == cplx(-1.0, 0.0));
  CHECK(std::abs(root_of_unity(1, 3) - std::polar(1.0, 2.0 * M_PI / 3.0)) < 1e-15);
}

TEST_CASE("MatrixSpan drops dependent elements") {
  MatrixSpan s(2, 2);
  CHECK(s.add(matrix_unit(2, 0, 0)));
  CHECK(s.add(matrix_unit(2, 0, 0) + matrix_unit(2, 1, 1)));
  CHECK_FALSE(s.add(identity(2) * 3.0));
  CHECK(s.dim() == 2);
  CHECK(s.distance(matrix_unit(2, 1, 1)) < 1e-14);
  CHECK(std::abs(s.distance(matrix_unit(2, 0, 1)) - 1.0) < 1e-14);
}
