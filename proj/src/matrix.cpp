#include "qgraph/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qgraph {

cplx hs_inner(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("hs_inner: shape mismatch");
  // Tr(B^* A) = sum conj(b_ij) a_ij
  return (b.conjugate().cwiseProduct(a)).sum();
}

CMatrix identity(Index n) { return CMatrix::Identity(n, n); }

CMatrix matrix_unit(Index n, Index i, Index j) {
  if (i < 0 || j < 0 || i >= n || j >= n) throw ShapeError("matrix_unit: index out of range");
  CMatrix e = CMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix direct_sum(std::span<const CMatrix> parts) {
  Index r = 0, c = 0;
  for (const auto& p : parts) {
    r += p.rows();
    c += p.cols();
  }
  CMatrix out = CMatrix::Zero(r, c);
  r = c = 0;
  for (const auto& p : parts) {
    out.block(r, c, p.rows(), p.cols()) = p;
    r += p.rows();
    c += p.cols();
  }
  return out;
}

cplx root_of_unity(long long m, long long k) {
  if (k <= 0) throw ShapeError("root_of_unity: order must be positive");
  m %= k;
  if (m < 0) m += k;
  if ((4 * m) % k == 0) {
    switch ((4 * m) / k) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(k));
}

CMatrix canonical_shuffle(const CMatrix& m, Index outer, Index inner, Index tail) {
  if (outer <= 0 || inner <= 0 || tail <= 0) throw ShapeError("canonical_shuffle: factors must be positive");
  const Index size = outer * inner * tail;
  if (m.rows() != size || m.cols() != size)
    throw ShapeError("canonical_shuffle: matrix size is not outer*inner*tail");
  auto remap = [&](Index idx) {
    const Index t = idx % tail;
    const Index i = (idx / tail) % inner;
    const Index p = idx / (tail * inner);
    return (i * outer + p) * tail + t;
  };
  CMatrix out(size, size);
  for (Index r = 0; r < size; ++r) {
    const Index nr = remap(r);
    for (Index c = 0; c < size; ++c) out(nr, remap(c)) = m(r, c);
  }
  return out;
}

CMatrix partial_trace(const CMatrix& m, Index d0, Index d1, TraceSide side) {
  if (d0 <= 0 || d1 <= 0 || m.rows() != d0 * d1 || m.cols() != d0 * d1)
    throw ShapeError("partial_trace: size mismatch");
  if (side == TraceSide::left) {
    CMatrix out = CMatrix::Zero(d1, d1);
    for (Index p = 0; p < d0; ++p) out += m.block(p * d1, p * d1, d1, d1);
    return out;
  }
  CMatrix out(d0, d0);
  for (Index p = 0; p < d0; ++p)
    for (Index q = 0; q < d0; ++q) out(p, q) = m.block(p * d1, q * d1, d1, d1).trace();
  return out;
}

HermitianEigen hermitian_eigen(const CMatrix& a) {
  require_square(a, "hermitian_eigen");
  const CMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw DomainError("hermitian_eigen: solver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix psd_sqrt(const CMatrix& a, Tolerance tol) {
  auto eig = hermitian_eigen(a);
  RVector s(eig.values.size());
  for (Index i = 0; i < s.size(); ++i) {
    const double v = eig.values(i);
    if (v < -tol.eps) throw DomainError("psd_sqrt: matrix is not positive semidefinite");
    s(i) = v > 0.0 ? std::sqrt(v) : 0.0;
  }
  return eig.vectors * s.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
}

double hermitian_defect(const CMatrix& a) { return (a - a.adjoint()).norm(); }

double unitary_defect(const CMatrix& u) {
  require_square(u, "unitary_defect");
  const CMatrix i = identity(u.rows());
  return std::max((u.adjoint() * u - i).norm(), (u * u.adjoint() - i).norm());
}

double max_commutator(std::span<const CMatrix> xs, std::span<const CMatrix> ys) {
  double worst = 0.0;
  for (const auto& x : xs)
    for (const auto& y : ys) worst = std::max(worst, (x * y - y * x).norm());
  return worst;
}

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) throw ShapeError(std::string(what) + ": matrix is not square");
}

MeasurementReport check_measurement(std::span<const CMatrix> ops, Tolerance tol) {
  if (ops.empty()) throw ShapeError("check_measurement: empty operator list");
  const Index n = ops.front().rows();
  for (const auto& p : ops)
    if (p.rows() != n || p.cols() != n) throw ShapeError("check_measurement: shape mismatch");

  MeasurementReport rep;
  int herm_a = -1, pos_a = -1, idem_a = -1, orth_a = -1, orth_b = -1;
  CMatrix total = CMatrix::Zero(n, n);
  for (std::size_t a = 0; a < ops.size(); ++a) {
    const auto& p = ops[a];
    total += p;
    const double h = hermitian_defect(p);
    if (h > rep.hermiticity) rep.hermiticity = h, herm_a = static_cast<int>(a);
    const double neg = std::max(0.0, -hermitian_eigen(p).values.minCoeff());
    if (neg > rep.positivity) rep.positivity = neg, pos_a = static_cast<int>(a);
    const double id = (p * p - p).norm();
    if (id > rep.idempotence) rep.idempotence = id, idem_a = static_cast<int>(a);
    for (std::size_t b = 0; b < ops.size(); ++b) {
      if (a == b) continue;
      const double o = (p * ops[b]).norm();
      if (o > rep.orthogonality) rep.orthogonality = o, orth_a = static_cast<int>(a), orth_b = static_cast<int>(b);
    }
  }
  rep.completeness = (total - identity(n)).norm();
  rep.is_povm = rep.hermiticity <= tol.eps && rep.positivity <= tol.eps && rep.completeness <= tol.eps;
  rep.is_pvm = rep.is_povm && rep.idempotence <= tol.eps && rep.orthogonality <= tol.eps;

  if (rep.hermiticity > tol.eps) rep.worst_a = herm_a;
  else if (rep.positivity > tol.eps) rep.worst_a = pos_a;
  else if (rep.idempotence > tol.eps) rep.worst_a = idem_a;
  else if (rep.orthogonality > tol.eps) rep.worst_a = orth_a, rep.worst_b = orth_b;
  return rep;
}

MatrixSpan::MatrixSpan(Index rows, Index cols, double drop) : rows_(rows), cols_(cols), drop_(drop) {}

CMatrix MatrixSpan::residual(const CMatrix& m) const {
  if (m.rows() != rows_ || m.cols() != cols_) throw ShapeError("MatrixSpan: shape mismatch");
  CMatrix r = m;
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& e : basis_) r -= hs_inner(r, e) * e;
  return r;
}

CMatrix MatrixSpan::project(const CMatrix& m) const { return m - residual(m); }

bool MatrixSpan::add(const CMatrix& m) {
  CMatrix r = residual(m);
  const double nrm = r.norm();
  if (nrm < drop_) return false;
  basis_.push_back(r / nrm);
  return true;
}

}  // namespace qgraph
