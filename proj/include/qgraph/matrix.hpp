#pragma once

// Dense complex linear algebra shared by every other part of the library.
//
// Operators on C^n (x) C^D are stored in the "M_n(M_D)" block layout: the
// (i, j) cell of size D x D sits at rows i*D.., cols j*D.., which is the
// Kronecker convention kron(X, A) for X in M_n and A in M_D.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qgraph {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs with inconsistent shapes or malformed structure.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Well-formed inputs that violate a mathematical precondition
/// (not a POVM, non-abelian algebra, failed relations, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Absolute threshold on Frobenius-norm residuals.
struct Tolerance {
  double eps = 1e-9;

  Tolerance() = default;
  explicit Tolerance(double e) : eps(e) {
    if (!(e > 0.0)) throw ShapeError("tolerance must be positive");
  }
};

/// Tr(B^* A), the unnormalized Hilbert-Schmidt inner product.
cplx hs_inner(const CMatrix& a, const CMatrix& b);

CMatrix identity(Index n);
CMatrix matrix_unit(Index n, Index i, Index j);
CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix direct_sum(std::span<const CMatrix> parts);

/// exp(2 pi i m / k), exact when 4m/k is an integer.
cplx root_of_unity(long long m, long long k);

/// Reindexes M_outer(M_inner(M_tail)) into M_inner(M_outer(M_tail)).
/// A permutation similarity, hence an involution when outer and inner swap.
CMatrix canonical_shuffle(const CMatrix& m, Index outer, Index inner, Index tail = 1);

enum class TraceSide { left, right };

/// (Tr (x) id)(M) for side == left, (id (x) Tr)(M) for side == right,
/// where M acts on C^d0 (x) C^d1.
CMatrix partial_trace(const CMatrix& m, Index d0, Index d1, TraceSide side);

struct HermitianEigen {
  RVector values;  // ascending
  CMatrix vectors; // columns
};

/// Eigendecomposition of the Hermitian part of `a`. The only spectral
/// primitive in the library.
HermitianEigen hermitian_eigen(const CMatrix& a);

/// Square root of a positive semidefinite matrix; eigenvalues in [-eps, 0)
/// are clamped to zero, anything more negative is a DomainError.
CMatrix psd_sqrt(const CMatrix& a, Tolerance tol = {});

double hermitian_defect(const CMatrix& a);
double unitary_defect(const CMatrix& u);
/// Largest Frobenius norm of XY - YX over the two lists.
double max_commutator(std::span<const CMatrix> xs, std::span<const CMatrix> ys);

void require_square(const CMatrix& m, const char* what);

struct MeasurementReport {
  bool is_povm = false;
  bool is_pvm = false;
  double hermiticity = 0.0;   // max ||P - P^*||
  double positivity = 0.0;    // max(0, -min eigenvalue)
  double completeness = 0.0;  // ||sum P - I||
  double idempotence = 0.0;   // max ||P^2 - P||
  double orthogonality = 0.0; // max_{a != b} ||P_a P_b||
  int worst_a = -1;           // witness for the first failing condition
  int worst_b = -1;
};

MeasurementReport check_measurement(std::span<const CMatrix> ops, Tolerance tol = {});

/// Orthonormal (Hilbert-Schmidt) basis of a span of matrices built by
/// modified Gram-Schmidt with one re-orthogonalization pass.
class MatrixSpan {
 public:
  MatrixSpan(Index rows, Index cols, double drop = 1e-8);

  /// Adds the normalized residual of `m` when its norm exceeds the drop
  /// threshold; returns whether the span grew.
  bool add(const CMatrix& m);
  /// Component of `m` orthogonal to the span.
  CMatrix residual(const CMatrix& m) const;
  CMatrix project(const CMatrix& m) const;
  double distance(const CMatrix& m) const { return residual(m).norm(); }

  const std::vector<CMatrix>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  Index rows() const { return rows_; }
  Index cols() const { return cols_; }

 private:
  Index rows_;
  Index cols_;
  double drop_;
  std::vector<CMatrix> basis_;
};

}  // namespace qgraph
