#pragma once

// Finite tracial ancillas, block PVMs in M_n(A), dilations and the
// Bob-from-Alice tensor model.

#include <vector>

#include "qgraph/matrix.hpp"
#include "qgraph/report.hpp"

namespace qgraph {

/// A = sum_s M_{d_s} with the faithful trace tau = sum_s w_s tr_{d_s}.
struct TracialAncilla {
  std::vector<Index> block_dims;
  std::vector<double> trace_weights;

  /// Weights proportional to d_s^2.
  static TracialAncilla with_dims(std::vector<Index> dims);
  /// M_d with its normalized trace.
  static TracialAncilla matrix_block(Index d);

  Index dim() const;
  Index offset(std::size_t s) const;
  /// Throws ShapeError / DomainError when the invariants fail.
  void check(Tolerance tol = {}) const;
  cplx trace(const CMatrix& a) const;
  /// Frobenius norm of the part of `a` outside the block diagonal.
  double off_block(const CMatrix& a) const;
};

/// A c-outcome family in M_n(A), each operator of size n*D in the
/// kron(M_n, M_D) layout.
struct BlockStrategy {
  Index n = 0;
  Index c = 0;
  TracialAncilla ancilla;
  std::vector<CMatrix> projections;

  Index ancilla_dim() const { return ancilla.dim(); }
  /// The D x D entry P_{a,ij}.
  CMatrix cell(Index a, Index i, Index j) const;
  /// Shape and ancilla-structure checks; throws ShapeError.
  void check_shapes(Tolerance tol = {}) const;
};

/// "pvm" and "ancilla_blocks" checks.
Report check_block_strategy(const BlockStrategy& s, Tolerance tol = {});

/// Conjugates every projection by U (x) I_D for U in M_n.
BlockStrategy conjugate(const BlockStrategy& s, const CMatrix& u);

/// Alice acts on C^n (x) H_A, Bob on C^n (x) H_B (both in kron layout), and
/// the state lives in H_A (x) H_B.
struct TensorStrategy {
  Index n = 0;
  Index c = 0;
  Index dim_a = 0;
  Index dim_b = 0;
  std::vector<CMatrix> alice;
  std::vector<CMatrix> bob;
  CVector state;

  void check_shapes() const;
  /// The dim_b x dim_b entry Q_{b,kl}.
  CMatrix bob_cell(Index b, Index k, Index l) const;
  CMatrix alice_cell(Index a, Index i, Index j) const;
};

/// PVM on C^{c+1} (x) H whose compressions to the first copy of H are Q_a.
std::vector<CMatrix> dilate_povm(const std::vector<CMatrix>& q, Tolerance tol = {});

/// Q_a in M_n(B(H)) with dim H = h. Returns a PVM in M_n(M_{c+1}(B(H)));
/// the leading h x h corner of each entry p_{a,ij} is q_{a,ij}.
std::vector<CMatrix> dilate_block_povm(const std::vector<CMatrix>& q, Index n, Tolerance tol = {});

/// Isometry of H onto the first copy inside C^{c+1} (x) H.
CMatrix dilation_corner(Index c, Index h);

/// U = sum_a w^(a+1) P_a with w = exp(2 pi i / c), a = 0..c-1.
CMatrix pvm_to_unitary(const std::vector<CMatrix>& p, Tolerance tol = {});
std::vector<CMatrix> unitary_to_pvm(const CMatrix& u, Index c, Tolerance tol = {});

struct RoundedPvm {
  std::vector<CMatrix> projections;
  double distance = 0.0;    // max_a ||Q_a - P_a||_2 (operator norm)
  MeasurementReport input;  // defects of the input family
};

/// Spectral rounding of sum_a (a+1) P_a to the nearest integer in 1..c.
RoundedPvm round_almost_pvm(const std::vector<CMatrix>& p, Tolerance tol = {});

/// H_A = H_B = C^D, chi = sum_s sqrt(w_s/d_s) sum_p e_sp (x) e_sp and
/// Q_b = conj(P_b).
TensorStrategy bob_from_alice(const BlockStrategy& s);

double operator_norm(const CMatrix& a);

}  // namespace qgraph
