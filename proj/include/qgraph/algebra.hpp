#pragma once

// Finite-dimensional von Neumann algebras M in M_n, stored in block normal
// form U (sum_r C I_{n_r} (x) M_{k_r}) U^*.
//
// Canonical coordinates: block r occupies the index range
// [offset(r), offset(r) + n_r k_r) and inside it the multiplicity index is
// outer, i.e. position x * k_r + i for copy x < n_r and i < k_r.

#include <optional>
#include <vector>

#include "qgraph/matrix.hpp"

namespace qgraph {

struct AlgebraBlock {
  Index mult = 1;  // n_r
  Index dim = 1;   // k_r
  friend bool operator==(const AlgebraBlock&, const AlgebraBlock&) = default;
};

/// An irreducible M-invariant subspace: copy `copy` of block `block`.
struct IrreducibleSubspace {
  std::size_t block = 0;
  Index copy = 0;
  CMatrix projection;  // E_K in ambient coordinates
};

class VnAlgebra {
 public:
  VnAlgebra(std::vector<AlgebraBlock> blocks, std::optional<CMatrix> unitary = std::nullopt,
            Tolerance tol = {});

  /// All of M_n.
  static VnAlgebra full(Index n);
  /// The diagonal algebra D_n.
  static VnAlgebra diagonal(Index n);

  Index n() const { return n_; }
  const std::vector<AlgebraBlock>& blocks() const { return blocks_; }
  const std::optional<CMatrix>& unitary() const { return unitary_; }
  Index offset(std::size_t r) const { return offsets_.at(r); }

  /// Linear dimension sum_r k_r^2.
  Index dim() const;
  Index commutant_dim() const;
  bool abelian() const;

  CMatrix to_canonical(const CMatrix& x) const;
  CMatrix from_canonical(const CMatrix& x) const;
  /// Same conjugations applied to the first leg of C^n (x) C^D.
  CMatrix to_canonical(const CMatrix& x, Index ancilla) const;
  CMatrix from_canonical(const CMatrix& x, Index ancilla) const;

  /// Hilbert-Schmidt orthonormal basis of M.
  std::vector<CMatrix> basis() const;
  /// Central projections, one per block.
  std::vector<CMatrix> central_projections() const;
  std::vector<IrreducibleSubspace> irreducible_subspaces() const;

 private:
  Index n_ = 0;
  std::vector<AlgebraBlock> blocks_;
  std::optional<CMatrix> unitary_;
  std::vector<Index> offsets_;
};

/// Orthonormal basis of M' = U (sum_r M_{n_r} (x) I_{k_r}) U^*.
std::vector<CMatrix> commutant(const VnAlgebra& m);

enum class Subspace { algebra, commutant, commutant_perp };

/// Orthogonal (Hilbert-Schmidt) projection of X onto M, M' or (M')^perp.
CMatrix project(const VnAlgebra& m, Subspace space, const CMatrix& x);

/// psi_M = sum_r k_r / (n_r dim M) Tr on block r.
struct PlancherelTrace {
  std::vector<double> weights;

  double operator()(const VnAlgebra& m, const CMatrix& x) const;
};

PlancherelTrace plancherel(const VnAlgebra& m);

struct NormalForm {
  VnAlgebra algebra;
  CMatrix unitary;
};

/// Recovers the block structure of the unital *-algebra generated by
/// `generators` together with U such that U^* <generators> U is canonical.
/// Blocks come out sorted by (k_r, n_r).
NormalForm normal_form(const std::vector<CMatrix>& generators, Tolerance tol = {});

}  // namespace qgraph
