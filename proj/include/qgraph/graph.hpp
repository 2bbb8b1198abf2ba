#pragma once

// Quantum graphs (S, M, M_n), their edge bases, and classical graphs with an
// exhaustive-search oracle.

#include <optional>
#include <utility>
#include <vector>

#include "qgraph/algebra.hpp"
#include "qgraph/matrix.hpp"
#include "qgraph/report.hpp"

namespace qgraph {

struct QuantumGraph {
  Index n = 0;
  VnAlgebra algebra;
  std::vector<CMatrix> s_basis;  // spanning set of S, not necessarily orthonormal
  bool traceless = false;        // Tr(Y) = 0 replaces I in S
};

/// Checks "self_adjoint", "operator_system" (or "traceless") and "bimodule".
/// Shape inconsistencies throw ShapeError instead of producing a report.
Report validate(const QuantumGraph& g, Tolerance tol = {});

/// Orthonormal basis of span(S).
MatrixSpan s_span(const QuantumGraph& g, Tolerance tol = {});

enum class EdgeKind { same_vertex, adjacency };

struct EdgeElement {
  CMatrix y;
  EdgeKind kind;
  // Indices into algebra.irreducible_subspaces(): E_first Y E_second = Y.
  std::size_t first = 0;
  std::size_t second = 0;
};

struct EdgeBasis {
  std::vector<EdgeElement> elements;

  std::vector<CMatrix> of_kind(EdgeKind k) const;
  std::size_t count(EdgeKind k) const;
};

/// Orthonormal basis of S adapted to the irreducible subspaces of M: the
/// same_vertex part spans S intersected with M', the adjacency part spans
/// S intersected with the orthocomplement of M'.
EdgeBasis edge_basis(const QuantumGraph& g, Tolerance tol = {});

/// Coordinates of Y = sum y_pq v_p v_q^* as sum y_pq v_p (x) v_q, where v_p
/// are the columns of the unitary `basis` (identity when omitted).
CVector vectorize(const CMatrix& y, const std::optional<CMatrix>& basis = std::nullopt, Tolerance tol = {});
CMatrix devectorize(const CVector& v, Index n, const std::optional<CMatrix>& basis = std::nullopt,
                    Tolerance tol = {});

/// (1/sqrt|S|) sum_{j in S} e_j (x) e_j in C^n (x) C^n.
CVector bell_state(Index n, const std::vector<Index>& subset);

struct ClassicalGraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;

  /// Throws ShapeError on out-of-range endpoints or loops.
  void check() const;
  bool adjacent(int a, int b) const;
  std::vector<std::vector<bool>> adjacency() const;
};

ClassicalGraph complete_graph(int c);
ClassicalGraph cycle_graph(int n);

/// (S_G, D_n, M_n): diagonal matrix units plus E_ij, E_ji for each edge.
QuantumGraph graph_operator_system(const ClassicalGraph& g);

/// Largest distance from an element of the spanning set of `s` to span(T).
double containment_residual(const QuantumGraph& s, const QuantumGraph& t, Tolerance tol = {});

// Exhaustive search; the source vertex count is capped.
inline constexpr int kOracleCap = 8;

std::optional<std::vector<int>> find_homomorphism(const ClassicalGraph& g, const ClassicalGraph& h,
                                                  int cap = kOracleCap);
bool hom_exists(const ClassicalGraph& g, const ClassicalGraph& h, int cap = kOracleCap);
int chromatic_number(const ClassicalGraph& g, int cap = kOracleCap);

}  // namespace qgraph
