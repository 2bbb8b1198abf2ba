#pragma once

// Explicit colorings of quantum complete graphs (M_n, M, M_n), trace
// rigidity of colorings, and certified chromatic upper bounds.

#include <optional>
#include <string>
#include <vector>

#include "qgraph/algebra.hpp"
#include "qgraph/graph.hpp"
#include "qgraph/report.hpp"
#include "qgraph/strategy.hpp"

namespace qgraph {

/// (M_n, M, M_n): S is all of M_n.
QuantumGraph complete_quantum_graph(const VnAlgebra& m);

/// k^2 projections on C^{dk} (x) C^{dk}, colors indexed a*k + b, ancilla
/// M_{dk} with its normalized trace. Colors M = C I_d (x) M_k.
BlockStrategy teleport_coloring(Index d, Index k);

/// dim(M) projections in M (x) M_d with d = lcm(k_r); colors (s, a, b) in
/// lexicographic order.
BlockStrategy shift_multiply_coloring(const VnAlgebra& m);

/// Central projections of an abelian M with trivial ancilla.
BlockStrategy abelian_loc_coloring(const VnAlgebra& m);

/// Largest commutator among a basis of the span of all entries P_{a,ij} and
/// their adjoints; zero exactly when the entries generate a commutative
/// algebra.
double loc_residual(const BlockStrategy& s);

struct RigidityReport {
  std::vector<CMatrix> psi;                   // (psi_M (x) id)(P_a)
  std::vector<std::vector<CMatrix>> r_blocks; // R_a^{(r)}, indexed [a][r]
  std::vector<CMatrix> r_total;               // R_a
  Report report;
};

/// R_a^{(r)} = (k_r/n_r) (Tr (x) id)(E_r P_a E_r) in canonical coordinates.
/// Checks "coloring", "idempotent", "block_sum", "total"; when c = dim M
/// also "plancherel" and "identity". Throws DomainError when S is not a
/// coloring of (M_n, M, M_n).
RigidityReport rigidity_check(const BlockStrategy& s, const VnAlgebra& m, Tolerance tol = {});

struct Bound {
  std::string model;         // "loc" or "q"
  int colors = 0;
  std::string construction;  // how the witness was built
  bool exact = false;
  BlockStrategy witness;
  Report verification;       // verify_structural on the input graph
};

struct BoundsReport {
  std::vector<Bound> bounds;
  std::vector<std::string> notes;
  std::optional<ClassicalGraph> classical;  // set when S = S_H over D_n

  std::optional<int> best(const std::string& model) const;
};

BoundsReport chromatic_bounds(const QuantumGraph& g, Tolerance tol = {});

/// H when g is the graph operator system S_H in standard coordinates.
std::optional<ClassicalGraph> as_classical(const QuantumGraph& g, Tolerance tol = {});

}  // namespace qgraph
