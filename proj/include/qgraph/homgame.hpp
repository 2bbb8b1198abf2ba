#pragma once

// The quantum-to-classical homomorphism game: structural and operational
// verification of strategies, channel extraction, relation checks and
// composition of representations.

#include <vector>

#include "qgraph/graph.hpp"
#include "qgraph/report.hpp"
#include "qgraph/strategy.hpp"

namespace qgraph {

struct GameInstance {
  QuantumGraph source;
  ClassicalGraph target;
};

/// "pvm", "membership" (P_a commutes with A (x) 1 for A in M') and
/// "adjacency" (P_a (Y (x) 1) P_b = 0 for Y in S n (M')^perp and a, b not
/// adjacent, a = b included).
Report verify_structural(const GameInstance& inst, const BlockStrategy& s, Tolerance tol = {});
/// Same, reusing a precomputed edge basis of inst.source.
Report verify_structural(const GameInstance& inst, const EdgeBasis& eb, const BlockStrategy& s, Tolerance tol = {});

/// "pvm", "same_vertex_rule" and "adjacency_rule": the forbidden answer
/// probabilities on every edge-basis input. Residuals are sqrt(p) so they
/// share the Frobenius scale of the structural checks.
Report verify_operational(const GameInstance& inst, const BlockStrategy& s, Tolerance tol = {});
Report verify_operational(const GameInstance& inst, const EdgeBasis& eb, const BlockStrategy& s, Tolerance tol = {});

/// The three defining relations of the game *-algebra plus the idempotent
/// relation: "projection", "sum", "adjacency", "commutant".
Report check_game_algebra_rep(const GameInstance& inst, const BlockStrategy& s, Tolerance tol = {});

struct ChannelRep {
  std::vector<CMatrix> kraus;      // F = |a><u| : C^{nD} -> C^c
  std::vector<int> outcome;        // a for each Kraus operator
  std::vector<CVector> vectors;    // u for each Kraus operator
  CMatrix choi;                    // sum_pq E_pq (x) Phi(E_pq)
  Report report;                   // "completeness", "choi_psd", "adjacency_subset", "same_vertex_subset"
};

/// Kraus operators F_{(a,k)} = |a><u_{a,k}| from the eigenvectors of each
/// P_a, the Choi matrix, and the subset conditions on edge-basis inputs.
/// Throws DomainError when the input is not a PVM or an eigenvalue drifts
/// from {0, 1} by more than tol.
ChannelRep extract_channel(const GameInstance& inst, const BlockStrategy& s, Tolerance tol = {});

struct ComposeResult {
  BlockStrategy strategy;
  Report report;  // verify_structural of the output against K_r
};

/// q_v = sum_a p_a (x) f_{a,v}, where f[a][v] acts on the ancilla `fb` and
/// satisfies the Hom(K_c, K_r) relations. The output ancilla is the tensor
/// product with blocks ordered (s, t).
ComposeResult compose_reps(const QuantumGraph& source, const BlockStrategy& p,
                           const std::vector<std::vector<CMatrix>>& f, const TracialAncilla& fb,
                           Tolerance tol = {});

}  // namespace qgraph
