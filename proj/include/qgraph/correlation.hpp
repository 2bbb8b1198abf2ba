#pragma once

// Quantum-input, classical-output correlations X^{(a,b)}_{(i,j),(k,l)} and
// their classical-input counterparts p(a,b|x,y).

#include <vector>

#include "qgraph/matrix.hpp"
#include "qgraph/report.hpp"
#include "qgraph/strategy.hpp"

namespace qgraph {

struct Correlation {
  Index n = 0;
  Index c = 0;
  std::vector<cplx> x;  // c*c*n^4 entries, index order (a, b, i, j, k, l)

  Correlation() = default;
  Correlation(Index n_, Index c_);

  std::size_t index(Index a, Index b, Index i, Index j, Index k, Index l) const;
  cplx& at(Index a, Index b, Index i, Index j, Index k, Index l) { return x[index(a, b, i, j, k, l)]; }
  cplx at(Index a, Index b, Index i, Index j, Index k, Index l) const { return x[index(a, b, i, j, k, l)]; }
  void check_shape() const;
};

struct ClassicalCorrelation {
  Index n = 0;  // inputs per party
  Index c = 0;  // outputs per party
  std::vector<double> p;  // index order (a, b, x, y)

  ClassicalCorrelation() = default;
  ClassicalCorrelation(Index n_, Index c_);

  std::size_t index(Index a, Index b, Index x, Index y) const;
  double& at(Index a, Index b, Index x, Index y) { return p[index(a, b, x, y)]; }
  double at(Index a, Index b, Index x, Index y) const { return p[index(a, b, x, y)]; }
  void check_shape() const;
};

/// X = tau(P_{a,ij} P_{b,kl}^*).
Correlation correlation_from_trace(const BlockStrategy& s);
/// X = <(P_{a,ij} (x) Q_{b,kl}) chi, chi>.
Correlation correlation_from_tensor(const TensorStrategy& t);

/// p(a,b) = (Tr (x) tau)(P_a (Y (x) 1) P_b (Y^* (x) 1) P_a) for ||Y||_F = 1.
Eigen::MatrixXd outcome_probability(const BlockStrategy& s, const CMatrix& y, Tolerance tol = {});

/// "normalization" and "orthogonality" of the synchronicity criterion.
Report check_synchronous(const Correlation& x, Tolerance tol = {});
/// "positivity", "hermiticity", "marginals", "completeness".
Report synchronous_identities(const Correlation& x, Tolerance tol = {});
/// Sum over a, b, i, j of X^{(a,b)}_{(i,j),(i,j)}; equals n for any strategy.
cplx total_mass(const Correlation& x);

/// families[x][a] = E_{a,x}; every family is a POVM on a common space H.
/// Returns P_a = sum_x E_xx (x) E_{a,x} in M_n(B(H)).
std::vector<CMatrix> embed_classical(const std::vector<std::vector<CMatrix>>& families, Tolerance tol = {});
/// X^{(a,b)}_{(i,j),(k,l)} = d_ij d_kl p(a,b|i,k).
Correlation embed_correlation(const ClassicalCorrelation& p);
/// p(a,b|x,y) = X^{(a,b)}_{(x,x),(y,y)}; imaginary parts above tol are an error.
ClassicalCorrelation compress_to_classical(const Correlation& x, Tolerance tol = {});

/// "normalization" (each (x,y) sums to 1), "synchronous" (p(a,b|x,x) = 0
/// for a != b) and "bisynchronous" (p(a,a|x,y) = 0 for x != y).
Report check_bisynchronous(const ClassicalCorrelation& p, Tolerance tol = {});

}  // namespace qgraph
