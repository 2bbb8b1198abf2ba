#pragma once

// Random inputs and independent reference computations for the test suites.
// Oracles here deliberately avoid the library's own helpers (kron,
// partial_trace, ...) so that each comparison is between two routes.

#include <algorithm>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include "qgraph/algebra.hpp"
#include "qgraph/graph.hpp"
#include "qgraph/matrix.hpp"
#include "qgraph/strategy.hpp"

namespace qtest {

using namespace qgraph;
using Rng = std::mt19937_64;

inline CMatrix random_matrix(Index r, Index c, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

inline CMatrix random_hermitian(Index n, Rng& rng) {
  const CMatrix a = random_matrix(n, n, rng);
  return 0.5 * (a + a.adjoint());
}

inline CMatrix random_unitary(Index n, Rng& rng) {
  Eigen::HouseholderQR<CMatrix> qr(random_matrix(n, n, rng));
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR();
  for (Index i = 0; i < n; ++i) q.col(i) *= std::polar(1.0, std::arg(r(i, i)));
  return q;
}

/// Random PVM with c outcomes on C^n; ranks drawn uniformly (zero allowed).
inline std::vector<CMatrix> random_pvm(Index n, Index c, Rng& rng) {
  const CMatrix u = random_unitary(n, rng);
  std::uniform_int_distribution<Index> pick(0, c - 1);
  std::vector<CMatrix> p(static_cast<std::size_t>(c), CMatrix::Zero(n, n));
  for (Index i = 0; i < n; ++i) p[static_cast<std::size_t>(pick(rng))] += u.col(i) * u.col(i).adjoint();
  return p;
}

inline CMatrix inverse_sqrt(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
  return es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().cast<cplx>().asDiagonal() *
         es.eigenvectors().adjoint();
}

/// Random full-rank POVM: Q_a = S^{-1/2} A_a S^{-1/2} with S = sum A_a.
inline std::vector<CMatrix> random_povm(Index n, Index c, Rng& rng) {
  std::vector<CMatrix> a;
  CMatrix s = CMatrix::Zero(n, n);
  for (Index k = 0; k < c; ++k) {
    const CMatrix g = random_matrix(n, n, rng);
    a.push_back(g * g.adjoint());
    s += a.back();
  }
  const CMatrix w = inverse_sqrt(s);
  for (auto& x : a) x = w * x * w;
  return a;
}

/// Kronecker product by its index formula.
inline CMatrix naive_kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < out.rows(); ++i)
    for (Index j = 0; j < out.cols(); ++j)
      out(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
  return out;
}

inline CVector naive_kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Index i = 0; i < out.size(); ++i) out(i) = a(i / b.size()) * b(i % b.size());
  return out;
}

/// Random strategy whose projections are block diagonal across the
/// ancilla blocks: a random PVM on C^n (x) C^{d_s} for every block s.
inline BlockStrategy random_block_strategy(Index n, Index c, const TracialAncilla& anc, Rng& rng) {
  const Index d = anc.dim();
  BlockStrategy s{n, c, anc, std::vector<CMatrix>(static_cast<std::size_t>(c), CMatrix::Zero(n * d, n * d))};
  for (std::size_t b = 0; b < anc.block_dims.size(); ++b) {
    const Index ds = anc.block_dims[b], off = anc.offset(b);
    const auto local = random_pvm(n * ds, c, rng);
    for (Index a = 0; a < c; ++a)
      for (Index r = 0; r < n * ds; ++r)
        for (Index q = 0; q < n * ds; ++q)
          s.projections[static_cast<std::size_t>(a)]((r / ds) * d + off + r % ds, (q / ds) * d + off + q % ds) =
              local[static_cast<std::size_t>(a)](r, q);
  }
  return s;
}

/// One or two blocks with total dimension at most max_total and random
/// positive weights.
inline TracialAncilla random_ancilla(Index max_total, Rng& rng) {
  std::uniform_int_distribution<Index> blocks(1, max_total >= 2 ? 2 : 1);
  std::uniform_real_distribution<double> w(0.2, 1.0);
  const Index m = blocks(rng);
  std::uniform_int_distribution<Index> dim(1, max_total / m);
  TracialAncilla a;
  for (Index s = 0; s < m; ++s) {
    a.block_dims.push_back(dim(rng));
    a.trace_weights.push_back(w(rng));
  }
  const double sum = std::accumulate(a.trace_weights.begin(), a.trace_weights.end(), 0.0);
  for (auto& x : a.trace_weights) x /= sum;
  return a;
}

/// <(A (x) B) chi, chi> with the full tensor product formed explicitly.
inline cplx naive_expectation(const CMatrix& a, const CMatrix& b, const CVector& chi) {
  return chi.dot(naive_kron(a, b) * chi);
}

/// Exhaustive chromatic number: tries every map V -> [c] for growing c.
inline int brute_chromatic(const ClassicalGraph& g) {
  const int n = g.vertices;
  if (n == 0) return 0;
  for (int c = 1; c <= n; ++c) {
    std::vector<int> col(static_cast<std::size_t>(n), 0);
    while (true) {
      bool ok = true;
      for (const auto& [a, b] : g.edges) ok = ok && col[a] != col[b];
      if (ok) return c;
      int pos = 0;
      while (pos < n && ++col[pos] == c) col[pos++] = 0;
      if (pos == n) break;
    }
  }
  return n;
}

/// All graphs on n vertices up to isomorphism; the representative is the
/// smallest edge bitmask over all vertex relabelings.
inline std::vector<ClassicalGraph> graphs_up_to_iso(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  const int m = static_cast<int>(pairs.size());
  auto pair_index = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    return static_cast<int>(std::find(pairs.begin(), pairs.end(), std::make_pair(a, b)) - pairs.begin());
  };
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::vector<bool> seen(static_cast<std::size_t>(1) << m, false);
  std::vector<ClassicalGraph> out;
  for (long mask = 0; mask < (1L << m); ++mask) {
    std::iota(perm.begin(), perm.end(), 0);
    long canon = mask;
    do {
      long img = 0;
      for (int e = 0; e < m; ++e)
        if (mask >> e & 1) img |= 1L << pair_index(perm[pairs[e].first], perm[pairs[e].second]);
      canon = std::min(canon, img);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (seen[static_cast<std::size_t>(canon)]) continue;
    seen[static_cast<std::size_t>(canon)] = true;
    ClassicalGraph g{n, {}};
    for (int e = 0; e < m; ++e)
      if (canon >> e & 1) g.edges.push_back(pairs[e]);
    out.push_back(g);
  }
  return out;
}

/// Gaussian integers, for exact arithmetic on the 4th roots of unity.
struct GaussInt {
  long long re = 0, im = 0;
  GaussInt operator+(GaussInt o) const { return {re + o.re, im + o.im}; }
  GaussInt operator*(GaussInt o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  bool operator==(const GaussInt&) const = default;
};

/// i^m for m mod 4.
inline GaussInt ipow(long long m) {
  static const GaussInt table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((m % 4) + 4) % 4];
}

}  // namespace qtest
