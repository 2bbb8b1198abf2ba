#include "qgraph/correlation.hpp"

#include <algorithm>
#include <cmath>

namespace qgraph {

Correlation::Correlation(Index n_, Index c_) : n(n_), c(c_) {
  check_shape();
  x.assign(static_cast<std::size_t>(c * c * n * n * n * n), cplx{0.0, 0.0});
}

std::size_t Correlation::index(Index a, Index b, Index i, Index j, Index k, Index l) const {
  return static_cast<std::size_t>(((((a * c + b) * n + i) * n + j) * n + k) * n + l);
}

void Correlation::check_shape() const {
  if (n < 1 || c < 1) throw ShapeError("correlation: n and c must be >= 1");
  if (!x.empty() && x.size() != static_cast<std::size_t>(c * c * n * n * n * n))
    throw ShapeError("correlation: tensor size is not c^2 n^4");
}

ClassicalCorrelation::ClassicalCorrelation(Index n_, Index c_) : n(n_), c(c_) {
  check_shape();
  p.assign(static_cast<std::size_t>(c * c * n * n), 0.0);
}

std::size_t ClassicalCorrelation::index(Index a, Index b, Index x, Index y) const {
  return static_cast<std::size_t>(((a * c + b) * n + x) * n + y);
}

void ClassicalCorrelation::check_shape() const {
  if (n < 1 || c < 1) throw ShapeError("classical correlation: n and c must be >= 1");
  if (!p.empty() && p.size() != static_cast<std::size_t>(c * c * n * n))
    throw ShapeError("classical correlation: table size is not c^2 n^2");
}

Correlation correlation_from_trace(const BlockStrategy& s) {
  s.check_shapes();
  const Index n = s.n, c = s.c;
  Correlation out(n, c);
  std::vector<CMatrix> cells;  // (a, i, j)
  for (Index a = 0; a < c; ++a)
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) cells.push_back(s.cell(a, i, j));
  auto cell = [&](Index a, Index i, Index j) -> const CMatrix& { return cells[static_cast<std::size_t>((a * n + i) * n + j)]; };

  for (Index a = 0; a < c; ++a)
    for (Index b = 0; b < c; ++b)
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
          for (Index k = 0; k < n; ++k)
            for (Index l = 0; l < n; ++l)
              out.at(a, b, i, j, k, l) = s.ancilla.trace(cell(a, i, j) * cell(b, k, l).adjoint());
  return out;
}

Correlation correlation_from_tensor(const TensorStrategy& t) {
  t.check_shapes();
  const Index n = t.n, c = t.c;
  Correlation out(n, c);
  // chi as a dim_a x dim_b coefficient matrix C: <(A (x) B) chi, chi> = sum (C^* A C) .* B.
  CMatrix coeff(t.dim_a, t.dim_b);
  for (Index p = 0; p < t.dim_a; ++p)
    for (Index q = 0; q < t.dim_b; ++q) coeff(p, q) = t.state(p * t.dim_b + q);

  std::vector<CMatrix> left;  // (a, i, j)
  for (Index a = 0; a < c; ++a)
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) left.push_back(coeff.adjoint() * t.alice_cell(a, i, j) * coeff);
  std::vector<CMatrix> right;  // (b, k, l)
  for (Index b = 0; b < c; ++b)
    for (Index k = 0; k < n; ++k)
      for (Index l = 0; l < n; ++l) right.push_back(t.bob_cell(b, k, l));

  for (Index a = 0; a < c; ++a)
    for (Index b = 0; b < c; ++b)
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
          for (Index k = 0; k < n; ++k)
            for (Index l = 0; l < n; ++l)
              out.at(a, b, i, j, k, l) = left[static_cast<std::size_t>((a * n + i) * n + j)]
                                             .cwiseProduct(right[static_cast<std::size_t>((b * n + k) * n + l)])
                                             .sum();
  return out;
}

Eigen::MatrixXd outcome_probability(const BlockStrategy& s, const CMatrix& y, Tolerance tol) {
  s.check_shapes(tol);
  if (y.rows() != s.n || y.cols() != s.n) throw ShapeError("outcome_probability: input is not n x n");
  if (std::abs(y.norm() - 1.0) > tol.eps) throw DomainError("outcome_probability: input state is not a unit vector");
  const Index d = s.ancilla_dim();
  const CMatrix yy = kron(y, identity(d));

  // P_a (Y x 1) P_b (Y x 1)^* P_a = M M^* with M = P_a (Y x 1) P_b, so the
  // trace is a weighted sum of squared row norms: nonnegative, and free of
  // the cancellation a direct trace suffers when p is tiny.
  RVector weight(s.n * d);
  for (std::size_t b = 0; b < s.ancilla.block_dims.size(); ++b) {
    const Index ds = s.ancilla.block_dims[b], off = s.ancilla.offset(b);
    for (Index i = 0; i < s.n; ++i)
      weight.segment(i * d + off, ds).setConstant(s.ancilla.trace_weights[b] / static_cast<double>(ds));
  }

  Eigen::MatrixXd p(s.c, s.c);
  for (Index a = 0; a < s.c; ++a) {
    const CMatrix left = s.projections[static_cast<std::size_t>(a)] * yy;
    for (Index b = 0; b < s.c; ++b) {
      const CMatrix m = left * s.projections[static_cast<std::size_t>(b)];
      p(a, b) = weight.dot(m.rowwise().squaredNorm());
    }
  }
  return p;
}

cplx total_mass(const Correlation& x) {
  cplx t = 0.0;
  for (Index a = 0; a < x.c; ++a)
    for (Index b = 0; b < x.c; ++b)
      for (Index i = 0; i < x.n; ++i)
        for (Index j = 0; j < x.n; ++j) t += x.at(a, b, i, j, i, j);
  return t;
}

Report check_synchronous(const Correlation& x, Tolerance tol) {
  x.check_shape();
  Report rep;
  cplx diag = 0.0;
  for (Index a = 0; a < x.c; ++a)
    for (Index i = 0; i < x.n; ++i)
      for (Index j = 0; j < x.n; ++j) diag += x.at(a, a, i, j, i, j);
  rep.add(make_check("normalization", std::abs(diag / static_cast<double>(x.n) - 1.0), tol.eps));

  double worst = 0.0;
  Witness w;
  for (Index a = 0; a < x.c; ++a)
    for (Index b = 0; b < x.c; ++b) {
      if (a == b) continue;
      cplx s = 0.0;
      for (Index i = 0; i < x.n; ++i)
        for (Index j = 0; j < x.n; ++j) s += x.at(a, b, i, j, i, j);
      if (std::abs(s) > worst) worst = std::abs(s), w = {static_cast<int>(a), static_cast<int>(b), -1};
    }
  rep.add(make_check("orthogonality", worst, tol.eps, w));
  return rep;
}

Report synchronous_identities(const Correlation& x, Tolerance tol) {
  x.check_shape();
  const Index n = x.n, c = x.c;
  auto flat = [n](Index i, Index j) { return static_cast<int>(i * n + j); };
  Report rep;

  // (1) X^{(a,b)}_{(i,i),(j,j)} >= 0: report the worst negative real part
  // or imaginary part.
  double worst = 0.0;
  Witness w;
  for (Index a = 0; a < c; ++a)
    for (Index b = 0; b < c; ++b)
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
          const cplx v = x.at(a, b, i, i, j, j);
          const double r = std::max(std::max(0.0, -v.real()), std::abs(v.imag()));
          if (r > worst) worst = r, w = {static_cast<int>(a), static_cast<int>(b), flat(i, j)};
        }
  rep.add(make_check("positivity", worst, tol.eps, w));

  // (2) X^{(a,b)}_{(i,j),(k,l)} = conj X^{(a,b)}_{(j,i),(l,k)}.
  worst = 0.0;
  w = {};
  for (Index a = 0; a < c; ++a)
    for (Index b = 0; b < c; ++b)
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
          for (Index k = 0; k < n; ++k)
            for (Index l = 0; l < n; ++l) {
              const double r = std::abs(x.at(a, b, i, j, k, l) - std::conj(x.at(a, b, j, i, l, k)));
              if (r > worst) worst = r, w = {static_cast<int>(a), static_cast<int>(b), flat(i, j)};
            }
  rep.add(make_check("hermiticity", worst, tol.eps, w));

  // (3) for a != b both partial sums over the shared index vanish.
  worst = 0.0;
  w = {};
  for (Index a = 0; a < c; ++a)
    for (Index b = 0; b < c; ++b) {
      if (a == b) continue;
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
          cplx s1 = 0.0, s2 = 0.0;
          for (Index k = 0; k < n; ++k) {
            s1 += x.at(a, b, i, k, j, k);
            s2 += x.at(a, b, k, i, k, j);
          }
          const double r = std::max(std::abs(s1), std::abs(s2));
          if (r > worst) worst = r, w = {static_cast<int>(a), static_cast<int>(b), flat(i, j)};
        }
    }
  rep.add(make_check("marginals", worst, tol.eps, w));

  // (4) sum_a sum_k X^{(a,a)}_{(i,k),(j,k)} = delta_ij.
  worst = 0.0;
  w = {};
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (Index a = 0; a < c; ++a)
        for (Index k = 0; k < n; ++k) s += x.at(a, a, i, k, j, k);
      const double r = std::abs(s - (i == j ? 1.0 : 0.0));
      if (r > worst) worst = r, w = {-1, -1, flat(i, j)};
    }
  rep.add(make_check("completeness", worst, tol.eps, w));
  return rep;
}

std::vector<CMatrix> embed_classical(const std::vector<std::vector<CMatrix>>& families, Tolerance tol) {
  if (families.empty()) throw ShapeError("embed_classical: no input families");
  const std::size_t c = families.front().size();
  if (c == 0) throw ShapeError("embed_classical: empty family");
  const Index h = families.front().front().rows();
  for (const auto& f : families) {
    if (f.size() != c) throw ShapeError("embed_classical: families differ in output count");
    for (const auto& e : f)
      if (e.rows() != h || e.cols() != h) throw ShapeError("embed_classical: operators differ in size");
    if (!check_measurement(f, tol).is_povm) throw DomainError("embed_classical: family is not a POVM");
  }
  const auto n = static_cast<Index>(families.size());
  std::vector<CMatrix> p(c, CMatrix::Zero(n * h, n * h));
  for (Index x = 0; x < n; ++x)
    for (std::size_t a = 0; a < c; ++a) p[a].block(x * h, x * h, h, h) = families[static_cast<std::size_t>(x)][a];
  return p;
}

Correlation embed_correlation(const ClassicalCorrelation& p) {
  p.check_shape();
  Correlation x(p.n, p.c);
  for (Index a = 0; a < p.c; ++a)
    for (Index b = 0; b < p.c; ++b)
      for (Index i = 0; i < p.n; ++i)
        for (Index k = 0; k < p.n; ++k) x.at(a, b, i, i, k, k) = p.at(a, b, i, k);
  return x;
}

ClassicalCorrelation compress_to_classical(const Correlation& x, Tolerance tol) {
  x.check_shape();
  ClassicalCorrelation p(x.n, x.c);
  for (Index a = 0; a < x.c; ++a)
    for (Index b = 0; b < x.c; ++b)
      for (Index i = 0; i < x.n; ++i)
        for (Index k = 0; k < x.n; ++k) {
          const cplx v = x.at(a, b, i, i, k, k);
          if (std::abs(v.imag()) > tol.eps) throw DomainError("compress_to_classical: diagonal entry is not real");
          p.at(a, b, i, k) = v.real();
        }
  return p;
}

Report check_bisynchronous(const ClassicalCorrelation& p, Tolerance tol) {
  p.check_shape();
  Report rep;
  double worst = 0.0;
  Witness w;
  for (Index x = 0; x < p.n; ++x)
    for (Index y = 0; y < p.n; ++y) {
      double s = 0.0;
      for (Index a = 0; a < p.c; ++a)
        for (Index b = 0; b < p.c; ++b) s += p.at(a, b, x, y);
      if (std::abs(s - 1.0) > worst) worst = std::abs(s - 1.0), w = {-1, -1, static_cast<int>(x * p.n + y)};
    }
  rep.add(make_check("normalization", worst, tol.eps, w));

  worst = 0.0;
  w = {};
  for (Index x = 0; x < p.n; ++x)
    for (Index a = 0; a < p.c; ++a)
      for (Index b = 0; b < p.c; ++b)
        if (a != b && std::abs(p.at(a, b, x, x)) > worst)
          worst = std::abs(p.at(a, b, x, x)), w = {static_cast<int>(a), static_cast<int>(b), static_cast<int>(x * p.n + x)};
  rep.add(make_check("synchronous", worst, tol.eps, w));

  worst = 0.0;
  w = {};
  for (Index x = 0; x < p.n; ++x)
    for (Index y = 0; y < p.n; ++y)
      for (Index a = 0; a < p.c; ++a)
        if (x != y && std::abs(p.at(a, a, x, y)) > worst)
          worst = std::abs(p.at(a, a, x, y)), w = {static_cast<int>(a), static_cast<int>(a), static_cast<int>(x * p.n + y)};
  rep.add(make_check("bisynchronous", worst, tol.eps, w));
  return rep;
}

}  // namespace qgraph
