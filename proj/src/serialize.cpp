#include "qgraph/serialize.hpp"

#include <fstream>
#include <sstream>

namespace qgraph::io {

namespace {

std::string child(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

const json& field(const json& j, const std::string& ptr, const char* key) {
  if (!j.is_object()) throw SchemaError(ptr, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(child(ptr, key), "missing required field");
  return *it;
}

const json& array_field(const json& j, const std::string& ptr, const char* key) {
  const json& v = field(j, ptr, key);
  if (!v.is_array()) throw SchemaError(child(ptr, key), "expected an array");
  return v;
}

long long integer(const json& j, const std::string& ptr, long long min = 0) {
  if (!j.is_number_integer()) throw SchemaError(ptr, "expected an integer");
  const auto v = j.get<long long>();
  if (v < min) throw SchemaError(ptr, "integer below " + std::to_string(min));
  return v;
}

double real(const json& j, const std::string& ptr) {
  if (!j.is_number()) throw SchemaError(ptr, "expected a number");
  return j.get<double>();
}

json witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  auto idx = [](int v) -> json { return v < 0 ? json(nullptr) : json(v); };
  return {{"a", idx(w->a)}, {"b", idx(w->b)}, {"basis_index", idx(w->basis_index)}};
}

std::vector<CMatrix> matrix_list(const json& j, const std::string& ptr) {
  if (!j.is_array()) throw SchemaError(ptr, "expected an array of matrices");
  std::vector<CMatrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(matrix_from_json(j[i], child(ptr, i)));
  return out;
}

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const CMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const VnAlgebra& m) {
  json blocks = json::array();
  for (const auto& b : m.blocks()) blocks.push_back({{"mult", b.mult}, {"dim", b.dim}});
  return {{"n", m.n()}, {"blocks", blocks}, {"unitary", m.unitary() ? to_json(*m.unitary()) : json(nullptr)}};
}

json to_json(const QuantumGraph& g) {
  json s = json::array();
  for (const auto& y : g.s_basis) s.push_back(to_json(y));
  return {{"n", g.n}, {"algebra", to_json(g.algebra)}, {"s_basis", s}, {"traceless", g.traceless}};
}

json to_json(const ClassicalGraph& g) {
  json e = json::array();
  for (const auto& [a, b] : g.edges) e.push_back({a, b});
  return {{"vertices", g.vertices}, {"edges", e}};
}

json to_json(const TracialAncilla& a) { return {{"block_dims", a.block_dims}, {"trace_weights", a.trace_weights}}; }

json to_json(const BlockStrategy& s) {
  json p = json::array();
  for (const auto& m : s.projections) p.push_back(to_json(m));
  return {{"n", s.n}, {"c", s.c}, {"ancilla", to_json(s.ancilla)}, {"projections", p}};
}

json to_json(const TensorStrategy& t) {
  json a = json::array(), b = json::array(), st = json::array();
  for (const auto& m : t.alice) a.push_back(to_json(m));
  for (const auto& m : t.bob) b.push_back(to_json(m));
  for (Index i = 0; i < t.state.size(); ++i) st.push_back(to_json(t.state(i)));
  return {{"n", t.n}, {"c", t.c}, {"dims", {t.dim_a, t.dim_b}}, {"alice", a}, {"bob", b}, {"state", st}};
}

json to_json(const Correlation& x) {
  json outer = json::array();
  for (Index a = 0; a < x.c; ++a) {
    json ja = json::array();
    for (Index b = 0; b < x.c; ++b) {
      json jb = json::array();
      for (Index i = 0; i < x.n; ++i) {
        json ji = json::array();
        for (Index j = 0; j < x.n; ++j) {
          json jj = json::array();
          for (Index k = 0; k < x.n; ++k) {
            json jk = json::array();
            for (Index l = 0; l < x.n; ++l) jk.push_back(to_json(x.at(a, b, i, j, k, l)));
            jj.push_back(std::move(jk));
          }
          ji.push_back(std::move(jj));
        }
        jb.push_back(std::move(ji));
      }
      ja.push_back(std::move(jb));
    }
    outer.push_back(std::move(ja));
  }
  return {{"n", x.n}, {"c", x.c}, {"X", outer}};
}

json to_json(const ClassicalCorrelation& p) {
  json outer = json::array();
  for (Index a = 0; a < p.c; ++a) {
    json ja = json::array();
    for (Index b = 0; b < p.c; ++b) {
      json jb = json::array();
      for (Index x = 0; x < p.n; ++x) {
        json jx = json::array();
        for (Index y = 0; y < p.n; ++y) jx.push_back(p.at(a, b, x, y));
        jb.push_back(std::move(jx));
      }
      ja.push_back(std::move(jb));
    }
    outer.push_back(std::move(ja));
  }
  return {{"n", p.n}, {"c", p.c}, {"p", outer}};
}

json to_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"max_residual", c.max_residual}, {"witness", witness_json(c.witness)}});
  return {{"pass", r.pass}, {"checks", checks}};
}

json to_json(const EdgeBasis& eb) {
  json el = json::array();
  for (const auto& e : eb.elements)
    el.push_back({{"kind", e.kind == EdgeKind::same_vertex ? "same_vertex" : "adjacency"},
                  {"subspaces", {e.first, e.second}},
                  {"matrix", to_json(e.y)}});
  return {{"count", eb.elements.size()},
          {"same_vertex", eb.count(EdgeKind::same_vertex)},
          {"adjacency", eb.count(EdgeKind::adjacency)},
          {"elements", el}};
}

json to_json(const ChannelRep& ch) {
  json kraus = json::array();
  for (std::size_t i = 0; i < ch.kraus.size(); ++i) kraus.push_back({{"outcome", ch.outcome[i]}, {"matrix", to_json(ch.kraus[i])}});
  return {{"kraus_count", ch.kraus.size()}, {"kraus", kraus}, {"choi", to_json(ch.choi)}, {"report", to_json(ch.report)}};
}

json to_json(const RigidityReport& r) {
  json psi = json::array(), total = json::array(), blocks = json::array();
  for (const auto& m : r.psi) psi.push_back(to_json(m));
  for (const auto& m : r.r_total) total.push_back(to_json(m));
  for (const auto& row : r.r_blocks) {
    json jr = json::array();
    for (const auto& m : row) jr.push_back(to_json(m));
    blocks.push_back(std::move(jr));
  }
  return {{"psi", psi}, {"R", total}, {"R_blocks", blocks}, {"report", to_json(r.report)}};
}

json to_json(const BoundsReport& b) {
  json bounds = json::array();
  for (const auto& x : b.bounds)
    bounds.push_back({{"model", x.model},
                      {"colors", x.colors},
                      {"exact", x.exact},
                      {"construction", x.construction},
                      {"verification", to_json(x.verification)},
                      {"witness", to_json(x.witness)}});
  auto opt = [](const std::optional<int>& v) { return v ? json(*v) : json(nullptr); };
  return {{"bounds", bounds},
          {"best", {{"q", opt(b.best("q"))}, {"loc", opt(b.best("loc"))}}},
          {"classical", b.classical ? to_json(*b.classical) : json(nullptr)},
          {"notes", b.notes}};
}

json to_json(const MeasurementReport& m) {
  return {{"is_povm", m.is_povm},     {"is_pvm", m.is_pvm},           {"hermiticity", m.hermiticity},
          {"positivity", m.positivity}, {"completeness", m.completeness}, {"idempotence", m.idempotence},
          {"orthogonality", m.orthogonality}};
}

cplx complex_from_json(const json& j, const std::string& ptr) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw SchemaError(ptr, "expected a complex number [re, im]");
  return {real(j[0], child(ptr, 0)), real(j[1], child(ptr, 1))};
}

CMatrix matrix_from_json(const json& j, const std::string& ptr) {
  if (!j.is_array() || j.empty()) throw SchemaError(ptr, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw SchemaError(child(ptr, 0), "expected a non-empty row");
  const std::size_t cols = j[0].size();
  CMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    const auto rp = child(ptr, i);
    if (!j[i].is_array() || j[i].size() != cols) throw SchemaError(rp, "row length differs from the first row");
    for (std::size_t k = 0; k < cols; ++k) m(static_cast<Index>(i), static_cast<Index>(k)) = complex_from_json(j[i][k], child(rp, k));
  }
  return m;
}

std::vector<CMatrix> matrices_from_json(const json& j, const std::string& ptr) { return matrix_list(j, ptr); }

VnAlgebra algebra_from_json(const json& j, const std::string& ptr) {
  if (j.is_object() && j.contains("generators") && !j.contains("blocks")) {
    auto gens = matrix_list(j["generators"], child(ptr, "generators"));
    if (gens.empty()) throw SchemaError(child(ptr, "generators"), "empty generating set");
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i].rows() != gens[i].cols() || gens[i].rows() != gens[0].rows())
        throw SchemaError(child(child(ptr, "generators"), i), "generators must be square of equal size");
    if (j.contains("n") && integer(j["n"], child(ptr, "n"), 1) != gens[0].rows())
      throw SchemaError(child(ptr, "n"), "generator size differs from n");
    return normal_form(gens).algebra;
  }
  const auto n = integer(field(j, ptr, "n"), child(ptr, "n"), 1);
  const json& jb = array_field(j, ptr, "blocks");
  std::vector<AlgebraBlock> blocks;
  for (std::size_t r = 0; r < jb.size(); ++r) {
    const auto bp = child(child(ptr, "blocks"), r);
    blocks.push_back({integer(field(jb[r], bp, "mult"), child(bp, "mult"), 1), integer(field(jb[r], bp, "dim"), child(bp, "dim"), 1)});
  }
  if (blocks.empty()) throw SchemaError(child(ptr, "blocks"), "at least one block is required");
  Index total = 0;
  for (const auto& b : blocks) total += b.mult * b.dim;
  if (total != n) throw SchemaError(child(ptr, "blocks"), "sum of mult*dim differs from n");
  std::optional<CMatrix> u;
  if (j.contains("unitary") && !j["unitary"].is_null()) {
    u = matrix_from_json(j["unitary"], child(ptr, "unitary"));
    if (u->rows() != n || u->cols() != n) throw SchemaError(child(ptr, "unitary"), "unitary is not n x n");
  }
  return VnAlgebra(blocks, u);
}

QuantumGraph graph_from_json(const json& j, const std::string& ptr) {
  const auto n = integer(field(j, ptr, "n"), child(ptr, "n"), 1);
  VnAlgebra alg = algebra_from_json(field(j, ptr, "algebra"), child(ptr, "algebra"));
  if (alg.n() != n) throw SchemaError(child(child(ptr, "algebra"), "n"), "algebra dimension differs from n");
  auto s = matrix_list(array_field(j, ptr, "s_basis"), child(ptr, "s_basis"));
  if (s.empty()) throw SchemaError(child(ptr, "s_basis"), "empty spanning set");
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i].rows() != n || s[i].cols() != n) throw SchemaError(child(child(ptr, "s_basis"), i), "matrix is not n x n");
  bool traceless = false;
  if (j.contains("traceless")) {
    if (!j["traceless"].is_boolean()) throw SchemaError(child(ptr, "traceless"), "expected a boolean");
    traceless = j["traceless"].get<bool>();
  }
  return {n, std::move(alg), std::move(s), traceless};
}

ClassicalGraph classical_graph_from_json(const json& j, const std::string& ptr) {
  ClassicalGraph g;
  g.vertices = static_cast<int>(integer(field(j, ptr, "vertices"), child(ptr, "vertices"), 0));
  const json& je = array_field(j, ptr, "edges");
  for (std::size_t e = 0; e < je.size(); ++e) {
    const auto ep = child(child(ptr, "edges"), e);
    if (!je[e].is_array() || je[e].size() != 2) throw SchemaError(ep, "expected a pair of vertices");
    const auto a = integer(je[e][0], child(ep, 0)), b = integer(je[e][1], child(ep, 1));
    if (a >= g.vertices || b >= g.vertices) throw SchemaError(ep, "vertex out of range");
    if (a == b) throw SchemaError(ep, "loops are not allowed");
    g.edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
  }
  return g;
}

TracialAncilla ancilla_from_json(const json& j, const std::string& ptr) {
  const json& jd = array_field(j, ptr, "block_dims");
  std::vector<Index> dims;
  for (std::size_t s = 0; s < jd.size(); ++s) dims.push_back(integer(jd[s], child(child(ptr, "block_dims"), s), 1));
  if (dims.empty()) throw SchemaError(child(ptr, "block_dims"), "at least one block is required");
  if (!j.contains("trace_weights") || j["trace_weights"].is_null()) return TracialAncilla::with_dims(dims);
  const json& jw = array_field(j, ptr, "trace_weights");
  if (jw.size() != dims.size()) throw SchemaError(child(ptr, "trace_weights"), "length differs from block_dims");
  TracialAncilla a{dims, {}};
  for (std::size_t s = 0; s < jw.size(); ++s) {
    const double w = real(jw[s], child(child(ptr, "trace_weights"), s));
    if (!(w > 0.0)) throw SchemaError(child(child(ptr, "trace_weights"), s), "weight must be positive");
    a.trace_weights.push_back(w);
  }
  return a;
}

BlockStrategy strategy_from_json(const json& j, const std::string& ptr) {
  BlockStrategy s;
  s.n = integer(field(j, ptr, "n"), child(ptr, "n"), 1);
  s.c = integer(field(j, ptr, "c"), child(ptr, "c"), 1);
  s.ancilla = ancilla_from_json(field(j, ptr, "ancilla"), child(ptr, "ancilla"));
  s.projections = matrix_list(array_field(j, ptr, "projections"), child(ptr, "projections"));
  if (static_cast<Index>(s.projections.size()) != s.c) throw SchemaError(child(ptr, "projections"), "expected c matrices");
  const Index size = s.n * s.ancilla.dim();
  for (std::size_t a = 0; a < s.projections.size(); ++a)
    if (s.projections[a].rows() != size || s.projections[a].cols() != size)
      throw SchemaError(child(child(ptr, "projections"), a), "matrix size is not n * sum(block_dims)");
  return s;
}

TensorStrategy tensor_strategy_from_json(const json& j, const std::string& ptr) {
  TensorStrategy t;
  t.n = integer(field(j, ptr, "n"), child(ptr, "n"), 1);
  t.c = integer(field(j, ptr, "c"), child(ptr, "c"), 1);
  const json& dims = array_field(j, ptr, "dims");
  if (dims.size() != 2) throw SchemaError(child(ptr, "dims"), "expected [dim_a, dim_b]");
  t.dim_a = integer(dims[0], child(child(ptr, "dims"), 0), 1);
  t.dim_b = integer(dims[1], child(child(ptr, "dims"), 1), 1);
  t.alice = matrix_list(array_field(j, ptr, "alice"), child(ptr, "alice"));
  t.bob = matrix_list(array_field(j, ptr, "bob"), child(ptr, "bob"));
  const json& st = array_field(j, ptr, "state");
  t.state.resize(static_cast<Index>(st.size()));
  for (std::size_t i = 0; i < st.size(); ++i) t.state(static_cast<Index>(i)) = complex_from_json(st[i], child(child(ptr, "state"), i));
  try {
    t.check_shapes();
  } catch (const ShapeError& e) {
    throw SchemaError(ptr, e.what());
  }
  return t;
}

Correlation correlation_from_json(const json& j, const std::string& ptr) {
  const auto n = integer(field(j, ptr, "n"), child(ptr, "n"), 1);
  const auto c = integer(field(j, ptr, "c"), child(ptr, "c"), 1);
  Correlation x(n, c);
  const json& jx = array_field(j, ptr, "X");
  std::string p0 = child(ptr, "X");
  auto expect = [](const json& v, const std::string& p, long long len) {
    if (!v.is_array() || static_cast<long long>(v.size()) != len) throw SchemaError(p, "expected an array of length " + std::to_string(len));
  };
  expect(jx, p0, c);
  for (Index a = 0; a < c; ++a) {
    const auto pa = child(p0, a);
    expect(jx[a], pa, c);
    for (Index b = 0; b < c; ++b) {
      const auto pb = child(pa, b);
      expect(jx[a][b], pb, n);
      for (Index i = 0; i < n; ++i) {
        const auto pi = child(pb, i);
        expect(jx[a][b][i], pi, n);
        for (Index jj = 0; jj < n; ++jj) {
          const auto pj = child(pi, jj);
          expect(jx[a][b][i][jj], pj, n);
          for (Index k = 0; k < n; ++k) {
            const auto pk = child(pj, k);
            expect(jx[a][b][i][jj][k], pk, n);
            for (Index l = 0; l < n; ++l) x.at(a, b, i, jj, k, l) = complex_from_json(jx[a][b][i][jj][k][l], child(pk, l));
          }
        }
      }
    }
  }
  return x;
}

ClassicalCorrelation classical_correlation_from_json(const json& j, const std::string& ptr) {
  const auto n = integer(field(j, ptr, "n"), child(ptr, "n"), 1);
  const auto c = integer(field(j, ptr, "c"), child(ptr, "c"), 1);
  ClassicalCorrelation p(n, c);
  const json& jp = array_field(j, ptr, "p");
  const std::string p0 = child(ptr, "p");
  auto expect = [](const json& v, const std::string& pp, long long len) {
    if (!v.is_array() || static_cast<long long>(v.size()) != len) throw SchemaError(pp, "expected an array of length " + std::to_string(len));
  };
  expect(jp, p0, c);
  for (Index a = 0; a < c; ++a) {
    expect(jp[a], child(p0, a), c);
    for (Index b = 0; b < c; ++b) {
      const auto pb = child(child(p0, a), b);
      expect(jp[a][b], pb, n);
      for (Index x = 0; x < n; ++x) {
        expect(jp[a][b][x], child(pb, x), n);
        for (Index y = 0; y < n; ++y) p.at(a, b, x, y) = real(jp[a][b][x][y], child(child(pb, x), y));
      }
    }
  }
  return p;
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ShapeError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ShapeError(path + ": invalid JSON: " + e.what());
  }
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace qgraph::io
