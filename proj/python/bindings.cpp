#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qgraph/cli.hpp"
#include "qgraph/coloring.hpp"
#include "qgraph/correlation.hpp"
#include "qgraph/homgame.hpp"
#include "qgraph/serialize.hpp"

namespace py = pybind11;
using namespace qgraph;
using qgraph::io::json;

namespace {

// Reports and other result records cross the boundary as plain dicts.
py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_py(const py::object& o) { return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>()); }

Tolerance tol_of(double eps) { return Tolerance(eps); }

std::vector<AlgebraBlock> blocks_of(const std::vector<std::pair<Index, Index>>& b) {
  std::vector<AlgebraBlock> out;
  for (const auto& [mult, dim] : b) out.push_back({mult, dim});
  return out;
}

GameInstance game(const QuantumGraph& g, const ClassicalGraph& h) { return {g, h}; }

}  // namespace

PYBIND11_MODULE(_qgraph, m) {
  m.doc() = "Quantum graphs, homomorphism games and quantum colorings";

  static py::exception<Error> base(m, "Error");
  static py::exception<ShapeError> shape(m, "ShapeError", base.ptr());
  static py::exception<DomainError> domain(m, "DomainError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const io::SchemaError& e) {
      py::set_error(shape, (e.pointer() + ": " + e.what()).c_str());
    } catch (const ShapeError& e) {
      py::set_error(shape, e.what());
    } catch (const DomainError& e) {
      py::set_error(domain, e.what());
    }
  });

  py::class_<VnAlgebra>(m, "VnAlgebra")
      .def(py::init([](const std::vector<std::pair<Index, Index>>& blocks, std::optional<CMatrix> u) {
             return VnAlgebra(blocks_of(blocks), std::move(u));
           }),
           py::arg("blocks"), py::arg("unitary") = std::nullopt)
      .def_static("full", &VnAlgebra::full)
      .def_static("diagonal", &VnAlgebra::diagonal)
      .def_property_readonly("n", &VnAlgebra::n)
      .def_property_readonly("dim", &VnAlgebra::dim)
      .def_property_readonly("blocks",
                             [](const VnAlgebra& a) {
                               std::vector<std::pair<Index, Index>> out;
                               for (const auto& b : a.blocks()) out.emplace_back(b.mult, b.dim);
                               return out;
                             })
      .def_property_readonly("unitary", &VnAlgebra::unitary)
      .def_property_readonly("abelian", &VnAlgebra::abelian)
      .def("basis", &VnAlgebra::basis)
      .def("central_projections", &VnAlgebra::central_projections)
      .def("to_dict", [](const VnAlgebra& a) { return to_py(io::to_json(a)); })
      .def("__repr__", [](const VnAlgebra& a) { return "VnAlgebra(" + io::to_json(a)["blocks"].dump() + ")"; });

  py::class_<ClassicalGraph>(m, "ClassicalGraph")
      .def(py::init([](int v, std::vector<std::pair<int, int>> e) {
             ClassicalGraph g{v, std::move(e)};
             g.check();
             return g;
           }),
           py::arg("vertices"), py::arg("edges"))
      .def_readonly("vertices", &ClassicalGraph::vertices)
      .def_readonly("edges", &ClassicalGraph::edges)
      .def("adjacent", &ClassicalGraph::adjacent);

  py::class_<QuantumGraph>(m, "QuantumGraph")
      .def(py::init([](const VnAlgebra& a, std::vector<CMatrix> s, bool traceless) {
             return QuantumGraph{a.n(), a, std::move(s), traceless};
           }),
           py::arg("algebra"), py::arg("s_basis"), py::arg("traceless") = false)
      .def_readonly("n", &QuantumGraph::n)
      .def_readonly("algebra", &QuantumGraph::algebra)
      .def_readonly("s_basis", &QuantumGraph::s_basis)
      .def_readonly("traceless", &QuantumGraph::traceless)
      .def("to_dict", [](const QuantumGraph& g) { return to_py(io::to_json(g)); });

  py::class_<TracialAncilla>(m, "TracialAncilla")
      .def(py::init([](std::vector<Index> dims, std::optional<std::vector<double>> w) {
             if (!w) return TracialAncilla::with_dims(std::move(dims));
             TracialAncilla a{std::move(dims), std::move(*w)};
             a.check();
             return a;
           }),
           py::arg("block_dims"), py::arg("trace_weights") = std::nullopt)
      .def_readonly("block_dims", &TracialAncilla::block_dims)
      .def_readonly("trace_weights", &TracialAncilla::trace_weights)
      .def_property_readonly("dim", &TracialAncilla::dim)
      .def("trace", &TracialAncilla::trace);

  py::class_<BlockStrategy>(m, "BlockStrategy")
      .def(py::init([](Index n, const TracialAncilla& anc, std::vector<CMatrix> p) {
             BlockStrategy s{n, static_cast<Index>(p.size()), anc, std::move(p)};
             s.check_shapes();
             return s;
           }),
           py::arg("n"), py::arg("ancilla"), py::arg("projections"))
      .def_readonly("n", &BlockStrategy::n)
      .def_readonly("c", &BlockStrategy::c)
      .def_readonly("ancilla", &BlockStrategy::ancilla)
      .def_readonly("projections", &BlockStrategy::projections)
      .def("cell", &BlockStrategy::cell)
      .def("to_dict", [](const BlockStrategy& s) { return to_py(io::to_json(s)); });

  py::class_<TensorStrategy>(m, "TensorStrategy")
      .def_readonly("n", &TensorStrategy::n)
      .def_readonly("c", &TensorStrategy::c)
      .def_readonly("alice", &TensorStrategy::alice)
      .def_readonly("bob", &TensorStrategy::bob)
      .def_readonly("state", &TensorStrategy::state)
      .def("to_dict", [](const TensorStrategy& t) { return to_py(io::to_json(t)); });

  py::class_<Correlation>(m, "Correlation")
      .def_readonly("n", &Correlation::n)
      .def_readonly("c", &Correlation::c)
      .def("at", [](const Correlation& x, Index a, Index b, Index i, Index j, Index k, Index l) { return x.at(a, b, i, j, k, l); })
      .def("to_dict", [](const Correlation& x) { return to_py(io::to_json(x)); });

  py::class_<ClassicalCorrelation>(m, "ClassicalCorrelation")
      .def_readonly("n", &ClassicalCorrelation::n)
      .def_readonly("c", &ClassicalCorrelation::c)
      .def("at", [](const ClassicalCorrelation& p, Index a, Index b, Index x, Index y) { return p.at(a, b, x, y); })
      .def("to_dict", [](const ClassicalCorrelation& p) { return to_py(io::to_json(p)); });

  // algebra
  m.def("normal_form", [](const std::vector<CMatrix>& g, double eps) {
    auto nf = normal_form(g, tol_of(eps));
    return py::make_tuple(nf.algebra, nf.unitary);
  }, py::arg("generators"), py::arg("tol") = 1e-9);
  m.def("commutant", &commutant);
  m.def("plancherel_weights", [](const VnAlgebra& a) { return plancherel(a).weights; });

  // graphs
  m.def("complete_graph", &complete_graph);
  m.def("cycle_graph", &cycle_graph);
  m.def("graph_operator_system", &graph_operator_system);
  m.def("complete_quantum_graph", &complete_quantum_graph);
  m.def("chromatic_number", [](const ClassicalGraph& g) { return chromatic_number(g); });
  m.def("validate", [](const QuantumGraph& g, double eps) { return to_py(io::to_json(validate(g, tol_of(eps)))); },
        py::arg("graph"), py::arg("tol") = 1e-9);
  m.def("edge_basis", [](const QuantumGraph& g, double eps) { return to_py(io::to_json(edge_basis(g, tol_of(eps)))); },
        py::arg("graph"), py::arg("tol") = 1e-9);
  m.def("vectorize", [](const CMatrix& y, std::optional<CMatrix> b) { return vectorize(y, b); }, py::arg("y"),
        py::arg("basis") = std::nullopt);
  m.def("bell_state", &bell_state);

  // strategies
  m.def("check_block_strategy", [](const BlockStrategy& s, double eps) { return to_py(io::to_json(check_block_strategy(s, tol_of(eps)))); },
        py::arg("strategy"), py::arg("tol") = 1e-9);
  m.def("dilate_povm", [](const std::vector<CMatrix>& q, double eps) { return dilate_povm(q, tol_of(eps)); }, py::arg("povm"),
        py::arg("tol") = 1e-9);
  m.def("dilate_block_povm", [](const std::vector<CMatrix>& q, Index n, double eps) { return dilate_block_povm(q, n, tol_of(eps)); },
        py::arg("povm"), py::arg("n"), py::arg("tol") = 1e-9);
  m.def("pvm_to_unitary", [](const std::vector<CMatrix>& p, double eps) { return pvm_to_unitary(p, tol_of(eps)); }, py::arg("pvm"),
        py::arg("tol") = 1e-9);
  m.def("unitary_to_pvm", [](const CMatrix& u, Index c, double eps) { return unitary_to_pvm(u, c, tol_of(eps)); }, py::arg("u"),
        py::arg("c"), py::arg("tol") = 1e-9);
  m.def("round_almost_pvm", [](const std::vector<CMatrix>& p, double eps) {
    const auto r = round_almost_pvm(p, tol_of(eps));
    return py::make_tuple(r.projections, r.distance);
  }, py::arg("ops"), py::arg("tol") = 1e-9);
  m.def("bob_from_alice", &bob_from_alice);

  // correlations
  m.def("correlation_from_trace", &correlation_from_trace);
  m.def("correlation_from_tensor", &correlation_from_tensor);
  m.def("outcome_probability", [](const BlockStrategy& s, const CMatrix& y) { return outcome_probability(s, y); });
  m.def("check_synchronous", [](const Correlation& x, double eps) { return to_py(io::to_json(check_synchronous(x, tol_of(eps)))); },
        py::arg("x"), py::arg("tol") = 1e-9);
  m.def("synchronous_identities", [](const Correlation& x, double eps) { return to_py(io::to_json(synchronous_identities(x, tol_of(eps)))); },
        py::arg("x"), py::arg("tol") = 1e-9);
  m.def("compress_to_classical", [](const Correlation& x) { return compress_to_classical(x); });
  m.def("embed_correlation", &embed_correlation);
  m.def("check_bisynchronous", [](const ClassicalCorrelation& p, double eps) { return to_py(io::to_json(check_bisynchronous(p, tol_of(eps)))); },
        py::arg("p"), py::arg("tol") = 1e-9);

  // homomorphism game
  m.def("verify_structural", [](const QuantumGraph& g, const ClassicalGraph& h, const BlockStrategy& s, double eps) {
    return to_py(io::to_json(verify_structural(game(g, h), s, tol_of(eps))));
  }, py::arg("source"), py::arg("target"), py::arg("strategy"), py::arg("tol") = 1e-9);
  m.def("verify_operational", [](const QuantumGraph& g, const ClassicalGraph& h, const BlockStrategy& s, double eps) {
    return to_py(io::to_json(verify_operational(game(g, h), s, tol_of(eps))));
  }, py::arg("source"), py::arg("target"), py::arg("strategy"), py::arg("tol") = 1e-9);
  m.def("check_game_algebra_rep", [](const QuantumGraph& g, const ClassicalGraph& h, const BlockStrategy& s, double eps) {
    return to_py(io::to_json(check_game_algebra_rep(game(g, h), s, tol_of(eps))));
  }, py::arg("source"), py::arg("target"), py::arg("strategy"), py::arg("tol") = 1e-9);
  m.def("extract_channel", [](const QuantumGraph& g, const ClassicalGraph& h, const BlockStrategy& s, double eps) {
    return to_py(io::to_json(extract_channel(game(g, h), s, tol_of(eps))));
  }, py::arg("source"), py::arg("target"), py::arg("strategy"), py::arg("tol") = 1e-9);

  // colorings
  m.def("teleport_coloring", &teleport_coloring, py::arg("d"), py::arg("k"));
  m.def("shift_multiply_coloring", &shift_multiply_coloring);
  m.def("abelian_loc_coloring", &abelian_loc_coloring);
  m.def("loc_residual", &loc_residual);
  m.def("rigidity_check", [](const BlockStrategy& s, const VnAlgebra& a, double eps) {
    return to_py(io::to_json(rigidity_check(s, a, tol_of(eps))));
  }, py::arg("strategy"), py::arg("algebra"), py::arg("tol") = 1e-9);
  m.def("chromatic_bounds", [](const QuantumGraph& g, double eps) { return to_py(io::to_json(chromatic_bounds(g, tol_of(eps)))); },
        py::arg("graph"), py::arg("tol") = 1e-9);

  // JSON documents in the CLI formats
  m.def("algebra_from_dict", [](const py::object& o) { return io::algebra_from_json(from_py(o)); });
  m.def("graph_from_dict", [](const py::object& o) { return io::graph_from_json(from_py(o)); });
  m.def("classical_graph_from_dict", [](const py::object& o) { return io::classical_graph_from_json(from_py(o)); });
  m.def("strategy_from_dict", [](const py::object& o) { return io::strategy_from_json(from_py(o)); });
  m.def("tensor_strategy_from_dict", [](const py::object& o) { return io::tensor_strategy_from_json(from_py(o)); });
  m.def("correlation_from_dict", [](const py::object& o) { return io::correlation_from_json(from_py(o)); });
  m.def("classical_correlation_from_dict", [](const py::object& o) { return io::classical_correlation_from_json(from_py(o)); });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
