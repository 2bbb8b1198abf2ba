#pragma once

// JSON encodings of every artifact. Complex scalars are [re, im], matrices
// row-major nested arrays. Parse errors carry the JSON pointer of the
// offending field.

#include <string>
#include <vector>

#include <json.hpp>

#include "qgraph/algebra.hpp"
#include "qgraph/coloring.hpp"
#include "qgraph/correlation.hpp"
#include "qgraph/graph.hpp"
#include "qgraph/homgame.hpp"
#include "qgraph/report.hpp"
#include "qgraph/strategy.hpp"

namespace qgraph::io {

using json = nlohmann::json;

class SchemaError : public ShapeError {
 public:
  SchemaError(const std::string& pointer, const std::string& what)
      : ShapeError(what + " at " + (pointer.empty() ? std::string("/") : pointer)), pointer_(pointer) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

json to_json(cplx z);
json to_json(const CMatrix& m);
json to_json(const VnAlgebra& m);
json to_json(const QuantumGraph& g);
json to_json(const ClassicalGraph& g);
json to_json(const TracialAncilla& a);
json to_json(const BlockStrategy& s);
json to_json(const TensorStrategy& t);
json to_json(const Correlation& x);
json to_json(const ClassicalCorrelation& p);
json to_json(const Report& r);
json to_json(const EdgeBasis& eb);
json to_json(const ChannelRep& ch);
json to_json(const RigidityReport& r);
json to_json(const BoundsReport& b);
json to_json(const MeasurementReport& m);

// `ptr` is the JSON pointer of `j` inside the document being read.
cplx complex_from_json(const json& j, const std::string& ptr = "");
CMatrix matrix_from_json(const json& j, const std::string& ptr = "");
std::vector<CMatrix> matrices_from_json(const json& j, const std::string& ptr = "");
VnAlgebra algebra_from_json(const json& j, const std::string& ptr = "");
QuantumGraph graph_from_json(const json& j, const std::string& ptr = "");
ClassicalGraph classical_graph_from_json(const json& j, const std::string& ptr = "");
TracialAncilla ancilla_from_json(const json& j, const std::string& ptr = "");
BlockStrategy strategy_from_json(const json& j, const std::string& ptr = "");
TensorStrategy tensor_strategy_from_json(const json& j, const std::string& ptr = "");
Correlation correlation_from_json(const json& j, const std::string& ptr = "");
ClassicalCorrelation classical_correlation_from_json(const json& j, const std::string& ptr = "");

json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);

}  // namespace qgraph::io
