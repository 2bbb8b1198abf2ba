#pragma once

#include <optional>
#include <string>
#include <vector>

namespace qgraph {

/// Indices of a violated relation; -1 marks a field that does not apply.
struct Witness {
  int a = -1;
  int b = -1;
  int basis_index = -1;
};

struct Check {
  std::string name;
  bool pass = true;
  double max_residual = 0.0;
  std::optional<Witness> witness;
};

/// Pass/fail per named check with the worst residual seen.
struct Report {
  bool pass = true;
  std::vector<Check> checks;

  void add(Check c) {
    pass = pass && c.pass;
    checks.push_back(std::move(c));
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  double worst_residual() const {
    double w = 0.0;
    for (const auto& c : checks) w = c.max_residual > w ? c.max_residual : w;
    return w;
  }
};

/// Builds a check from a residual against a threshold; failing checks keep
/// the witness, passing ones drop it.
inline Check make_check(std::string name, double residual, double eps, Witness w = {}) {
  Check c{std::move(name), residual <= eps, residual, std::nullopt};
  if (!c.pass && (w.a >= 0 || w.b >= 0 || w.basis_index >= 0)) c.witness = w;
  return c;
}

}  // namespace qgraph
