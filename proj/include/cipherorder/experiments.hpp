#pragma once

#include "cipherorder/q_security.hpp"
#include "cipherorder/scenario.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cipherorder {

/// One computed quantity against the value the corresponding result predicts.
struct Check {
  std::string quantity;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct MetricRow {
  std::string metric;
  std::string left;
  std::string right;
};

struct ExperimentResult {
  std::string id;
  /// π ∈ H: the product collapses and the experiment's premise does not hold.
  bool degenerate = false;
  std::vector<Check> checks;
  std::string left_label, right_label;
  std::vector<MetricRow> metrics;
  std::vector<NamedDist> distributions;
  std::optional<ComparisonReport> comparison;

  bool passed() const;
  const CipherDist& distribution(const std::string& name) const;
};

/// T = XYZ versus D = XZ with X, Z uniform on H and Y fixed at π.
ExperimentResult run_expand(const GroupTable& G, const GroupTable& H, const Permutation& pi, std::size_t q_max);

/// T = XYZ versus D = XZ with X, Z uniform on πH and Y fixed at π⁻¹.
ExperimentResult run_collapse(const GroupTable& G, const GroupTable& H, const Permutation& pi, std::size_t q_max);

/// E = X_{r+1}Y_r X_r ⋯ Y_1X_1 versus X = X_{r+1}⋯X_1 for every round count 1..rounds,
/// X_i uniform on πH and Y_i fixed at π⁻¹.
ExperimentResult run_general_collapse(const GroupTable& G, const GroupTable& H, const Permutation& pi,
                                      std::size_t rounds);

/// X, Z uniform on the stabilizer of 2ⁿ inside Sym(2ⁿ+1), Y the shift i ↦ i+1 mod 2ⁿ+1.
/// Throws std::length_error when Sym(2ⁿ+1) exceeds `cap`.
ExperimentResult run_amplifier(std::size_t n, std::size_t cap = kDefaultGroupCap);

ExperimentResult run_comparison(const Scenario& s, const ComparisonSpec& spec);

/// Every comparison then every experiment, in declaration order.
std::vector<ExperimentResult> run_scenario(const Scenario& s);

}  // namespace cipherorder
