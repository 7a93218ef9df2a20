#pragma once

#include "cipherorder/cipher_dist.hpp"
#include "cipherorder/q_security.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cipherorder {

/// Scenario text could not be turned into a valid Scenario. The message names
/// the offending line (syntax errors) or field path (everything else).
class ScenarioError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind { Expand, Collapse, GeneralCollapse, Amplifier };

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::Expand;
  std::optional<GroupTable> subgroup;
  std::optional<Permutation> pi;
  std::size_t rounds = 1;
  std::size_t n = 1;
};

struct ComparisonSpec {
  std::string left, right;
  std::optional<SecurityOrder> expect;
};

struct NamedDist {
  std::string name;
  CipherDist dist;
};

/// A parsed, validated scenario. Products are already evaluated; `ciphers`
/// holds the declared ciphers followed by the products in declaration order.
struct Scenario {
  std::size_t message_count = 0;
  std::string group_spec;
  GroupTable group;
  std::vector<NamedDist> ciphers;
  /// name → factor names, leftmost applied last.
  std::vector<std::pair<std::string, std::vector<std::string>>> products;
  std::vector<ComparisonSpec> comparisons;
  std::vector<ExperimentSpec> experiments;
  std::size_t q_max = 1;

  /// Throws ScenarioError naming the missing cipher.
  const CipherDist& distribution(const std::string& name) const;
};

/// Parses the JSON scenario format:
///
///   {
///     "message_count": 3,
///     "group": "sym(3)",
///     "ciphers": { "X": {"uniform_on": "gen([[1,0,2]])"},
///                  "Y": {"deterministic": [0,2,1]},
///                  "C": {"coset": {"rep": [0,2,1], "subgroup": "stab(3,2)"}} },
///     "products": { "T": ["X","Y","X"] },
///     "compare": [ {"left": "T", "right": "X", "expect": "left-more-secure"} ],
///     "experiments": [ {"kind": "expand", "subgroup": "gen([[1,0,2]])", "pi": [0,2,1]} ],
///     "q_max": 2
///   }
///
/// "uniform_on" also accepts an explicit list of permutations.
Scenario parse_scenario(const std::string& text);

}  // namespace cipherorder
