#pragma once

#include "cipherorder/permutation.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace cipherorder {

inline constexpr std::size_t kDefaultGroupCap = 50'000;

using ElementIndex = std::size_t;
using IndexSet = std::vector<ElementIndex>;  // kept sorted ascending

/// A fully enumerated finite permutation group.
///
/// Elements are stored in lexicographic order of their image sequences, so the
/// same group always enumerates identically regardless of how it was generated.
/// Copies are cheap and share the immutable element table.
class GroupTable {
public:
  /// The trivial group on one point.
  GroupTable();

  /// Takes an element list already known to be a group (closed, contains identity).
  /// Sorts it and builds the index. Not validated beyond degree agreement.
  static GroupTable from_closed_elements(std::size_t degree, std::vector<Permutation> elements);

  std::size_t degree() const noexcept { return data_->degree; }
  std::size_t size() const noexcept { return data_->elements.size(); }
  std::span<const Permutation> elements() const noexcept { return data_->elements; }
  const Permutation& element(ElementIndex i) const { return data_->elements.at(i); }

  std::optional<ElementIndex> index_of(const Permutation& g) const;
  /// Like index_of but throws std::invalid_argument naming the permutation.
  ElementIndex require_index(const Permutation& g) const;
  bool contains(const Permutation& g) const { return index_of(g).has_value(); }

  ElementIndex identity_index() const noexcept { return data_->identity; }

  /// Index of element(i)∘element(j).
  ElementIndex product_index(ElementIndex i, ElementIndex j) const;

  /// Parent-table indices of the elements of `sub`. Throws if any element is missing.
  IndexSet indices_of(const GroupTable& sub) const;

  bool is_subgroup_of(const GroupTable& parent) const;

  bool same_table(const GroupTable& other) const noexcept { return data_ == other.data_; }
  friend bool operator==(const GroupTable& a, const GroupTable& b);

private:
  struct Data {
    std::size_t degree = 0;
    std::vector<Permutation> elements;
    std::unordered_map<Permutation, ElementIndex, PermutationHash> index;
    ElementIndex identity = 0;
  };
  explicit GroupTable(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

/// Left cosets gH of a subgroup H in G.
struct CosetDecomposition {
  GroupTable parent;
  GroupTable subgroup;
  /// Lexicographically minimal member of each block, in increasing order.
  std::vector<Permutation> transversal;
  /// Parent indices of transversal[i]·H, sorted.
  std::vector<IndexSet> blocks;
  /// block_of[g] is the block containing parent element g.
  std::vector<std::size_t> block_of;
};

/// HπK split into left cosets of K.
struct DoubleCoset {
  IndexSet elements;
  /// Minimal representative λ_i of each left coset λ_iK, increasing.
  std::vector<Permutation> representatives;
  std::vector<IndexSet> blocks;
  /// Number of left cosets of K in HπK; equals |H| / |H ∩ πKπ⁻¹|.
  std::size_t m = 0;
  /// |H ∩ πKπ⁻¹|
  std::size_t intersection_order = 0;
};

/// Enumerates the group generated by `generators`. Throws std::length_error when
/// the group exceeds `cap` elements and std::invalid_argument on an empty set or
/// mixed degrees.
GroupTable closure(std::span<const Permutation> generators, std::size_t cap = kDefaultGroupCap);

/// Throws std::invalid_argument unless H ≤ G.
CosetDecomposition left_cosets(const GroupTable& G, const GroupTable& H);

/// {πkπ⁻¹ : k ∈ K}
GroupTable conjugate_subgroup(const Permutation& pi, const GroupTable& K);

GroupTable intersect(const GroupTable& A, const GroupTable& B);

DoubleCoset double_coset(const GroupTable& G, const GroupTable& H, const Permutation& pi, const GroupTable& K);

/// Pointwise stabilizer of a tuple of distinct points.
GroupTable stabilizer(const GroupTable& G, std::span<const Point> points);

/// Full symmetric group on {0..m-1}.
GroupTable symmetric_group(std::size_t m, std::size_t cap = kDefaultGroupCap);
/// Cyclic group generated by i ↦ i+1 mod m.
GroupTable cyclic_group(std::size_t m, std::size_t cap = kDefaultGroupCap);
/// Symmetric group on {0..m-1} \ {fixed}, acting on all m points.
GroupTable point_stabilizer_group(std::size_t m, Point fixed, std::size_t cap = kDefaultGroupCap);

/// Parses "sym(m)", "cyclic(m)", "stab(m, t)" or "gen([[...],[...]])".
GroupTable parse_group_spec(const std::string& spec, std::size_t cap = kDefaultGroupCap);

}  // namespace cipherorder
