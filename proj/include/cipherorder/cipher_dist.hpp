#pragma once

#include "cipherorder/group.hpp"
#include "cipherorder/rational.hpp"

#include <vector>

namespace cipherorder {

/// Exact probability distribution of a G-cipher, one mass per group element
/// in the group's canonical order.
class CipherDist {
public:
  /// Validates nonnegativity, length and unit total. Throws std::invalid_argument.
  CipherDist(GroupTable group, std::vector<Rational> mass);

  const GroupTable& group() const noexcept { return group_; }
  std::span<const Rational> masses() const noexcept { return mass_; }
  const Rational& mass(ElementIndex i) const { return mass_.at(i); }
  const Rational& mass_of(const Permutation& g) const { return mass_.at(group_.require_index(g)); }

  friend bool operator==(const CipherDist& a, const CipherDist& b) {
    return a.group_ == b.group_ && a.mass_ == b.mass_;
  }

private:
  GroupTable group_;
  std::vector<Rational> mass_;
};

/// x = Σ α_i z_i with z_i confined to the left coset λ_iK of the double coset HπK.
struct TripleDecomposition {
  std::vector<Rational> weights;
  std::vector<CipherDist> parts;
  /// λ_i: minimal element of the left coset of K carrying parts[i].
  std::vector<Permutation> coset_reps;
  /// h_i: minimal element of the coset h_iS of S = H ∩ πKπ⁻¹ in H feeding parts[i].
  std::vector<Permutation> h_reps;
  std::size_t m = 0;
  /// |H ∩ πKπ⁻¹|
  std::size_t stabilizer_order = 0;
};

CipherDist uniform_on(const GroupTable& group, const IndexSet& subset);
CipherDist uniform_on(const GroupTable& group, const GroupTable& subgroup);
/// Uniform on the left coset rep·H.
CipherDist uniform_on_coset(const GroupTable& group, const Permutation& rep, const GroupTable& subgroup);

CipherDist deterministic(const GroupTable& group, const Permutation& g);

/// Distribution of the product XY where X ~ x, Y ~ y and Y acts first:
/// z(g) = Σ_h x(gh⁻¹) y(h).
CipherDist convolve(const CipherDist& x, const CipherDist& y);

/// Left translation (g·x)(f) = x(g⁻¹f); equivalently convolve(deterministic(g), x).
CipherDist translate(const Permutation& g, const CipherDist& x);

/// Indices with strictly positive mass.
IndexSet support(const CipherDist& x);

/// Splits x * δ_π * z over the left cosets of K in HπK.
///
/// x must be supported in H, z in K. Cosets that receive no mass from x are
/// still emitted (weight 0, uniform part) so `m` always equals [H : H ∩ πKπ⁻¹].
TripleDecomposition triple_decompose(const GroupTable& H, const CipherDist& x, const Permutation& pi,
                                     const GroupTable& K, const CipherDist& z);

}  // namespace cipherorder
