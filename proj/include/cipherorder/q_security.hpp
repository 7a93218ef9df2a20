#pragma once

#include "cipherorder/cipher_dist.hpp"
#include "cipherorder/majorization.hpp"

#include <string>
#include <vector>

namespace cipherorder {

/// An ordered tuple of distinct plaintexts (message indices).
class PlaintextTuple {
public:
  PlaintextTuple() = default;
  /// Throws std::invalid_argument on repeated points or points >= message_count.
  PlaintextTuple(std::vector<Point> points, std::size_t message_count);

  std::span<const Point> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  /// "(0,2)"
  std::string str() const;

  friend bool operator==(const PlaintextTuple&, const PlaintextTuple&) = default;

private:
  std::vector<Point> points_;
};

/// A cipher seen through the ciphertexts of a plaintext tuple p. Left cosets of
/// H = Stab_G(p) are exactly the sets of permutations that agree on p.
struct ImageProjection {
  PlaintextTuple tuple;
  GroupTable stabilizer;
  /// Canonical left transversal of H in G; coset i is transversal[i]·H.
  std::vector<Permutation> transversal;
  /// x(g_iH) for each coset.
  std::vector<Rational> coset_masses;
  /// Masses inside each coset, sorted decreasingly, length |H|.
  std::vector<std::vector<Rational>> coset_profiles;

  /// Componentwise sum of the sorted profiles.
  std::vector<Rational> profile_sum() const;
};

/// All ordered q-tuples of distinct points of {0..m-1}, lexicographic. Needs 1 <= q <= m.
std::vector<PlaintextTuple> distinct_tuples(std::size_t m, std::size_t q);

ImageProjection project(const CipherDist& x, const PlaintextTuple& p);

/// Variation distance of the coset masses from uniform over the [G:H] cosets.
Rational ncpa_advantage(const CipherDist& x, const PlaintextTuple& p);

struct AdvantageWitness {
  Rational value;
  PlaintextTuple tuple;
};

/// Best nonadaptive q-query advantage; ties go to the lexicographically first tuple.
AdvantageWitness max_ncpa_advantage(const CipherDist& x, std::size_t q);

/// Expected number of guesses for the realized permutation after seeing its images of p.
Rational conditional_guesswork(const CipherDist& x, const PlaintextTuple& p);

/// Same quantity by grouping permutations on their ciphertext tuple directly.
Rational conditional_guesswork_oracle(const CipherDist& x, const PlaintextTuple& p);

enum class SecurityOrder { Equal, LeftMoreSecure, RightMoreSecure, Mixed };
std::string to_string(SecurityOrder o);

struct TupleComparison {
  PlaintextTuple tuple;
  Rational advantage_left, advantage_right;
  Rational guesswork_left, guesswork_right;
  /// Left versus right on coset masses (advantage projection).
  MajorizationVerdict coset_verdict;
  /// Left versus right on summed sorted profiles (guesswork projection).
  MajorizationVerdict profile_verdict;
};

struct ComparisonLevel {
  std::size_t q = 0;
  std::vector<TupleComparison> tuples;
  AdvantageWitness max_advantage_left, max_advantage_right;
  /// Smallest conditional guesswork over tuples.
  Rational worst_guesswork_left, worst_guesswork_right;
  /// Coset-mass verdicts aggregated over every tuple.
  Relation coset_relation = Relation::EqualUpToPermutation;
  /// Summed-profile verdicts aggregated over every tuple.
  Relation profile_relation = Relation::EqualUpToPermutation;
  SecurityOrder order = SecurityOrder::Equal;
};

struct ComparisonReport {
  std::string left_name, right_name;
  std::vector<ComparisonLevel> levels;
  SecurityOrder overall = SecurityOrder::Equal;
};

/// Compares two ciphers on the same group at data complexities 0..q_max.
/// q = 0 uses the empty tuple, i.e. plain majorization of the distributions.
ComparisonReport compare_q(const CipherDist& left, const CipherDist& right, std::size_t q_max,
                           std::string left_name = "left", std::string right_name = "right");

/// Folds per-tuple verdicts into one relation (Below when strict and equal cases mix).
Relation aggregate(std::span<const Relation> relations);

}  // namespace cipherorder
