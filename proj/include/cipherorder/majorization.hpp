#pragma once

#include "cipherorder/permutation.hpp"
#include "cipherorder/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cipherorder {

enum class Relation {
  EqualUpToPermutation,
  StrictlyBelow,  // x ≺ y
  Below,          // x ⪯ y, strictness unknown or mixed (used when aggregating)
  StrictlyAbove,
  Above,
  Incomparable,
  NormMismatch,
};

std::string to_string(Relation r);
Relation mirror(Relation r);
/// x ⪯ y holds for this verdict.
bool is_below(Relation r);
bool is_above(Relation r);

struct MajorizationVerdict {
  Relation relation = Relation::EqualUpToPermutation;
  /// Incomparable only: 1-based prefix lengths k with Σx↓ > Σy↓ and with Σx↓ < Σy↓ (first of each).
  std::optional<std::pair<std::size_t, std::size_t>> witness_prefix;
};

using Matrix = std::vector<std::vector<Rational>>;

/// One Birkhoff term: weight · P where P[i][perm[i]] = 1, so (P·y)_i = y_{perm[i]}.
struct BirkhoffTerm {
  Rational weight;
  Permutation perm;
};

struct DoublyStochasticWitness {
  /// x = matrix · y on the zero-padded inputs, in their original order.
  Matrix matrix;
  std::vector<BirkhoffTerm> decomposition;
  /// Number of T-transforms composed into the matrix (at most n-1).
  std::size_t t_transforms = 0;
};

/// Decides x versus y under majorization. Unequal lengths are zero-padded.
/// Throws std::invalid_argument on negative entries.
MajorizationVerdict compare(std::span<const Rational> x, std::span<const Rational> y);

/// Doubly-stochastic D with x = D y, built as a product of T-transforms.
/// Throws std::invalid_argument unless x ⪯ y.
DoublyStochasticWitness hlp_witness(std::span<const Rational> x, std::span<const Rational> y);

/// Convex combination of permutation matrices reproducing D exactly, extracted
/// greedily along maximum-bottleneck perfect matchings. Throws
/// std::invalid_argument unless D is square, nonnegative and doubly stochastic.
std::vector<BirkhoffTerm> birkhoff_decompose(const Matrix& D);

Matrix identity_matrix(std::size_t n);
std::vector<Rational> multiply(const Matrix& D, std::span<const Rational> y);
Matrix reconstruct(const std::vector<BirkhoffTerm>& terms, std::size_t n);
bool is_doubly_stochastic(const Matrix& D);

/// Copy sorted decreasingly.
std::vector<Rational> decreasing(std::span<const Rational> x);

}  // namespace cipherorder
