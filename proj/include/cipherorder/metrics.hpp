#pragma once

#include "cipherorder/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace cipherorder {

/// Strict: inputs must be probability vectors. Unnormalized: nonnegative
/// sub-distributions are accepted as-is (used for summed coset profiles).
enum class Normalization { Strict, Unnormalized };

/// Absolute tolerance for comparing entropies computed in `Real`.
inline constexpr double kEntropyTolerance = 1e-12;

/// Shannon entropy in bits, 0·log 0 = 0.
Real shannon_entropy(std::span<const Rational> x, Normalization n = Normalization::Strict);

/// Rényi entropy in bits; order must be positive and not 1.
Real renyi_entropy(std::span<const Rational> x, const Rational& order, Normalization n = Normalization::Strict);

/// Σ x_i^order for integral order >= 2, exact. Rényi entropy is a decreasing
/// function of this sum, which gives a tie-free comparison.
Rational renyi_power_sum(std::span<const Rational> x, unsigned order);

/// Σ i·x_[i] over the decreasing rearrangement.
Rational guesswork(std::span<const Rational> x, Normalization n = Normalization::Strict);

/// min{ i : x_[1] + ... + x_[i] >= α }, α in (0, 1].
std::size_t marginal_guesswork(std::span<const Rational> x, const Rational& alpha,
                               Normalization n = Normalization::Strict);

/// α-guesswork: w_α − w_α·Σ_{i≤w_α} x_[i] + Σ_{i≤w_α} i·x_[i].
Rational alpha_guesswork(std::span<const Rational> x, const Rational& alpha, Normalization n = Normalization::Strict);

/// Total variation distance to the uniform vector of the same length,
/// Σ_{i≤k} x_[i] − k/n with k = max{ i : x_[i] >= 1/n }. Cross-checked
/// against variation_to_uniform_increasing; throws std::logic_error if they differ.
Rational variation_to_uniform(std::span<const Rational> x, Normalization n = Normalization::Strict);
Rational variation_to_uniform_decreasing(std::span<const Rational> x);
/// q/n − Σ_{i≤q} x_(i) over the increasing rearrangement, q = max{ i : x_(i) <= 1/n }.
Rational variation_to_uniform_increasing(std::span<const Rational> x);

enum class MetricKind { ShannonEntropy, RenyiEntropy, Guesswork, MarginalGuesswork, AlphaGuesswork, VariationToUniform };

struct MetricValue {
  MetricKind kind;
  std::optional<Rational> parameter;
  std::variant<Rational, Real> value;

  /// e.g. "renyi_entropy(2)"
  std::string name() const;
  /// Exact "p/q" for rational metrics, 15 decimals for entropies.
  std::string value_string() const;
};

/// Every metric on x, using the given α and Rényi order.
std::vector<MetricValue> all_metrics(std::span<const Rational> x, const Rational& alpha, const Rational& renyi_order);

}  // namespace cipherorder
