#include "cipherorder/metrics.hpp"

#include "cipherorder/majorization.hpp"

#include <algorithm>
#include <stdexcept>

namespace cipherorder {

namespace {

void validate(std::span<const Rational> x, Normalization n) {
  Rational total = 0;
  for (const auto& v : x) {
    if (v < 0) throw std::invalid_argument("metric input has negative entry " + to_string(v));
    total += v;
  }
  if (n == Normalization::Strict && total != 1)
    throw std::invalid_argument("metric input sums to " + to_string(total) + ", not 1");
}

void validate_alpha(const Rational& alpha) {
  if (alpha <= 0 || alpha > 1) throw std::invalid_argument("alpha must lie in (0, 1], got " + to_string(alpha));
}

Real log2(const Real& v) { return boost::multiprecision::log(v) / boost::multiprecision::log(Real(2)); }

}  // namespace

Real shannon_entropy(std::span<const Rational> x, Normalization n) {
  validate(x, n);
  Real h = 0;
  for (const auto& v : x) {
    if (v == 0) continue;
    const Real r = to_real(v);
    h -= r * log2(r);
  }
  return h;
}

Rational renyi_power_sum(std::span<const Rational> x, unsigned order) {
  Rational s = 0;
  for (const auto& v : x) {
    Rational p = 1;
    for (unsigned i = 0; i < order; ++i) p *= v;
    s += p;
  }
  return s;
}

Real renyi_entropy(std::span<const Rational> x, const Rational& order, Normalization n) {
  validate(x, n);
  if (order <= 0 || order == 1) throw std::invalid_argument("Renyi order must be positive and != 1");
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Real s = 0;
  if (denominator(order) == 1 && order <= 64) {
    s = to_real(renyi_power_sum(x, numerator(order).convert_to<unsigned>()));
  } else {
    const Real a = to_real(order);
    for (const auto& v : x)
      if (v > 0) s += boost::multiprecision::pow(to_real(v), a);
  }
  return log2(s) / (1 - to_real(order));
}

Rational guesswork(std::span<const Rational> x, Normalization n) {
  validate(x, n);
  const auto xs = decreasing(x);
  Rational w = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) w += Rational(static_cast<long>(i + 1)) * xs[i];
  return w;
}

std::size_t marginal_guesswork(std::span<const Rational> x, const Rational& alpha, Normalization n) {
  validate(x, n);
  validate_alpha(alpha);
  const auto xs = decreasing(x);
  Rational cumulative = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    cumulative += xs[i];
    if (cumulative >= alpha) return i + 1;
  }
  throw std::invalid_argument("total mass " + to_string(cumulative) + " never reaches alpha " + to_string(alpha));
}

Rational alpha_guesswork(std::span<const Rational> x, const Rational& alpha, Normalization n) {
  const std::size_t w = marginal_guesswork(x, alpha, n);
  const auto xs = decreasing(x);
  Rational covered = 0, partial = 0;
  for (std::size_t i = 0; i < w; ++i) {
    covered += xs[i];
    partial += Rational(static_cast<long>(i + 1)) * xs[i];
  }
  const Rational wr(static_cast<long>(w));
  return wr - wr * covered + partial;
}

Rational variation_to_uniform_decreasing(std::span<const Rational> x) {
  if (x.empty()) return 0;
  const Rational inv_n(1, static_cast<long>(x.size()));
  const auto xs = decreasing(x);
  Rational top = 0;
  std::size_t k = 0;
  while (k < xs.size() && xs[k] >= inv_n) top += xs[k++];
  return top - Rational(static_cast<long>(k)) * inv_n;
}

Rational variation_to_uniform_increasing(std::span<const Rational> x) {
  if (x.empty()) return 0;
  const Rational inv_n(1, static_cast<long>(x.size()));
  auto xs = std::vector<Rational>(x.begin(), x.end());
  std::sort(xs.begin(), xs.end());
  Rational bottom = 0;
  std::size_t q = 0;
  while (q < xs.size() && xs[q] <= inv_n) bottom += xs[q++];
  return Rational(static_cast<long>(q)) * inv_n - bottom;
}

Rational variation_to_uniform(std::span<const Rational> x, Normalization n) {
  validate(x, n);
  Rational d = variation_to_uniform_decreasing(x);
  if (n == Normalization::Strict && d != variation_to_uniform_increasing(x))
    throw std::logic_error("variation distance closed forms disagree");
  return d;
}

std::string MetricValue::name() const {
  std::string base;
  switch (kind) {
    case MetricKind::ShannonEntropy: base = "shannon_entropy"; break;
    case MetricKind::RenyiEntropy: base = "renyi_entropy"; break;
    case MetricKind::Guesswork: base = "guesswork"; break;
    case MetricKind::MarginalGuesswork: base = "marginal_guesswork"; break;
    case MetricKind::AlphaGuesswork: base = "alpha_guesswork"; break;
    case MetricKind::VariationToUniform: base = "variation_to_uniform"; break;
  }
  if (parameter) base += "(" + to_string(*parameter) + ")";
  return base;
}

std::string MetricValue::value_string() const {
  if (const auto* r = std::get_if<Rational>(&value)) return to_string(*r);
  return to_string(std::get<Real>(value));
}

std::vector<MetricValue> all_metrics(std::span<const Rational> x, const Rational& alpha, const Rational& renyi_order) {
  Real shannon = shannon_entropy(x);
  Real renyi = renyi_entropy(x, renyi_order);
  Rational guesses = guesswork(x);
  Rational marginal(static_cast<long>(marginal_guesswork(x, alpha)));
  Rational alpha_guesses = alpha_guesswork(x, alpha);
  Rational distance = variation_to_uniform(x);

  std::vector<MetricValue> out;
  out.push_back({MetricKind::ShannonEntropy, std::nullopt, std::move(shannon)});
  out.push_back({MetricKind::RenyiEntropy, renyi_order, std::move(renyi)});
  out.push_back({MetricKind::Guesswork, std::nullopt, std::move(guesses)});
  out.push_back({MetricKind::MarginalGuesswork, alpha, std::move(marginal)});
  out.push_back({MetricKind::AlphaGuesswork, alpha, std::move(alpha_guesses)});
  out.push_back({MetricKind::VariationToUniform, std::nullopt, std::move(distance)});
  return out;
}

}  // namespace cipherorder
