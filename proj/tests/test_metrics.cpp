#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cipherorder/majorization.hpp"
#include "cipherorder/metrics.hpp"
#include "test_support.hpp"

#include <algorithm>

using namespace cipherorder;
using namespace cipherorder::testing;

namespace {

bool near(const Real& a, const Real& b) { return boost::multiprecision::abs(a - b) <= Real(kEntropyTolerance); }

Real bits(double v) { return Real(v); }

Real log2_of(const Rational& v) { return boost::multiprecision::log(to_real(v)) / boost::multiprecision::log(Real(2)); }

// (1 − c)·w_α + ∫₀^c w_β dβ with c the mass of the first w_α guesses. The
// integrand is a step function, so the integral is a sum of rectangles whose
// heights are sampled at interval midpoints.
Rational alpha_guesswork_integral(const std::vector<Rational>& x, const Rational& alpha) {
  const std::size_t w = marginal_guesswork(x, alpha);
  const auto xs = decreasing(x);
  Rational c = 0;
  for (std::size_t i = 0; i < w; ++i) c += xs[i];
  Rational integral = 0, lo = 0;
  for (std::size_t i = 0; i < w; ++i) {
    const Rational hi = lo + xs[i];
    if (hi > lo) {
      const Rational mid = (lo + hi) / 2;
      integral += (hi - lo) * Rational(static_cast<long>(marginal_guesswork(x, mid)));
    }
    lo = hi;
  }
  return (1 - c) * Rational(static_cast<long>(w)) + integral;
}

Rational half_l1_to_uniform(const std::vector<Rational>& x) {
  const Rational inv_n(1, static_cast<long>(x.size()));
  Rational s = 0;
  for (const auto& v : x) s += v > inv_n ? Rational(v - inv_n) : Rational(inv_n - v);
  return s / 2;
}

std::vector<Rational> uniform(std::size_t n) { return std::vector<Rational>(n, Rational(1, static_cast<long>(n))); }

std::vector<Rational> point(std::size_t n) {
  std::vector<Rational> v(n, Rational(0));
  v[0] = 1;
  return v;
}

std::vector<Rational> random_t_transform(std::vector<Rational> v, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, v.size() - 1);
  const std::size_t j = pick(rng);
  std::size_t k = pick(rng);
  if (k == j) k = (j + 1) % v.size();
  const Rational t(static_cast<long>(1 + rng() % 7), 8);
  const Rational a = v[j], b = v[k];
  v[j] = (1 - t) * a + t * b;
  v[k] = t * a + (1 - t) * b;
  return v;
}

}  // namespace

TEST_CASE("Shannon entropy") {
  CHECK(near(shannon_entropy(uniform(4)), bits(2)));
  CHECK(near(shannon_entropy(point(5)), bits(0)));
  CHECK(near(shannon_entropy(qv({{1, 2}, {1, 4}, {1, 4}})), bits(1.5)));
  CHECK_THROWS_AS(shannon_entropy(qv({{1, 2}, {1, 4}})), std::invalid_argument);
  CHECK_NOTHROW(shannon_entropy(qv({{1, 2}, {1, 4}}), Normalization::Unnormalized));
  CHECK_THROWS_AS(shannon_entropy(qv({{3, 2}, {-1, 2}}), Normalization::Unnormalized), std::invalid_argument);
}

TEST_CASE("Renyi entropy") {
  for (std::size_t n : {2, 3, 7}) {
    const Real expect = log2_of(Rational(static_cast<long>(n)));
    CHECK(near(renyi_entropy(uniform(n), q(2)), expect));
    CHECK(near(renyi_entropy(uniform(n), q(1, 2)), expect));
    CHECK(near(renyi_entropy(uniform(n), q(7, 3)), expect));
  }
  CHECK(near(renyi_entropy(qv({{1, 2}, {1, 2}}), q(2)), bits(1)));
  CHECK(near(renyi_entropy(qv({{3, 4}, {1, 4}}), q(2)), log2_of(q(8, 5))));
  CHECK(renyi_power_sum(qv({{3, 4}, {1, 4}}), 2) == q(5, 8));
  CHECK_THROWS_AS(renyi_entropy(uniform(3), q(1)), std::invalid_argument);
  CHECK_THROWS_AS(renyi_entropy(uniform(3), q(0)), std::invalid_argument);
  CHECK_THROWS_AS(renyi_entropy(uniform(3), q(-2)), std::invalid_argument);
}

TEST_CASE("guesswork") {
  CHECK(guesswork(point(4)) == 1);
  for (long n = 1; n <= 6; ++n) CHECK(guesswork(uniform(static_cast<std::size_t>(n))) == Rational(n + 1, 2));
  CHECK(guesswork(qv({{1, 2}, {1, 4}, {1, 4}})) == q(7, 4));
  CHECK(guesswork(qv({{1, 4}, {1, 2}, {1, 4}})) == q(7, 4));
}

TEST_CASE("marginal guesswork") {
  CHECK(marginal_guesswork(point(3), q(1)) == 1);
  CHECK(marginal_guesswork(uniform(4), q(1, 2)) == 2);
  CHECK(marginal_guesswork(uniform(4), q(1, 4)) == 1);
  CHECK(marginal_guesswork(uniform(4), q(26, 100)) == 2);
  CHECK(marginal_guesswork(uniform(5), q(1)) == 5);
  CHECK_THROWS_AS(marginal_guesswork(uniform(4), q(0)), std::invalid_argument);
  CHECK_THROWS_AS(marginal_guesswork(uniform(4), q(3, 2)), std::invalid_argument);
  CHECK_THROWS_AS(marginal_guesswork(qv({{1, 4}, {1, 4}}), q(3, 4), Normalization::Unnormalized),
                  std::invalid_argument);
}

TEST_CASE("alpha guesswork") {
  const auto x = qv({{1, 2}, {1, 4}, {1, 4}});
  CHECK(alpha_guesswork(x, q(1)) == guesswork(x));
  CHECK(alpha_guesswork(uniform(4), q(1, 2)) == q(7, 4));
  for (auto a : {q(1, 10), q(1, 2), q(1)}) CHECK(alpha_guesswork(point(4), a) == 1);
  CHECK_THROWS_AS(alpha_guesswork(x, q(0)), std::invalid_argument);

  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto v = random_probability_vector(1 + rng() % 8, rng);
    const Rational a(static_cast<long>(1 + rng() % 20), 20);
    CHECK(alpha_guesswork(v, a) == alpha_guesswork_integral(v, a));
  }
}

TEST_CASE("variation distance to uniform") {
  CHECK(variation_to_uniform(uniform(5)) == 0);
  CHECK(variation_to_uniform(point(4)) == q(3, 4));
  CHECK(variation_to_uniform(qv({{1, 2}, {1, 2}, {0, 1}, {0, 1}})) == q(1, 2));

  Rng rng(29);
  for (int trial = 0; trial < 500; ++trial) {
    const auto v = random_probability_vector(1 + rng() % 9, rng);
    const Rational d = variation_to_uniform(v);
    CHECK(d == variation_to_uniform_decreasing(v));
    CHECK(d == variation_to_uniform_increasing(v));
    CHECK(d == half_l1_to_uniform(v));
  }
}

TEST_CASE("metric ranges and permutation invariance") {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 7;
    const auto v = random_probability_vector(n, rng);
    auto s = v;
    std::shuffle(s.begin(), s.end(), rng);
    const Rational a(static_cast<long>(1 + rng() % 10), 10);

    const Real logn = log2_of(Rational(static_cast<long>(n)));
    const Real h = shannon_entropy(v);
    CHECK(h >= Real(-kEntropyTolerance));
    CHECK(h <= logn + Real(kEntropyTolerance));
    CHECK(near(h, shannon_entropy(s)));
    CHECK(near(renyi_entropy(v, q(2)), renyi_entropy(s, q(2))));
    CHECK(near(renyi_entropy(v, q(1, 3)), renyi_entropy(s, q(1, 3))));

    const Rational w = guesswork(v);
    CHECK(w >= 1);
    CHECK(w <= Rational(static_cast<long>(n + 1), 2));
    CHECK(w == guesswork(s));
    CHECK(marginal_guesswork(v, a) == marginal_guesswork(s, a));
    CHECK(alpha_guesswork(v, a) == alpha_guesswork(s, a));

    const Rational d = variation_to_uniform(v);
    CHECK(d >= 0);
    CHECK(d <= 1 - Rational(1, static_cast<long>(n)));
    CHECK(d == variation_to_uniform(s));
  }
}

TEST_CASE("Schur monotonicity on T-transform pairs") {
  Rng rng(53);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 6;
    const auto y = random_probability_vector(n, rng);
    auto x = y;
    for (int s = 0; s < 3; ++s) x = random_t_transform(x, rng);
    const auto verdict = compare(x, y).relation;
    REQUIRE(is_below(verdict));
    const bool strict = verdict == Relation::StrictlyBelow;
    const Rational a(static_cast<long>(1 + rng() % 10), 10);

    const Real hx = shannon_entropy(x), hy = shannon_entropy(y);
    CHECK(hx >= hy - Real(kEntropyTolerance));
    if (strict) CHECK(hx > hy);
    const Real rx = renyi_entropy(x, q(2)), ry = renyi_entropy(y, q(2));
    CHECK(rx >= ry - Real(kEntropyTolerance));
    if (strict) CHECK(renyi_power_sum(x, 2) < renyi_power_sum(y, 2));
    if (strict) CHECK(guesswork(x) > guesswork(y));
    CHECK(guesswork(x) >= guesswork(y));
    CHECK(marginal_guesswork(x, a) >= marginal_guesswork(y, a));
    CHECK(alpha_guesswork(x, a) >= alpha_guesswork(y, a));
    CHECK(variation_to_uniform(x) <= variation_to_uniform(y));
  }
}

TEST_CASE("all_metrics") {
  const auto m = all_metrics(uniform(4), q(1, 2), q(2));
  REQUIRE(m.size() == 6);
  CHECK(m[0].name() == "shannon_entropy");
  CHECK(m[1].name() == "renyi_entropy(2)");
  CHECK(m[2].name() == "guesswork");
  CHECK(m[2].value_string() == "5/2");
  CHECK(m[3].name() == "marginal_guesswork(1/2)");
  CHECK(m[3].value_string() == "2");
  CHECK(m[4].name() == "alpha_guesswork(1/2)");
  CHECK(m[4].value_string() == "7/4");
  CHECK(m[5].name() == "variation_to_uniform");
  CHECK(m[5].value_string() == "0");
  CHECK(m[0].value_string().rfind("2.000000000000000", 0) == 0);
}
