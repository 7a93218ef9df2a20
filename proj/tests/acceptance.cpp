#include "cipherorder/cipher_dist.hpp"
#include "cipherorder/experiments.hpp"
#include "cipherorder/majorization.hpp"
#include "cipherorder/metrics.hpp"
#include "cipherorder/q_security.hpp"
#include "test_support.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace cipherorder;
using namespace cipherorder::testing;

namespace {

/// Counts checks and remembers the first one that failed.
struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
  bool ok() const { return failures == 0; }
};

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << s << " s";
  return out.str();
}

Outcome finish(const Tally& t, std::string detail) {
  if (!t.ok()) detail += "; " + std::to_string(t.failures) + " failed, first: " + t.first_failure;
  return {t.ok(), std::move(detail)};
}

std::vector<Rational> masses(const CipherDist& d) { return {d.masses().begin(), d.masses().end()}; }

struct DecompositionCase {
  GroupTable G, H, K;
  Permutation pi;
  CipherDist x, z;
};

// Random (G, H, π, K, x, z) with G one of S3, S4, S5.
std::vector<DecompositionCase> decomposition_suite(std::size_t count, Rng& rng) {
  const std::vector<GroupTable> groups{symmetric_group(3), symmetric_group(4), symmetric_group(5)};
  std::vector<DecompositionCase> out;
  for (std::size_t i = 0; i < count; ++i) {
    const GroupTable& G = groups[i % groups.size()];
    GroupTable H = random_subgroup(G, rng), K = random_subgroup(G, rng);
    Permutation pi = random_element(G, rng);
    CipherDist x = random_dist_on(G, G.indices_of(H), rng);
    CipherDist z = random_dist_on(G, G.indices_of(K), rng);
    out.push_back({G, std::move(H), std::move(K), std::move(pi), std::move(x), std::move(z)});
  }
  return out;
}

Outcome criterion_decomposition(const std::vector<DecompositionCase>& suite) {
  const auto start = Clock::now();
  Tally t;
  for (std::size_t c = 0; c < suite.size(); ++c) {
    const auto& k = suite[c];
    const std::string tag = "case " + std::to_string(c);
    const auto dec = triple_decompose(k.H, k.x, k.pi, k.K, k.z);
    const auto product = convolve(k.x, convolve(deterministic(k.G, k.pi), k.z));
    std::vector<Rational> rebuilt(k.G.size(), Rational(0));
    for (std::size_t i = 0; i < dec.m; ++i)
      for (ElementIndex g = 0; g < k.G.size(); ++g) rebuilt[g] += dec.weights[i] * dec.parts[i].mass(g);
    t.expect(rebuilt == masses(product), tag + " reconstruction");
    const std::size_t expected_m = k.H.size() / intersect(k.H, conjugate_subgroup(k.pi, k.K)).size();
    t.expect(dec.m == expected_m, tag + " m");
    for (std::size_t i = 0; i < dec.m; ++i)
      t.expect(is_below(compare(dec.parts[i].masses(), k.z.masses()).relation), tag + " part majorization");
  }
  const double elapsed = seconds_since(start);
  t.expect(elapsed < 60.0, "runtime " + fmt_seconds(elapsed));
  return finish(t, std::to_string(suite.size()) + " cases up to S5 in " + fmt_seconds(elapsed));
}

Outcome criterion_uniform_products(const std::vector<DecompositionCase>& suite) {
  Tally t;
  std::size_t strict = 0;
  for (std::size_t c = 0; c < suite.size(); ++c) {
    const auto& k = suite[c];
    const std::string tag = "case " + std::to_string(c);
    const auto x = uniform_on(k.G, k.H), z = uniform_on(k.G, k.K);
    const auto product = convolve(x, convolve(deterministic(k.G, k.pi), z));
    const auto dc = double_coset(k.G, k.H, k.pi, k.K);
    t.expect(product == uniform_on(k.G, dc.elements), tag + " uniform on HpiK");
    const Relation rel = compare(product.masses(), z.masses()).relation;
    if (dc.elements.size() > k.K.size()) {
      ++strict;
      t.expect(rel == Relation::StrictlyBelow, tag + " strict majorization");
    } else {
      t.expect(rel == Relation::EqualUpToPermutation, tag + " equality when HpiK = piK");
    }
  }
  return finish(t, std::to_string(suite.size()) + " cases, " + std::to_string(strict) + " with |HpiK| > |K|");
}

GroupTable transposition_subgroup() { return closure(std::vector<Permutation>{cyc(3, {{0, 1}})}); }

Outcome criterion_expand() {
  Tally t;
  const GroupTable G = symmetric_group(3);
  const auto r = run_expand(G, transposition_subgroup(), cyc(3, {{1, 2}}), 3);
  t.expect(r.passed(), "experiment checks");
  const auto& tt = r.distribution("T");
  const auto& d = r.distribution("D");
  t.expect(support(tt).size() == 4, "|supp t| = 4");
  t.expect(support(d).size() == 2, "|supp d| = 2");
  t.expect(compare(tt.masses(), d.masses()).relation == Relation::StrictlyBelow, "t strictly below d");
  const Real tol(kEntropyTolerance);
  t.expect(boost::multiprecision::abs(shannon_entropy(tt.masses()) - Real(2)) <= tol, "H(t) = 2");
  t.expect(boost::multiprecision::abs(shannon_entropy(d.masses()) - Real(1)) <= tol, "H(d) = 1");
  t.expect(guesswork(tt.masses()) == Rational(5, 2), "W(t) = 5/2");
  t.expect(guesswork(d.masses()) == Rational(3, 2), "W(d) = 3/2");
  const auto report = compare_q(tt, d, 3, "T", "D");
  for (const auto& level : report.levels) {
    if (level.q == 0) continue;
    for (const auto& tc : level.tuples) {
      const std::string tag = "q=" + std::to_string(level.q) + " " + tc.tuple.str();
      t.expect(tc.advantage_left <= tc.advantage_right, tag + " advantage");
      t.expect(tc.guesswork_left >= tc.guesswork_right, tag + " guesswork");
      t.expect(is_below(tc.coset_verdict.relation), tag + " coset majorization");
    }
  }
  return finish(t, "supports 4 vs 2, entropy 2 vs 1 bits, guesswork 5/2 vs 3/2, t below d at q = 1..3");
}

Outcome criterion_collapse() {
  Tally t;
  const GroupTable G = symmetric_group(3);
  const GroupTable H = transposition_subgroup();
  const auto pi = cyc(3, {{1, 2}});
  const auto c = run_collapse(G, H, pi, 3);
  const auto e = run_expand(G, H, pi, 3);
  t.expect(c.passed(), "experiment checks");
  const auto& tt = c.distribution("T");
  const auto& d = c.distribution("D");
  t.expect(support(tt).size() == 2, "|supp t| = 2");
  t.expect(support(d).size() == 4, "|supp d| = 4");
  t.expect(compare(d.masses(), tt.masses()).relation == Relation::StrictlyBelow, "d strictly below t");
  t.expect(guesswork(d.masses()) == Rational(5, 2) && guesswork(tt.masses()) == Rational(3, 2), "guesswork reversed");
  const auto report = compare_q(tt, d, 3, "T", "D");
  for (const auto& level : report.levels) {
    if (level.q == 0) continue;
    for (const auto& tc : level.tuples) {
      const std::string tag = "q=" + std::to_string(level.q) + " " + tc.tuple.str();
      t.expect(tc.advantage_left >= tc.advantage_right, tag + " advantage");
      t.expect(tc.guesswork_left <= tc.guesswork_right, tag + " guesswork");
    }
  }
  t.expect(translate(inverse(pi), tt) == e.distribution("D"), "translated T equals expand D");
  t.expect(translate(inverse(pi), d) == e.distribution("T"), "translated D equals expand T");
  return finish(t, "supports 2 vs 4, d below t at q = 0..3, translation matches the expanding pair");
}

Outcome criterion_general_collapse() {
  Tally t;
  struct Case {
    GroupTable G, H;
    Permutation pi;
    std::string name;
  };
  const std::vector<Case> cases{
      {symmetric_group(3), transposition_subgroup(), cyc(3, {{1, 2}}), "S3"},
      {symmetric_group(4), point_stabilizer_group(4, 3), cyc(4, {{2, 3}}), "S4 stab(3)"},
      {symmetric_group(4), closure(std::vector<Permutation>{cyc(4, {{0, 1}})}), cyc(4, {{1, 2, 3}}), "S4 <(0 1)>"},
  };
  std::ostringstream detail;
  for (const auto& c : cases) {
    const auto r = run_general_collapse(c.G, c.H, c.pi, 3);
    t.expect(r.passed(), c.name + " experiment checks");
    const IndexSet pi_h = support(uniform_on_coset(c.G, c.pi, c.H));
    // Independent recomputation of the round sequence.
    const auto x = uniform_on_coset(c.G, c.pi, c.H);
    const auto y = deterministic(c.G, inverse(c.pi));
    CipherDist e = x, xs = x;
    std::size_t previous = 0;
    detail << (detail.tellp() > 0 ? "; " : "") << c.name << " X supports";
    for (std::size_t k = 1; k <= 3; ++k) {
      e = convolve(convolve(x, y), e);
      xs = convolve(x, xs);
      const std::string tag = c.name + " r=" + std::to_string(k);
      t.expect(support(e) == pi_h, tag + " supp(E) = piH");
      t.expect(support(xs).size() > pi_h.size(), tag + " supp(X) > |piH|");
      t.expect(support(xs).size() >= previous, tag + " supp(X) nondecreasing");
      previous = support(xs).size();
      detail << ' ' << previous;
    }
  }
  return finish(t, detail.str());
}

Outcome criterion_amplifier() {
  const auto start = Clock::now();
  Tally t;
  const std::vector<std::size_t> expected_support{4, 96};
  for (std::size_t n = 1; n <= 2; ++n) {
    const auto r = run_amplifier(n);
    const std::string tag = "n=" + std::to_string(n);
    t.expect(r.passed(), tag + " experiment checks");
    t.expect(support(r.distribution("T")).size() == expected_support[n - 1], tag + " |supp t|");
    const Point fixed = static_cast<Point>(1u << n);
    const auto& d = r.distribution("D");
    Rational fixes = 0;
    for (ElementIndex g = 0; g < d.group().size(); ++g)
      if (d.group().element(g)[fixed] == fixed) fixes += d.mass(g);
    t.expect(fixes == 1, tag + " D fixes the point");
    const long half = 1L << n;
    const Rational uniform_fix(1, half + 1);
    t.expect(fixes - uniform_fix == Rational(half, half + 1), tag + " advantage 2^n/(2^n+1)");
  }
  const double elapsed = seconds_since(start);
  t.expect(elapsed < 10.0, "runtime " + fmt_seconds(elapsed));
  return finish(t, "|supp t| = 4 and 96, advantages 2/3 and 4/5, " + fmt_seconds(elapsed));
}

struct SchurPair {
  std::vector<Rational> x, y;
  Relation relation;
};

std::vector<Rational> t_transform(std::vector<Rational> v, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, v.size() - 1);
  const std::size_t j = pick(rng);
  std::size_t k = pick(rng);
  if (k == j) k = (j + 1) % v.size();
  const Rational lambda(static_cast<long>(rng() % 13), 12);
  const Rational a = v[j], b = v[k];
  v[j] = (1 - lambda) * a + lambda * b;
  v[k] = lambda * a + (1 - lambda) * b;
  return v;
}

std::vector<SchurPair> schur_suite(std::size_t count, Rng& rng) {
  std::vector<SchurPair> out;
  while (out.size() < count) {
    const std::size_t n = 2 + rng() % 7;
    auto y = random_probability_vector(n, rng);
    auto x = y;
    const int steps = 1 + static_cast<int>(rng() % 4);
    for (int s = 0; s < steps; ++s) x = t_transform(x, rng);
    std::shuffle(x.begin(), x.end(), rng);
    const Relation rel = compare(x, y).relation;
    out.push_back({std::move(x), std::move(y), rel});
  }
  return out;
}

Outcome criterion_schur(const std::vector<SchurPair>& suite) {
  Tally t;
  const Real tol(kEntropyTolerance);
  std::size_t strict = 0;
  const std::vector<Rational> alphas{Rational(1, 4), Rational(1, 2), Rational(2, 3), Rational(1)};
  for (std::size_t c = 0; c < suite.size(); ++c) {
    const auto& p = suite[c];
    const std::string tag = "pair " + std::to_string(c);
    t.expect(is_below(p.relation), tag + " generated pair is majorized");
    const bool is_strict = p.relation == Relation::StrictlyBelow;
    strict += is_strict;

    const Real hx = shannon_entropy(p.x), hy = shannon_entropy(p.y);
    t.expect(hx >= hy - tol, tag + " Shannon");
    for (const auto& order : {Rational(2), Rational(1, 2), Rational(3)}) {
      const Real rx = renyi_entropy(p.x, order), ry = renyi_entropy(p.y, order);
      t.expect(rx >= ry - tol, tag + " Renyi(" + to_string(order) + ")");
    }
    const Rational wx = guesswork(p.x), wy = guesswork(p.y);
    t.expect(wx >= wy, tag + " guesswork");
    for (const auto& a : alphas) {
      t.expect(marginal_guesswork(p.x, a) >= marginal_guesswork(p.y, a), tag + " marginal guesswork");
      t.expect(alpha_guesswork(p.x, a) >= alpha_guesswork(p.y, a), tag + " alpha guesswork");
    }
    t.expect(variation_to_uniform(p.x) <= variation_to_uniform(p.y), tag + " variation distance");
    if (is_strict) {
      t.expect(hx > hy, tag + " strict Shannon");
      t.expect(renyi_power_sum(p.x, 2) < renyi_power_sum(p.y, 2), tag + " strict Renyi(2)");
      t.expect(renyi_power_sum(p.x, 3) < renyi_power_sum(p.y, 3), tag + " strict Renyi(3)");
      t.expect(renyi_entropy(p.x, Rational(1, 2)) > renyi_entropy(p.y, Rational(1, 2)), tag + " strict Renyi(1/2)");
      t.expect(wx > wy, tag + " strict guesswork");
    }
  }
  return finish(t, std::to_string(suite.size()) + " pairs, " + std::to_string(strict) + " strictly below");
}

struct ProductCase {
  CipherDist x, y, z;
};

std::vector<ProductCase> product_suite(std::size_t count, Rng& rng) {
  const std::vector<GroupTable> groups{symmetric_group(3), symmetric_group(4)};
  std::vector<ProductCase> out;
  for (std::size_t i = 0; i < count; ++i) {
    const GroupTable& G = groups[i % groups.size()];
    // Mix full-support ciphers with ones living on random subgroups or cosets.
    auto draw = [&]() {
      switch (rng() % 3) {
        case 0: return random_dist(G, rng);
        case 1: return random_dist_on(G, G.indices_of(random_subgroup(G, rng)), rng);
        default: {
          const auto H = random_subgroup(G, rng);
          const auto& g = random_element(G, rng);
          IndexSet coset;
          for (const auto& h : H.elements()) coset.push_back(G.require_index(compose(g, h)));
          std::sort(coset.begin(), coset.end());
          return random_dist_on(G, coset, rng);
        }
      }
    };
    CipherDist x = draw(), y = draw();
    CipherDist z = convolve(x, y);
    out.push_back({std::move(x), std::move(y), std::move(z)});
  }
  return out;
}

Outcome criterion_products(const std::vector<ProductCase>& suite) {
  Tally t;
  std::size_t tuples = 0;
  for (std::size_t c = 0; c < suite.size(); ++c) {
    const auto& k = suite[c];
    for (std::size_t q = 1; q <= 2; ++q)
      for (const auto& p : distinct_tuples(k.z.group().degree(), q)) {
        ++tuples;
        const std::string tag = "case " + std::to_string(c) + " " + p.str();
        const auto pz = project(k.z, p), py = project(k.y, p);
        t.expect(is_below(compare(pz.coset_masses, py.coset_masses).relation), tag + " coset masses");
        t.expect(is_below(compare(pz.profile_sum(), py.profile_sum()).relation), tag + " profile sums");
        t.expect(conditional_guesswork(k.z, p) >= conditional_guesswork(k.y, p), tag + " conditional guesswork");
        t.expect(ncpa_advantage(k.z, p) <= ncpa_advantage(k.y, p), tag + " advantage");
      }
  }
  return finish(t, std::to_string(suite.size()) + " products on S3/S4, " + std::to_string(tuples) + " tuples with q in {1,2}");
}

Rational half_l1(const std::vector<Rational>& v) {
  const Rational inv(1, static_cast<long>(v.size()));
  Rational s = 0;
  for (const auto& e : v) s += e > inv ? Rational(e - inv) : Rational(inv - e);
  return s / 2;
}

Outcome criterion_oracles(const std::vector<ProductCase>& products, const std::vector<SchurPair>& schur) {
  Tally t;
  std::size_t guess_checks = 0, distance_checks = 0;
  for (std::size_t c = 0; c < products.size(); ++c) {
    for (const CipherDist* d : {&products[c].x, &products[c].y, &products[c].z})
      for (std::size_t q = 1; q <= 2; ++q)
        for (const auto& p : distinct_tuples(d->group().degree(), q)) {
          ++guess_checks;
          t.expect(conditional_guesswork(*d, p) == conditional_guesswork_oracle(*d, p),
                   "case " + std::to_string(c) + " " + p.str() + " conditional guesswork");
        }
  }
  for (std::size_t c = 0; c < schur.size(); ++c)
    for (const auto* v : {&schur[c].x, &schur[c].y}) {
      ++distance_checks;
      const Rational dec = variation_to_uniform_decreasing(*v);
      t.expect(dec == variation_to_uniform_increasing(*v), "pair " + std::to_string(c) + " closed forms");
      t.expect(dec == half_l1(*v), "pair " + std::to_string(c) + " half L1");
    }
  return finish(t, std::to_string(guess_checks) + " guesswork pairs, " + std::to_string(distance_checks) +
                       " variation-distance vectors");
}

Outcome criterion_witnesses(const std::vector<SchurPair>& suite) {
  Tally t;
  std::size_t terms = 0;
  for (std::size_t c = 0; c < suite.size(); ++c) {
    const auto& p = suite[c];
    const std::string tag = "pair " + std::to_string(c);
    const auto w = hlp_witness(p.x, p.y);
    const std::size_t n = p.x.size();
    t.expect(is_doubly_stochastic(w.matrix), tag + " doubly stochastic");
    t.expect(multiply(w.matrix, p.y) == p.x, tag + " Dy = x");
    t.expect(w.t_transforms + 1 <= n, tag + " at most n-1 T-transforms");
    t.expect(w.decomposition.size() <= (n - 1) * (n - 1) + 1, tag + " Birkhoff term count");
    Rational total = 0;
    for (const auto& term : w.decomposition) {
      t.expect(term.weight > 0, tag + " positive weight");
      total += term.weight;
    }
    t.expect(total == 1, tag + " weights sum to 1");
    t.expect(reconstruct(w.decomposition, n) == w.matrix, tag + " Birkhoff reconstruction");
    terms += w.decomposition.size();
  }
  return finish(t, std::to_string(suite.size()) + " witnesses, " + std::to_string(terms) + " Birkhoff terms");
}

Outcome guarded(const std::function<Outcome()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

int main() {
  Rng rng(20240601);
  const auto decompositions = decomposition_suite(150, rng);
  const auto schur = schur_suite(1200, rng);
  const auto products = product_suite(120, rng);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"double-coset decomposition suite", [&] { return criterion_decomposition(decompositions); }},
      {"uniform products on double cosets", [&] { return criterion_uniform_products(decompositions); }},
      {"expanding alternating product on S3", criterion_expand},
      {"collapsing alternating product on S3", criterion_collapse},
      {"general collapse, r = 1..3", criterion_general_collapse},
      {"security amplifier, n = 1, 2", criterion_amplifier},
      {"Schur monotonicity suite", [&] { return criterion_schur(schur); }},
      {"data-complexity ordering of products", [&] { return criterion_products(products); }},
      {"oracle equivalence", [&] { return criterion_oracles(products, schur); }},
      {"doubly-stochastic and Birkhoff witnesses", [&] { return criterion_witnesses(schur); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Outcome o = guarded(criteria[i].second);
    failed += !o.pass;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << i + 1 << ". " << criteria[i].first << ": " << o.detail << '\n';
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
