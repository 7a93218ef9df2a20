#include "cipherorder/experiments.hpp"

#include "cipherorder/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace cipherorder {

namespace {

std::string str(bool b) { return b ? "true" : "false"; }
std::string str(std::size_t n) { return std::to_string(n); }

void expect_eq(ExperimentResult& r, std::string quantity, const std::string& expected, const std::string& actual) {
  r.checks.push_back({std::move(quantity), expected, actual, expected == actual});
}

void expect_that(ExperimentResult& r, std::string quantity, std::string expected, std::string actual, bool pass) {
  r.checks.push_back({std::move(quantity), std::move(expected), std::move(actual), pass});
}

void add_metric_rows(ExperimentResult& r, const CipherDist& left, const CipherDist& right) {
  r.metrics.push_back({"support", str(support(left).size()), str(support(right).size())});
  r.metrics.push_back({"shannon_entropy", to_string(shannon_entropy(left.masses())), to_string(shannon_entropy(right.masses()))});
  r.metrics.push_back({"guesswork", to_string(guesswork(left.masses())), to_string(guesswork(right.masses()))});
  r.metrics.push_back({"variation_to_uniform", to_string(variation_to_uniform(left.masses())),
                       to_string(variation_to_uniform(right.masses()))});
}

// The left cipher should be no less secure than the right at every q.
void add_order_checks(ExperimentResult& r, const ComparisonReport& report) {
  const std::string expected = r.left_label + " no less secure";
  for (const auto& level : report.levels) {
    const bool ok = level.order == SecurityOrder::LeftMoreSecure || level.order == SecurityOrder::Equal;
    expect_that(r, "order_q" + str(level.q), expected, to_string(level.order), ok);
  }
}

IndexSet translate_indices(const GroupTable& G, const Permutation& g, const IndexSet& set) {
  IndexSet out;
  for (ElementIndex i : set) out.push_back(G.require_index(compose(g, G.element(i))));
  std::sort(out.begin(), out.end());
  return out;
}

ExperimentResult degenerate_result(std::string id, const CipherDist& t, const CipherDist& d) {
  ExperimentResult r;
  r.id = std::move(id);
  r.degenerate = true;
  r.left_label = "T";
  r.right_label = "D";
  expect_eq(r, "pi_outside_H", "true", "false");
  expect_eq(r, "T_equals_D", "true", str(t == d));
  r.distributions = {{"T", t}, {"D", d}};
  return r;
}

std::size_t factorial(std::size_t n, std::size_t cap) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    if (f > cap / i) throw std::length_error("Sym(" + str(n) + ") exceeds the group cap of " + str(cap));
    f *= i;
  }
  return f;
}

}  // namespace

bool ExperimentResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const CipherDist& ExperimentResult::distribution(const std::string& name) const {
  for (const auto& d : distributions)
    if (d.name == name) return d.dist;
  throw std::out_of_range("experiment " + id + " has no distribution " + name);
}

ExperimentResult run_expand(const GroupTable& G, const GroupTable& H, const Permutation& pi, std::size_t q_max) {
  const CipherDist x = uniform_on(G, H);
  const CipherDist y = deterministic(G, pi);
  const CipherDist t = convolve(convolve(x, y), x);
  const CipherDist d = convolve(x, x);
  if (H.contains(pi)) return degenerate_result("expand", t, d);

  ExperimentResult r;
  r.id = "expand";
  r.left_label = "T";
  r.right_label = "D";
  r.distributions = {{"T", t}, {"D", d}};

  const DoubleCoset hph = double_coset(G, H, pi, H);
  const IndexSet supp_t = support(t), supp_d = support(d);
  expect_eq(r, "pi_outside_H", "true", "true");
  expect_eq(r, "conjugate_differs", "true", str(!(conjugate_subgroup(pi, H) == H)));
  expect_eq(r, "support_T", str(hph.elements.size()), str(supp_t.size()));
  expect_eq(r, "support_D", str(H.size()), str(supp_d.size()));
  expect_eq(r, "support_T_exceeds_D", "true", str(supp_t.size() > supp_d.size()));
  expect_eq(r, "T_uniform_on_HpiH", "true", str(t == uniform_on(G, hph.elements)));

  const TripleDecomposition dec = triple_decompose(H, x, pi, H, x);
  expect_eq(r, "decomposition_m", str(H.size() / hph.intersection_order), str(dec.m));
  std::vector<Rational> rebuilt(G.size(), Rational(0));
  for (std::size_t i = 0; i < dec.m; ++i)
    for (ElementIndex g = 0; g < G.size(); ++g) rebuilt[g] += dec.weights[i] * dec.parts[i].mass(g);
  expect_eq(r, "decomposition_reconstructs_T", "true", str(rebuilt == std::vector<Rational>(t.masses().begin(), t.masses().end())));

  expect_eq(r, "majorization_T_vs_D", to_string(Relation::StrictlyBelow), to_string(compare(t.masses(), d.masses()).relation));
  add_metric_rows(r, t, d);
  r.comparison = compare_q(t, d, q_max, "T", "D");
  add_order_checks(r, *r.comparison);
  return r;
}

ExperimentResult run_collapse(const GroupTable& G, const GroupTable& H, const Permutation& pi, std::size_t q_max) {
  const Permutation pi_inv = inverse(pi);
  const CipherDist x = uniform_on_coset(G, pi, H);
  const CipherDist y = deterministic(G, pi_inv);
  const CipherDist t = convolve(convolve(x, y), x);
  const CipherDist d = convolve(x, x);
  if (H.contains(pi)) return degenerate_result("collapse", t, d);

  ExperimentResult r;
  r.id = "collapse";
  r.left_label = "D";
  r.right_label = "T";
  r.distributions = {{"T", t}, {"D", d}};

  const IndexSet pi_h = support(x);
  const DoubleCoset hph = double_coset(G, H, pi, H);
  const IndexSet pi_hph = translate_indices(G, pi, hph.elements);
  const IndexSet supp_t = support(t), supp_d = support(d);
  expect_eq(r, "pi_outside_H", "true", "true");
  expect_eq(r, "support_T", str(H.size()), str(supp_t.size()));
  expect_eq(r, "support_T_is_piH", "true", str(supp_t == pi_h));
  expect_eq(r, "support_D", str(hph.elements.size()), str(supp_d.size()));
  expect_eq(r, "support_D_is_piHpiH", "true", str(supp_d == pi_hph));
  expect_eq(r, "support_D_exceeds_T", "true", str(supp_d.size() > supp_t.size()));
  expect_eq(r, "inner_product_uniform_on_H", "true", str(convolve(y, x) == uniform_on(G, H)));
  expect_eq(r, "majorization_D_vs_T", to_string(Relation::StrictlyBelow), to_string(compare(d.masses(), t.masses()).relation));

  // Dropping the leading π turns the collapse pair into the expand pair with roles swapped.
  const CipherDist h_uniform = uniform_on(G, H);
  const CipherDist expand_t = convolve(convolve(h_uniform, deterministic(G, pi)), h_uniform);
  const CipherDist expand_d = convolve(h_uniform, h_uniform);
  expect_eq(r, "translated_T_equals_expand_D", "true", str(translate(pi_inv, t) == expand_d));
  expect_eq(r, "translated_D_equals_expand_T", "true", str(translate(pi_inv, d) == expand_t));

  add_metric_rows(r, d, t);
  r.comparison = compare_q(d, t, q_max, "D", "T");
  add_order_checks(r, *r.comparison);
  return r;
}

ExperimentResult run_general_collapse(const GroupTable& G, const GroupTable& H, const Permutation& pi,
                                      std::size_t rounds) {
  if (rounds < 1) throw std::invalid_argument("general collapse needs at least one round");
  const CipherDist x = uniform_on_coset(G, pi, H);
  const CipherDist y = deterministic(G, inverse(pi));

  ExperimentResult r;
  r.id = "general-collapse";
  r.left_label = "X";
  r.right_label = "E";
  if (H.contains(pi)) {
    r.degenerate = true;
    expect_eq(r, "pi_outside_H", "true", "false");
    return r;
  }
  expect_eq(r, "pi_outside_H", "true", "true");

  const IndexSet pi_h = support(x);
  CipherDist e = x, xs = x;
  std::size_t previous = 0;
  for (std::size_t k = 1; k <= rounds; ++k) {
    e = convolve(x, convolve(y, e));
    xs = convolve(x, xs);
    const std::string tag = "_r" + str(k);
    const IndexSet supp_e = support(e), supp_x = support(xs);
    expect_eq(r, "support_E" + tag, str(pi_h.size()), str(supp_e.size()));
    expect_eq(r, "support_E_is_piH" + tag, "true", str(supp_e == pi_h));
    expect_that(r, "support_X" + tag, "> " + str(pi_h.size()), str(supp_x.size()), supp_x.size() > pi_h.size());
    if (k > 1)
      expect_that(r, "support_X_nondecreasing" + tag, ">= " + str(previous), str(supp_x.size()), supp_x.size() >= previous);
    previous = supp_x.size();

    const Relation rel = compare(xs.masses(), e.masses()).relation;
    expect_that(r, "majorization_X_vs_E" + tag, to_string(Relation::StrictlyBelow), to_string(rel),
                rel == Relation::StrictlyBelow || rel == Relation::Incomparable);
    r.metrics.push_back({"support" + tag, str(supp_x.size()), str(supp_e.size())});
    r.metrics.push_back({"guesswork" + tag, to_string(guesswork(xs.masses())), to_string(guesswork(e.masses()))});
  }
  r.distributions = {{"E", e}, {"X", xs}};
  return r;
}

ExperimentResult run_amplifier(std::size_t n, std::size_t cap) {
  if (n < 1 || n > 16) throw std::invalid_argument("amplifier security parameter must be >= 1");
  const std::size_t half = std::size_t{1} << n;  // 2ⁿ, also the fixed plaintext
  const std::size_t m = half + 1;
  const std::size_t order_g = factorial(m, cap);
  const std::size_t order_h = factorial(half, cap);

  const GroupTable G = symmetric_group(m, cap);
  const GroupTable H = point_stabilizer_group(m, static_cast<Point>(half), cap);
  std::vector<Point> shift(m);
  for (std::size_t i = 0; i < m; ++i) shift[i] = static_cast<Point>((i + 1) % m);
  const Permutation pi(std::move(shift));

  const CipherDist x = uniform_on(G, H);
  const CipherDist d = convolve(x, x);
  const CipherDist t = convolve(convolve(x, deterministic(G, pi)), x);
  const CipherDist u = uniform_on(G, G);

  ExperimentResult r;
  r.id = "amplifier";
  r.left_label = "T";
  r.right_label = "D";
  r.distributions = {{"T", t}, {"D", d}};

  const Point fixed = static_cast<Point>(half);
  auto fix_probability = [&](const CipherDist& c) {
    Rational p = 0;
    for (ElementIndex g = 0; g < G.size(); ++g)
      if (G.element(g)[fixed] == fixed) p += c.mass(g);
    return p;
  };
  const Rational advantage = fix_probability(d) - fix_probability(u);
  const Rational expected_advantage(static_cast<long>(half), static_cast<long>(m));

  expect_eq(r, "pi_outside_H", "true", str(!H.contains(pi)));
  expect_eq(r, "support_D", str(order_h), str(support(d).size()));
  expect_eq(r, "support_D_is_SymM", "true", str(support(d) == G.indices_of(H)));
  expect_eq(r, "D_fixes_point_probability", "1", to_string(fix_probability(d)));
  expect_eq(r, "distinguisher_advantage", to_string(expected_advantage), to_string(advantage));
  expect_eq(r, "ncpa_advantage_D_q1", to_string(expected_advantage),
            to_string(ncpa_advantage(d, PlaintextTuple({fixed}, m))));
  expect_eq(r, "support_T", str(order_g - order_h), str(support(t).size()));
  expect_eq(r, "support_T_is_double_coset", "true", str(support(t) == double_coset(G, H, pi, H).elements));
  add_metric_rows(r, t, d);
  return r;
}

ExperimentResult run_comparison(const Scenario& s, const ComparisonSpec& spec) {
  const CipherDist& left = s.distribution(spec.left);
  const CipherDist& right = s.distribution(spec.right);
  ExperimentResult r;
  r.id = "compare:" + spec.left + "_vs_" + spec.right;
  r.left_label = spec.left;
  r.right_label = spec.right;
  r.distributions = {{spec.left, left}, {spec.right, right}};
  add_metric_rows(r, left, right);
  r.comparison = compare_q(left, right, s.q_max, spec.left, spec.right);
  const std::string actual = to_string(r.comparison->overall);
  if (spec.expect) expect_eq(r, "overall_order", to_string(*spec.expect), actual);
  else expect_that(r, "overall_order", "any", actual, true);
  return r;
}

std::vector<ExperimentResult> run_scenario(const Scenario& s) {
  std::vector<ExperimentResult> out;
  for (const auto& c : s.comparisons) out.push_back(run_comparison(s, c));
  for (const auto& e : s.experiments) {
    switch (e.kind) {
      case ExperimentKind::Expand: out.push_back(run_expand(s.group, *e.subgroup, *e.pi, s.q_max)); break;
      case ExperimentKind::Collapse: out.push_back(run_collapse(s.group, *e.subgroup, *e.pi, s.q_max)); break;
      case ExperimentKind::GeneralCollapse:
        out.push_back(run_general_collapse(s.group, *e.subgroup, *e.pi, e.rounds));
        break;
      case ExperimentKind::Amplifier: out.push_back(run_amplifier(e.n)); break;
    }
  }
  return out;
}

}  // namespace cipherorder
