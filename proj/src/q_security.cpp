#include "cipherorder/q_security.hpp"

#include "cipherorder/metrics.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cipherorder {

PlaintextTuple::PlaintextTuple(std::vector<Point> points, std::size_t message_count) : points_(std::move(points)) {
  std::vector<bool> seen(message_count, false);
  for (Point p : points_) {
    if (p >= message_count)
      throw std::invalid_argument("plaintext " + std::to_string(p) + " outside message space of size " +
                                  std::to_string(message_count));
    if (seen[p]) throw std::invalid_argument("plaintext tuple repeats " + std::to_string(p));
    seen[p] = true;
  }
}

std::string PlaintextTuple::str() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < points_.size(); ++i) out << (i ? "," : "") << points_[i];
  out << ')';
  return out.str();
}

std::vector<Rational> ImageProjection::profile_sum() const {
  std::vector<Rational> out(stabilizer.size(), Rational(0));
  for (const auto& profile : coset_profiles)
    for (std::size_t i = 0; i < profile.size(); ++i) out[i] += profile[i];
  return out;
}

std::vector<PlaintextTuple> distinct_tuples(std::size_t m, std::size_t q) {
  if (q < 1 || q > m) throw std::invalid_argument("tuple length q=" + std::to_string(q) + " must lie in [1, " +
                                                  std::to_string(m) + "]");
  std::vector<PlaintextTuple> out;
  std::vector<Point> current;
  std::vector<bool> used(m, false);
  auto extend = [&](auto&& self) -> void {
    if (current.size() == q) {
      out.emplace_back(current, m);
      return;
    }
    for (Point p = 0; p < m; ++p) {
      if (used[p]) continue;
      used[p] = true;
      current.push_back(p);
      self(self);
      current.pop_back();
      used[p] = false;
    }
  };
  extend(extend);
  return out;
}

ImageProjection project(const CipherDist& x, const PlaintextTuple& p) {
  const GroupTable& G = x.group();
  for (Point pt : p.points())
    if (pt >= G.degree()) throw std::invalid_argument("tuple " + p.str() + " is invalid for degree " + std::to_string(G.degree()));

  ImageProjection out{p, stabilizer(G, p.points()), {}, {}, {}};
  const CosetDecomposition cosets = left_cosets(G, out.stabilizer);
  out.transversal = cosets.transversal;
  for (const auto& block : cosets.blocks) {
    std::vector<Rational> profile;
    profile.reserve(block.size());
    for (ElementIndex g : block) profile.push_back(x.mass(g));
    out.coset_masses.push_back(sum(profile));
    out.coset_profiles.push_back(decreasing(profile));
  }
  return out;
}

Rational ncpa_advantage(const CipherDist& x, const PlaintextTuple& p) {
  return variation_to_uniform(project(x, p).coset_masses);
}

AdvantageWitness max_ncpa_advantage(const CipherDist& x, std::size_t q) {
  const auto tuples = distinct_tuples(x.group().degree(), q);
  AdvantageWitness best{ncpa_advantage(x, tuples.front()), tuples.front()};
  for (std::size_t i = 1; i < tuples.size(); ++i) {
    Rational a = ncpa_advantage(x, tuples[i]);
    if (a > best.value) best = {std::move(a), tuples[i]};
  }
  return best;
}

Rational conditional_guesswork(const CipherDist& x, const PlaintextTuple& p) {
  return guesswork(project(x, p).profile_sum(), Normalization::Unnormalized);
}

Rational conditional_guesswork_oracle(const CipherDist& x, const PlaintextTuple& p) {
  std::map<std::vector<Point>, std::vector<Rational>> by_ciphertext;
  const GroupTable& G = x.group();
  for (ElementIndex i = 0; i < G.size(); ++i) by_ciphertext[apply(G.element(i), p.points())].push_back(x.mass(i));

  // Σ_c P(c)·E[guesses | c] = Σ_c Σ_i i·(unnormalized posterior sorted decreasingly).
  Rational total = 0;
  for (auto& [ciphertext, masses] : by_ciphertext) {
    std::sort(masses.begin(), masses.end(), [](const Rational& a, const Rational& b) { return a > b; });
    for (std::size_t i = 0; i < masses.size(); ++i) total += Rational(static_cast<long>(i + 1)) * masses[i];
  }
  return total;
}

std::string to_string(SecurityOrder o) {
  switch (o) {
    case SecurityOrder::Equal: return "equal";
    case SecurityOrder::LeftMoreSecure: return "left-more-secure";
    case SecurityOrder::RightMoreSecure: return "right-more-secure";
    case SecurityOrder::Mixed: return "mixed";
  }
  return "?";
}

Relation aggregate(std::span<const Relation> relations) {
  bool all_equal = true, all_below = true, all_above = true, all_strict_below = true, all_strict_above = true;
  for (Relation r : relations) {
    all_equal &= r == Relation::EqualUpToPermutation;
    all_below &= is_below(r);
    all_above &= is_above(r);
    all_strict_below &= r == Relation::StrictlyBelow;
    all_strict_above &= r == Relation::StrictlyAbove;
    if (r == Relation::NormMismatch) return Relation::NormMismatch;
  }
  if (all_equal) return Relation::EqualUpToPermutation;
  if (all_strict_below) return Relation::StrictlyBelow;
  if (all_strict_above) return Relation::StrictlyAbove;
  if (all_below) return Relation::Below;
  if (all_above) return Relation::Above;
  return Relation::Incomparable;
}

namespace {

SecurityOrder combine(bool left_secure, bool right_secure) {
  if (left_secure && right_secure) return SecurityOrder::Equal;
  if (left_secure) return SecurityOrder::LeftMoreSecure;
  if (right_secure) return SecurityOrder::RightMoreSecure;
  return SecurityOrder::Mixed;
}

ComparisonLevel compare_level(const CipherDist& left, const CipherDist& right, std::size_t q,
                              const std::vector<PlaintextTuple>& tuples) {
  ComparisonLevel level;
  level.q = q;
  bool left_secure = true, right_secure = true;
  std::vector<Relation> coset_relations, profile_relations;
  for (const auto& p : tuples) {
    const ImageProjection pl = project(left, p);
    const ImageProjection pr = project(right, p);
    TupleComparison t{p,
                      variation_to_uniform(pl.coset_masses),
                      variation_to_uniform(pr.coset_masses),
                      guesswork(pl.profile_sum(), Normalization::Unnormalized),
                      guesswork(pr.profile_sum(), Normalization::Unnormalized),
                      compare(pl.coset_masses, pr.coset_masses),
                      compare(pl.profile_sum(), pr.profile_sum())};

    // Left is no less secure: less advantage, more guesswork, and majorized under both projections.
    left_secure &= t.advantage_left <= t.advantage_right && t.guesswork_left >= t.guesswork_right &&
                   is_below(t.coset_verdict.relation) && is_below(t.profile_verdict.relation);
    right_secure &= t.advantage_right <= t.advantage_left && t.guesswork_right >= t.guesswork_left &&
                    is_above(t.coset_verdict.relation) && is_above(t.profile_verdict.relation);

    if (level.tuples.empty() || t.advantage_left > level.max_advantage_left.value)
      level.max_advantage_left = {t.advantage_left, p};
    if (level.tuples.empty() || t.advantage_right > level.max_advantage_right.value)
      level.max_advantage_right = {t.advantage_right, p};
    if (level.tuples.empty() || t.guesswork_left < level.worst_guesswork_left) level.worst_guesswork_left = t.guesswork_left;
    if (level.tuples.empty() || t.guesswork_right < level.worst_guesswork_right)
      level.worst_guesswork_right = t.guesswork_right;
    coset_relations.push_back(t.coset_verdict.relation);
    profile_relations.push_back(t.profile_verdict.relation);
    level.tuples.push_back(std::move(t));
  }
  level.coset_relation = aggregate(coset_relations);
  level.profile_relation = aggregate(profile_relations);
  level.order = combine(left_secure, right_secure);
  return level;
}

}  // namespace

ComparisonReport compare_q(const CipherDist& left, const CipherDist& right, std::size_t q_max, std::string left_name,
                           std::string right_name) {
  if (!(left.group() == right.group())) throw std::invalid_argument("compare_q: ciphers live on different groups");
  const std::size_t m = left.group().degree();
  if (q_max > m)
    throw std::invalid_argument("q_max=" + std::to_string(q_max) + " exceeds the message count " + std::to_string(m));

  ComparisonReport report{std::move(left_name), std::move(right_name), {}, SecurityOrder::Equal};
  bool any_left = false, any_right = false, mixed = false;
  for (std::size_t q = 0; q <= q_max; ++q) {
    const auto tuples = q == 0 ? std::vector<PlaintextTuple>{PlaintextTuple{}} : distinct_tuples(m, q);
    report.levels.push_back(compare_level(left, right, q, tuples));
    switch (report.levels.back().order) {
      case SecurityOrder::LeftMoreSecure: any_left = true; break;
      case SecurityOrder::RightMoreSecure: any_right = true; break;
      case SecurityOrder::Mixed: mixed = true; break;
      case SecurityOrder::Equal: break;
    }
  }
  if (mixed || (any_left && any_right)) report.overall = SecurityOrder::Mixed;
  else if (any_left) report.overall = SecurityOrder::LeftMoreSecure;
  else if (any_right) report.overall = SecurityOrder::RightMoreSecure;
  return report;
}

}  // namespace cipherorder
