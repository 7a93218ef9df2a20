#include "cipherorder/cipher_dist.hpp"

#include <algorithm>
#include <stdexcept>

namespace cipherorder {

namespace {

void require_same_group(const CipherDist& a, const CipherDist& b, const char* op) {
  if (!(a.group() == b.group())) throw std::invalid_argument(std::string(op) + ": distributions live on different groups");
}

void require_support_in(const CipherDist& x, const GroupTable& sub, const char* what) {
  for (ElementIndex i : support(x))
    if (!sub.contains(x.group().element(i)))
      throw std::invalid_argument(std::string("triple_decompose: ") + what + " has mass outside its subgroup at " +
                                  x.group().element(i).str());
}

}  // namespace

CipherDist::CipherDist(GroupTable group, std::vector<Rational> mass) : group_(std::move(group)), mass_(std::move(mass)) {
  if (mass_.size() != group_.size())
    throw std::invalid_argument("distribution length " + std::to_string(mass_.size()) + " does not match group order " +
                                std::to_string(group_.size()));
  Rational total = 0;
  for (const auto& m : mass_) {
    if (m < 0) throw std::invalid_argument("negative mass " + to_string(m));
    total += m;
  }
  if (total != 1) throw std::invalid_argument("masses sum to " + to_string(total) + ", not 1");
}

CipherDist uniform_on(const GroupTable& group, const IndexSet& subset) {
  if (subset.empty()) throw std::invalid_argument("uniform_on: empty subset");
  std::vector<Rational> mass(group.size(), Rational(0));
  const Rational each(1, static_cast<long>(subset.size()));
  for (ElementIndex i : subset) {
    if (i >= group.size()) throw std::invalid_argument("uniform_on: element index out of range");
    mass[i] = each;
  }
  return CipherDist(group, std::move(mass));
}

CipherDist uniform_on(const GroupTable& group, const GroupTable& subgroup) {
  return uniform_on(group, group.indices_of(subgroup));
}

CipherDist uniform_on_coset(const GroupTable& group, const Permutation& rep, const GroupTable& subgroup) {
  group.require_index(rep);
  IndexSet coset;
  for (const auto& h : subgroup.elements()) coset.push_back(group.require_index(compose(rep, h)));
  std::sort(coset.begin(), coset.end());
  return uniform_on(group, coset);
}

CipherDist deterministic(const GroupTable& group, const Permutation& g) {
  std::vector<Rational> mass(group.size(), Rational(0));
  mass[group.require_index(g)] = 1;
  return CipherDist(group, std::move(mass));
}

CipherDist convolve(const CipherDist& x, const CipherDist& y) {
  require_same_group(x, y, "convolve");
  const GroupTable& G = x.group();
  const IndexSet left = support(x);
  std::vector<Rational> out(G.size(), Rational(0));
  for (ElementIndex h : support(y)) {
    for (ElementIndex f : left) out[G.product_index(f, h)] += x.mass(f) * y.mass(h);
  }
  return CipherDist(G, std::move(out));
}

CipherDist translate(const Permutation& g, const CipherDist& x) {
  const GroupTable& G = x.group();
  const ElementIndex gi = G.require_index(g);
  std::vector<Rational> out(G.size(), Rational(0));
  for (ElementIndex f : support(x)) out[G.product_index(gi, f)] = x.mass(f);
  return CipherDist(G, std::move(out));
}

IndexSet support(const CipherDist& x) {
  IndexSet out;
  for (ElementIndex i = 0; i < x.masses().size(); ++i)
    if (x.mass(i) > 0) out.push_back(i);
  return out;
}

TripleDecomposition triple_decompose(const GroupTable& H, const CipherDist& x, const Permutation& pi,
                                     const GroupTable& K, const CipherDist& z) {
  require_same_group(x, z, "triple_decompose");
  const GroupTable& G = x.group();
  if (!G.contains(pi)) throw std::invalid_argument("triple_decompose: " + pi.str() + " is not in G");
  if (!H.is_subgroup_of(G) || !K.is_subgroup_of(G))
    throw std::invalid_argument("triple_decompose: H and K must be subgroups of G");
  require_support_in(x, H, "x");
  require_support_in(z, K, "z");

  // z' = δ_π * z lives on πK; h·z' lives on hπK, which depends only on the coset hS.
  const CipherDist shifted = translate(pi, z);
  const GroupTable S = intersect(H, conjugate_subgroup(pi, K));
  const CosetDecomposition h_cosets = left_cosets(H, S);
  const CosetDecomposition k_cosets = left_cosets(G, K);

  TripleDecomposition out;
  out.m = h_cosets.blocks.size();
  out.stabilizer_order = S.size();
  for (std::size_t i = 0; i < out.m; ++i) {
    const Permutation& h_rep = h_cosets.transversal[i];
    const std::size_t k_block = k_cosets.block_of[G.require_index(compose(h_rep, pi))];

    Rational alpha = 0;
    std::vector<Rational> acc(G.size(), Rational(0));
    for (ElementIndex hi : h_cosets.blocks[i]) {
      const Permutation& h = H.element(hi);
      const Rational& w = x.mass_of(h);
      if (w == 0) continue;
      alpha += w;
      const ElementIndex hg = G.require_index(h);
      for (ElementIndex f : support(shifted)) acc[G.product_index(hg, f)] += w * shifted.mass(f);
    }

    out.h_reps.push_back(h_rep);
    out.coset_reps.push_back(k_cosets.transversal[k_block]);
    if (alpha == 0) {
      out.parts.push_back(uniform_on(G, k_cosets.blocks[k_block]));
    } else {
      for (auto& v : acc) v /= alpha;
      out.parts.emplace_back(G, std::move(acc));
    }
    out.weights.push_back(alpha);
  }
  return out;
}

}  // namespace cipherorder
