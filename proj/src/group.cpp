#include "cipherorder/group.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace cipherorder {

GroupTable::GroupTable() : GroupTable(from_closed_elements(1, {Permutation::identity(1)})) {}

GroupTable GroupTable::from_closed_elements(std::size_t degree, std::vector<Permutation> elements) {
  auto data = std::make_shared<Data>();
  data->degree = degree;
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  data->elements = std::move(elements);
  data->index.reserve(data->elements.size());
  bool has_identity = false;
  for (ElementIndex i = 0; i < data->elements.size(); ++i) {
    const auto& g = data->elements[i];
    if (g.degree() != degree) throw std::invalid_argument("degree mismatch in group elements");
    data->index.emplace(g, i);
    if (g.is_identity()) {
      data->identity = i;
      has_identity = true;
    }
  }
  if (!has_identity) throw std::invalid_argument("group element list lacks the identity");
  return GroupTable(std::move(data));
}

std::optional<ElementIndex> GroupTable::index_of(const Permutation& g) const {
  if (g.degree() != degree()) return std::nullopt;
  auto it = data_->index.find(g);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

ElementIndex GroupTable::require_index(const Permutation& g) const {
  if (auto i = index_of(g)) return *i;
  throw std::invalid_argument("permutation " + g.str() + " is not in the group");
}

ElementIndex GroupTable::product_index(ElementIndex i, ElementIndex j) const {
  return data_->index.at(compose(element(i), element(j)));
}

IndexSet GroupTable::indices_of(const GroupTable& sub) const {
  IndexSet out;
  out.reserve(sub.size());
  for (const auto& h : sub.elements()) out.push_back(require_index(h));
  std::sort(out.begin(), out.end());
  return out;
}

bool GroupTable::is_subgroup_of(const GroupTable& parent) const {
  if (degree() != parent.degree() || parent.size() % size() != 0) return false;
  return std::all_of(elements().begin(), elements().end(),
                     [&](const Permutation& g) { return parent.contains(g); });
}

bool operator==(const GroupTable& a, const GroupTable& b) {
  if (a.data_ == b.data_) return true;
  return a.degree() == b.degree() && a.data_->elements == b.data_->elements;
}

GroupTable closure(std::span<const Permutation> generators, std::size_t cap) {
  if (generators.empty()) throw std::invalid_argument("closure needs at least one generator");
  const std::size_t degree = generators.front().degree();
  for (const auto& g : generators)
    if (g.degree() != degree) throw std::invalid_argument("generators have mixed degrees");

  std::unordered_set<Permutation, PermutationHash> seen;
  std::deque<Permutation> frontier;
  auto visit = [&](Permutation g) {
    if (seen.insert(g).second) {
      if (seen.size() > cap)
        throw std::length_error("group exceeds the cap of " + std::to_string(cap) + " elements");
      frontier.push_back(std::move(g));
    }
  };
  visit(Permutation::identity(degree));
  while (!frontier.empty()) {
    Permutation g = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& s : generators) visit(compose(g, s));
  }
  return GroupTable::from_closed_elements(degree, {seen.begin(), seen.end()});
}

CosetDecomposition left_cosets(const GroupTable& G, const GroupTable& H) {
  if (!H.is_subgroup_of(G)) throw std::invalid_argument("left_cosets: H is not a subgroup of G");
  constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
  CosetDecomposition out{G, H, {}, {}, std::vector<std::size_t>(G.size(), unassigned)};
  out.transversal.reserve(G.size() / H.size());
  out.blocks.reserve(G.size() / H.size());
  for (ElementIndex g = 0; g < G.size(); ++g) {
    if (out.block_of[g] != unassigned) continue;
    const std::size_t b = out.blocks.size();
    IndexSet block;
    block.reserve(H.size());
    for (const auto& h : H.elements()) {
      ElementIndex gh = G.require_index(compose(G.element(g), h));
      out.block_of[gh] = b;
      block.push_back(gh);
    }
    std::sort(block.begin(), block.end());
    // Scanning G in order means g is the smallest member of its block.
    out.transversal.push_back(G.element(g));
    out.blocks.push_back(std::move(block));
  }
  return out;
}

GroupTable conjugate_subgroup(const Permutation& pi, const GroupTable& K) {
  if (pi.degree() != K.degree()) throw std::invalid_argument("conjugate_subgroup: degree mismatch");
  const Permutation pi_inv = inverse(pi);
  std::vector<Permutation> conj;
  conj.reserve(K.size());
  for (const auto& k : K.elements()) conj.push_back(compose(compose(pi, k), pi_inv));
  return GroupTable::from_closed_elements(K.degree(), std::move(conj));
}

GroupTable intersect(const GroupTable& A, const GroupTable& B) {
  if (A.degree() != B.degree()) throw std::invalid_argument("intersect: degree mismatch");
  std::vector<Permutation> common;
  for (const auto& a : A.elements())
    if (B.contains(a)) common.push_back(a);
  return GroupTable::from_closed_elements(A.degree(), std::move(common));
}

DoubleCoset double_coset(const GroupTable& G, const GroupTable& H, const Permutation& pi, const GroupTable& K) {
  if (!H.is_subgroup_of(G)) throw std::invalid_argument("double_coset: H is not a subgroup of G");
  if (!K.is_subgroup_of(G)) throw std::invalid_argument("double_coset: K is not a subgroup of G");
  if (!G.contains(pi)) throw std::invalid_argument("double_coset: " + pi.str() + " is not in G");

  const CosetDecomposition cosets = left_cosets(G, K);
  std::vector<std::size_t> hit;
  for (const auto& h : H.elements()) hit.push_back(cosets.block_of[G.require_index(compose(h, pi))]);
  std::sort(hit.begin(), hit.end());
  hit.erase(std::unique(hit.begin(), hit.end()), hit.end());

  DoubleCoset out;
  for (std::size_t b : hit) {
    out.representatives.push_back(cosets.transversal[b]);
    out.blocks.push_back(cosets.blocks[b]);
    out.elements.insert(out.elements.end(), cosets.blocks[b].begin(), cosets.blocks[b].end());
  }
  std::sort(out.elements.begin(), out.elements.end());
  out.m = hit.size();
  out.intersection_order = intersect(H, conjugate_subgroup(pi, K)).size();
  if (out.m * out.intersection_order != H.size())
    throw std::logic_error("orbit-stabilizer count violated in double_coset");
  return out;
}

GroupTable stabilizer(const GroupTable& G, std::span<const Point> points) {
  std::vector<bool> seen(G.degree(), false);
  for (Point p : points) {
    if (p >= G.degree()) throw std::invalid_argument("stabilizer: point " + std::to_string(p) + " out of range");
    if (seen[p]) throw std::invalid_argument("stabilizer: duplicate point " + std::to_string(p));
    seen[p] = true;
  }
  std::vector<Permutation> fixing;
  for (const auto& g : G.elements()) {
    if (std::all_of(points.begin(), points.end(), [&](Point p) { return g[p] == p; })) fixing.push_back(g);
  }
  return GroupTable::from_closed_elements(G.degree(), std::move(fixing));
}

GroupTable symmetric_group(std::size_t m, std::size_t cap) {
  if (m == 0) throw std::invalid_argument("sym(m) needs m >= 1");
  std::vector<Point> shift(m);
  for (std::size_t i = 0; i < m; ++i) shift[i] = static_cast<Point>((i + 1) % m);
  std::vector<Permutation> gens{Permutation(std::move(shift))};
  if (m >= 2) {
    std::vector<Point> swap(m);
    for (std::size_t i = 0; i < m; ++i) swap[i] = static_cast<Point>(i);
    std::swap(swap[0], swap[1]);
    gens.emplace_back(std::move(swap));
  }
  return closure(gens, cap);
}

GroupTable cyclic_group(std::size_t m, std::size_t cap) {
  if (m == 0) throw std::invalid_argument("cyclic(m) needs m >= 1");
  std::vector<Point> shift(m);
  for (std::size_t i = 0; i < m; ++i) shift[i] = static_cast<Point>((i + 1) % m);
  std::vector<Permutation> gens{Permutation(std::move(shift))};
  return closure(gens, cap);
}

GroupTable point_stabilizer_group(std::size_t m, Point fixed, std::size_t cap) {
  if (m == 0 || fixed >= m) throw std::invalid_argument("stab(m, t) needs 0 <= t < m");
  std::vector<Point> others;
  for (Point p = 0; p < m; ++p)
    if (p != fixed) others.push_back(p);
  std::vector<Permutation> gens{Permutation::identity(m)};
  for (std::size_t i = 1; i < others.size(); ++i) {
    std::vector<Point> images(m);
    for (std::size_t j = 0; j < m; ++j) images[j] = static_cast<Point>(j);
    std::swap(images[others[0]], images[others[i]]);
    gens.emplace_back(std::move(images));
  }
  return closure(gens, cap);
}

namespace {

std::string strip(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

std::size_t parse_count(const std::string& s, const std::string& spec) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw std::invalid_argument("malformed group spec '" + spec + "'");
  return std::stoul(s);
}

}  // namespace

GroupTable parse_group_spec(const std::string& spec, std::size_t cap) {
  const std::string s = strip(spec);
  auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') throw std::invalid_argument("malformed group spec '" + spec + "'");
  const std::string name = s.substr(0, open);
  const std::string args = s.substr(open + 1, s.size() - open - 2);

  if (name == "sym") return symmetric_group(parse_count(args, spec), cap);
  if (name == "cyclic") return cyclic_group(parse_count(args, spec), cap);
  if (name == "stab") {
    auto comma = args.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("stab needs two arguments: '" + spec + "'");
    return point_stabilizer_group(parse_count(args.substr(0, comma), spec),
                                  static_cast<Point>(parse_count(args.substr(comma + 1), spec)), cap);
  }
  if (name == "gen") {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(args);
    } catch (const nlohmann::json::parse_error&) {
      throw std::invalid_argument("malformed generator list in '" + spec + "'");
    }
    if (!j.is_array()) throw std::invalid_argument("gen expects a list of permutations: '" + spec + "'");
    std::vector<Permutation> gens;
    for (const auto& p : j) gens.push_back(Permutation::parse(p.dump()));
    return closure(gens, cap);
  }
  throw std::invalid_argument("unknown group constructor '" + name + "'");
}

}  // namespace cipherorder
