#include "cipherorder/scenario.hpp"

#include <json.hpp>

#include <algorithm>

namespace cipherorder {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ScenarioError(where + ": " + what); }

std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

Permutation parse_perm(const Json& j, std::size_t degree, const std::string& where) {
  Permutation p = Permutation::identity(1);
  try {
    p = Permutation::parse(j.dump());
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  if (p.degree() != degree)
    fail(where, "permutation " + p.str() + " has degree " + std::to_string(p.degree()) + ", expected " +
                    std::to_string(degree));
  return p;
}

GroupTable parse_group(const Json& j, std::size_t degree, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a group constructor string");
  try {
    GroupTable g = parse_group_spec(j.get<std::string>());
    if (g.degree() != degree)
      fail(where, "group has degree " + std::to_string(g.degree()) + ", expected " + std::to_string(degree));
    return g;
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  } catch (const std::length_error& e) {
    fail(where, e.what());
  }
}

std::size_t parse_count(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned()) fail(where, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

CipherDist parse_cipher(const Json& j, const Scenario& s, const std::string& where) {
  if (!j.is_object() || j.size() != 1) fail(where, "expected exactly one of uniform_on, deterministic, coset");
  const auto entry = j.begin();
  const std::string kind = entry.key();
  const Json& arg = entry.value();
  const std::string at = where + "." + kind;
  try {
    if (kind == "deterministic") {
      Permutation g = parse_perm(arg, s.message_count, at);
      if (!s.group.contains(g)) fail(at, g.str() + " is not in the group");
      return deterministic(s.group, g);
    }
    if (kind == "uniform_on") {
      if (arg.is_array()) {
        IndexSet subset;
        for (std::size_t i = 0; i < arg.size(); ++i) {
          Permutation g = parse_perm(arg[i], s.message_count, at + "[" + std::to_string(i) + "]");
          auto idx = s.group.index_of(g);
          if (!idx) fail(at, g.str() + " is not in the group");
          subset.push_back(*idx);
        }
        std::sort(subset.begin(), subset.end());
        subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
        return uniform_on(s.group, subset);
      }
      GroupTable sub = parse_group(arg, s.message_count, at);
      if (!sub.is_subgroup_of(s.group)) fail(at, "subgroup is not contained in the group");
      return uniform_on(s.group, sub);
    }
    if (kind == "coset") {
      if (!arg.is_object() || !arg.contains("rep") || !arg.contains("subgroup"))
        fail(at, "expected {\"rep\": <perm>, \"subgroup\": <spec>}");
      Permutation rep = parse_perm(arg["rep"], s.message_count, at + ".rep");
      GroupTable sub = parse_group(arg["subgroup"], s.message_count, at + ".subgroup");
      if (!s.group.contains(rep)) fail(at + ".rep", rep.str() + " is not in the group");
      if (!sub.is_subgroup_of(s.group)) fail(at + ".subgroup", "subgroup is not contained in the group");
      return uniform_on_coset(s.group, rep, sub);
    }
  } catch (const std::invalid_argument& e) {
    fail(at, e.what());
  }
  fail(where, "unknown distribution constructor '" + kind + "'");
}

ExperimentSpec parse_experiment(const Json& j, const Scenario& s, const std::string& where) {
  if (!j.is_object() || !j.contains("kind")) fail(where, "experiment needs a \"kind\"");
  ExperimentSpec e;
  const std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
  if (kind == "expand") e.kind = ExperimentKind::Expand;
  else if (kind == "collapse") e.kind = ExperimentKind::Collapse;
  else if (kind == "general-collapse") e.kind = ExperimentKind::GeneralCollapse;
  else if (kind == "amplifier") e.kind = ExperimentKind::Amplifier;
  else fail(where + ".kind", "unknown experiment '" + kind + "'");

  if (e.kind == ExperimentKind::Amplifier) {
    e.n = j.contains("n") ? parse_count(j["n"], where + ".n") : 1;
    return e;
  }
  if (!j.contains("subgroup") || !j.contains("pi")) fail(where, "experiment needs \"subgroup\" and \"pi\"");
  e.subgroup = parse_group(j["subgroup"], s.message_count, where + ".subgroup");
  if (!e.subgroup->is_subgroup_of(s.group)) fail(where + ".subgroup", "subgroup is not contained in the group");
  e.pi = parse_perm(j["pi"], s.message_count, where + ".pi");
  if (!s.group.contains(*e.pi)) fail(where + ".pi", e.pi->str() + " is not in the group");
  if (j.contains("rounds")) e.rounds = parse_count(j["rounds"], where + ".rounds");
  if (e.rounds < 1) fail(where + ".rounds", "needs at least one round");
  return e;
}

std::optional<SecurityOrder> parse_order(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  const auto v = j.get<std::string>();
  for (auto o : {SecurityOrder::Equal, SecurityOrder::LeftMoreSecure, SecurityOrder::RightMoreSecure, SecurityOrder::Mixed})
    if (to_string(o) == v) return o;
  fail(where, "unknown ordering '" + v + "'");
}

}  // namespace

const CipherDist& Scenario::distribution(const std::string& name) const {
  for (const auto& c : ciphers)
    if (c.name == name) return c.dist;
  throw ScenarioError("undefined cipher \"" + name + "\"");
}

Scenario parse_scenario(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ScenarioError("line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  if (!j.is_object()) throw ScenarioError("line 1: scenario must be a JSON object");

  Scenario s{};
  if (!j.contains("message_count")) fail("message_count", "missing");
  s.message_count = parse_count(j["message_count"], "message_count");
  if (s.message_count < 1) fail("message_count", "must be at least 1");
  if (!j.contains("group")) fail("group", "missing");
  s.group_spec = j["group"].is_string() ? j["group"].get<std::string>() : "";
  s.group = parse_group(j["group"], s.message_count, "group");

  if (j.contains("ciphers")) {
    if (!j["ciphers"].is_object()) fail("ciphers", "expected an object");
    for (const auto& [name, spec] : j["ciphers"].items())
      s.ciphers.push_back({name, parse_cipher(spec, s, "ciphers." + name)});
  }

  if (j.contains("products")) {
    if (!j["products"].is_object()) fail("products", "expected an object");
    for (const auto& [name, factors] : j["products"].items()) {
      const std::string where = "products." + name;
      if (!factors.is_array() || factors.empty()) fail(where, "expected a nonempty list of cipher names");
      std::vector<std::string> names;
      std::optional<CipherDist> acc;
      for (const auto& f : factors) {
        if (!f.is_string()) fail(where, "factor names must be strings");
        names.push_back(f.get<std::string>());
        const CipherDist* d = nullptr;
        for (const auto& c : s.ciphers)
          if (c.name == names.back()) d = &c.dist;
        if (!d) fail(where, "undefined cipher \"" + names.back() + "\"");
        acc = acc ? convolve(*acc, *d) : *d;
      }
      for (const auto& c : s.ciphers)
        if (c.name == name) fail(where, "name \"" + name + "\" is already defined");
      s.products.emplace_back(name, names);
      s.ciphers.push_back({name, *acc});
    }
  }

  s.q_max = j.contains("q_max") ? parse_count(j["q_max"], "q_max") : std::min<std::size_t>(2, s.message_count);
  if (s.q_max > s.message_count) fail("q_max", "exceeds message_count");

  if (j.contains("compare")) {
    if (!j["compare"].is_array()) fail("compare", "expected a list");
    for (std::size_t i = 0; i < j["compare"].size(); ++i) {
      const auto& c = j["compare"][i];
      const std::string where = "compare[" + std::to_string(i) + "]";
      if (!c.is_object() || !c.contains("left") || !c.contains("right") || !c["left"].is_string() ||
          !c["right"].is_string())
        fail(where, "expected {\"left\": name, \"right\": name}");
      ComparisonSpec spec{c["left"].get<std::string>(), c["right"].get<std::string>(), std::nullopt};
      for (const auto* n : {&spec.left, &spec.right}) {
        try {
          s.distribution(*n);
        } catch (const ScenarioError& e) {
          fail(where, e.what());
        }
      }
      if (c.contains("expect")) spec.expect = parse_order(c["expect"], where + ".expect");
      s.comparisons.push_back(std::move(spec));
    }
  }

  if (j.contains("experiments")) {
    if (!j["experiments"].is_array()) fail("experiments", "expected a list");
    for (std::size_t i = 0; i < j["experiments"].size(); ++i)
      s.experiments.push_back(parse_experiment(j["experiments"][i], s, "experiments[" + std::to_string(i) + "]"));
  }
  return s;
}

}  // namespace cipherorder
