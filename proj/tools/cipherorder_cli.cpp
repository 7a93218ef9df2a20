#include "cipherorder/experiments.hpp"
#include "cipherorder/majorization.hpp"
#include "cipherorder/metrics.hpp"
#include "cipherorder/report.hpp"
#include "cipherorder/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace cipherorder;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

/// Thrown for unreadable inputs and invalid option values; reported with exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream out;
    out << std::cin.rdbuf();
    return out.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::vector<Rational> read_vector(const std::string& path) {
  try {
    return parse_rational_vector(read_input(path));
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Rational option_rational(const std::string& text, const std::string& flag) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

int report(const std::vector<ExperimentResult>& results, const std::string& csv_path) {
  std::cout << emit_report(results, ReportFormat::Text);
  if (!csv_path.empty()) write_output(csv_path, emit_report(results, ReportFormat::Csv));
  for (const auto& r : results)
    if (!r.passed()) return kExitFail;
  return kExitPass;
}

int majorize_exit(Relation r) {
  switch (r) {
    case Relation::EqualUpToPermutation: return 0;
    case Relation::StrictlyBelow: return 3;
    case Relation::Below: return 4;
    case Relation::StrictlyAbove: return 5;
    case Relation::Above: return 6;
    case Relation::Incomparable: return 7;
    case Relation::NormMismatch: return 8;
  }
  return kExitUsage;
}

void print_witness(const DoublyStochasticWitness& w, const std::string& lhs, const std::string& rhs) {
  std::cout << lhs << " = D " << rhs << " with D =\n";
  for (const auto& row : w.matrix) {
    for (std::size_t j = 0; j < row.size(); ++j) std::cout << (j ? "\t" : "  ") << to_string(row[j]);
    std::cout << '\n';
  }
  std::cout << "t_transforms\t" << w.t_transforms << '\n';
  std::cout << "birkhoff_terms\t" << w.decomposition.size() << '\n';
  for (const auto& term : w.decomposition) std::cout << "  " << to_string(term.weight) << '\t' << term.perm.str() << '\n';
}

struct InlineExperiment {
  std::string group = "sym(3)";
  std::string subgroup;
  std::string pi;
  std::size_t rounds = 1;
  std::size_t n = 1;
  std::optional<std::size_t> q_max;
  std::string csv;
};

int run_inline(ExperimentKind kind, const InlineExperiment& opt) {
  if (kind == ExperimentKind::Amplifier) return report({run_amplifier(opt.n)}, opt.csv);

  GroupTable G, H;
  Permutation pi = Permutation::identity(1);
  try {
    G = parse_group_spec(opt.group);
    H = parse_group_spec(opt.subgroup);
    pi = Permutation::parse(opt.pi);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (H.degree() != G.degree() || pi.degree() != G.degree()) throw UsageError("--subgroup and --pi must match the group degree");
  if (!H.is_subgroup_of(G)) throw UsageError("--subgroup is not contained in --group");
  if (!G.contains(pi)) throw UsageError("--pi is not in --group");
  const std::size_t q_max = opt.q_max.value_or(std::min<std::size_t>(2, G.degree()));
  if (q_max > G.degree()) throw UsageError("--q-max exceeds the degree");

  switch (kind) {
    case ExperimentKind::Expand: return report({run_expand(G, H, pi, q_max)}, opt.csv);
    case ExperimentKind::Collapse: return report({run_collapse(G, H, pi, q_max)}, opt.csv);
    case ExperimentKind::GeneralCollapse:
      if (opt.rounds < 1) throw UsageError("--rounds must be at least 1");
      return report({run_general_collapse(G, H, pi, opt.rounds)}, opt.csv);
    case ExperimentKind::Amplifier: break;
  }
  return kExitUsage;
}

void add_inline_options(CLI::App* cmd, InlineExperiment& opt, bool rounds) {
  cmd->add_option("--group", opt.group, "ambient group, e.g. sym(3)")->capture_default_str();
  cmd->add_option("--subgroup", opt.subgroup, "subgroup H, e.g. gen([[1,0,2]])")->required();
  cmd->add_option("--pi", opt.pi, "permutation as an image array, e.g. [0,2,1]")->required();
  cmd->add_option("--q-max", opt.q_max, "largest data complexity compared");
  if (rounds) cmd->add_option("--rounds", opt.rounds, "round count r")->capture_default_str();
  cmd->add_option("--csv", opt.csv, "also write CSV rows to this file ('-' for stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact security ordering of product ciphers over finite permutation groups"};
  app.require_subcommand(1);

  std::string scenario_path, csv_path, product, x_path, y_path, dist_path, alpha_text = "1/2", renyi_text = "2";
  std::string left_name, right_name;
  bool witness = false, per_tuple = false, csv_flag = false;
  std::optional<std::size_t> compare_q_max;
  InlineExperiment expand_opt, collapse_opt, general_opt, amplifier_opt;

  auto* run = app.add_subcommand("run", "run every comparison and experiment of a scenario");
  run->add_option("scenario", scenario_path, "scenario JSON file ('-' for stdin)")->required();
  run->add_option("--csv", csv_path, "also write CSV rows to this file ('-' for stdout)");

  auto* expand = app.add_subcommand("expand", "T = XYZ versus D = XZ, X and Z uniform on H, Y fixed at pi");
  add_inline_options(expand, expand_opt, false);
  auto* collapse = app.add_subcommand("collapse", "T = XYZ versus D = XZ, X and Z uniform on piH, Y fixed at pi^-1");
  add_inline_options(collapse, collapse_opt, false);
  auto* general = app.add_subcommand("general-collapse", "alternating product with r rounds against the plain product");
  add_inline_options(general, general_opt, true);
  auto* amplifier = app.add_subcommand("amplifier", "double coset of Sym(2^n) inside Sym(2^n+1)");
  amplifier->add_option("--n", amplifier_opt.n, "security parameter")->capture_default_str();
  amplifier->add_option("--csv", amplifier_opt.csv, "also write CSV rows to this file ('-' for stdout)");

  auto* conv = app.add_subcommand("convolve", "print the distributions of a scenario's products");
  conv->add_option("scenario", scenario_path, "scenario JSON file ('-' for stdin)")->required();
  conv->add_option("--product", product, "print only this cipher or product");

  auto* majorize = app.add_subcommand("majorize", "decide x versus y under majorization");
  majorize->add_option("x", x_path, "vector file of rationals ('-' for stdin)")->required();
  majorize->add_option("y", y_path, "vector file of rationals")->required();
  majorize->add_flag("--witness", witness, "print a doubly-stochastic witness and its Birkhoff terms");
  majorize->footer("Exit status: 0 equal, 3 strictly-below, 5 strictly-above, 7 incomparable, 8 norm-mismatch.");

  auto* metrics = app.add_subcommand("metrics", "entropy, guesswork and variation distance of a distribution");
  metrics->add_option("dist", dist_path, "vector file of rationals ('-' for stdin)")->required();
  metrics->add_option("--alpha", alpha_text, "success probability for marginal and alpha guesswork")->capture_default_str();
  metrics->add_option("--renyi", renyi_text, "Renyi order")->capture_default_str();

  auto* compare_cmd = app.add_subcommand("compare", "q-query comparison of scenario ciphers");
  compare_cmd->add_option("scenario", scenario_path, "scenario JSON file ('-' for stdin)")->required();
  compare_cmd->add_option("--q-max", compare_q_max, "largest data complexity (default: the scenario's q_max)");
  compare_cmd->add_option("--left", left_name, "left cipher (default: the scenario's compare list)");
  compare_cmd->add_option("--right", right_name, "right cipher");
  compare_cmd->add_flag("--per-tuple", per_tuple, "one line per plaintext tuple");
  compare_cmd->add_flag("--csv", csv_flag, "emit CSV rows instead of the text table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*run) return report(run_scenario(parse_scenario(read_input(scenario_path))), csv_path);
    if (*expand) return run_inline(ExperimentKind::Expand, expand_opt);
    if (*collapse) return run_inline(ExperimentKind::Collapse, collapse_opt);
    if (*general) return run_inline(ExperimentKind::GeneralCollapse, general_opt);
    if (*amplifier) return run_inline(ExperimentKind::Amplifier, amplifier_opt);

    if (*conv) {
      const Scenario s = parse_scenario(read_input(scenario_path));
      std::vector<std::string> names;
      if (!product.empty()) {
        s.distribution(product);
        names.push_back(product);
      } else if (!s.products.empty()) {
        for (const auto& [name, factors] : s.products) names.push_back(name);
      } else {
        for (const auto& c : s.ciphers) names.push_back(c.name);
      }
      for (const auto& name : names) {
        const CipherDist& d = s.distribution(name);
        std::cout << "# " << name << "  support " << support(d).size() << '\n';
        for (ElementIndex i : support(d)) std::cout << d.group().element(i).str() << '\t' << to_string(d.mass(i)) << '\n';
      }
      return kExitPass;
    }

    if (*majorize) {
      const auto x = read_vector(x_path);
      const auto y = read_vector(y_path);
      const auto v = compare(x, y);
      std::cout << to_string(v.relation) << '\n';
      if (v.witness_prefix)
        std::cout << "prefix " << v.witness_prefix->first << ": x above y; prefix " << v.witness_prefix->second
                  << ": x below y\n";
      if (witness) {
        if (is_below(v.relation)) print_witness(hlp_witness(x, y), "x", "y");
        else if (is_above(v.relation)) print_witness(hlp_witness(y, x), "y", "x");
        else std::cout << "no doubly-stochastic witness exists\n";
      }
      return majorize_exit(v.relation);
    }

    if (*metrics) {
      const auto x = read_vector(dist_path);
      const Rational alpha = option_rational(alpha_text, "--alpha");
      const Rational order = option_rational(renyi_text, "--renyi");
      std::vector<MetricValue> values;
      try {
        values = all_metrics(x, alpha, order);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      for (const auto& m : values) std::cout << m.name() << '\t' << m.value_string() << '\n';
      return kExitPass;
    }

    if (*compare_cmd) {
      const Scenario s = parse_scenario(read_input(scenario_path));
      const std::size_t q_max = compare_q_max.value_or(s.q_max);
      if (q_max > s.message_count) throw UsageError("--q-max exceeds the message count");
      std::vector<ComparisonSpec> pairs;
      if (!left_name.empty() || !right_name.empty()) {
        if (left_name.empty() || right_name.empty()) throw UsageError("--left and --right go together");
        s.distribution(left_name);
        s.distribution(right_name);
        pairs.push_back({left_name, right_name, std::nullopt});
      } else {
        pairs = s.comparisons;
      }
      if (pairs.empty()) throw UsageError("scenario has no compare entries; pass --left and --right");

      int status = kExitPass;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& p = pairs[i];
        const auto rep = compare_q(s.distribution(p.left), s.distribution(p.right), q_max, p.left, p.right);
        if (csv_flag) {
          std::string rows = format_comparison_csv(rep);
          if (i > 0) rows = rows.substr(rows.find('\n') + 1);
          std::cout << rows;
        } else {
          std::cout << format_comparison_text(rep, per_tuple);
        }
        if (p.expect && *p.expect != rep.overall) status = kExitFail;
      }
      return status;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
