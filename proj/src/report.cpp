#include "cipherorder/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace cipherorder {

namespace {

std::string relation_of(const Rational& l, const Rational& r) {
  if (l < r) return "<";
  if (l > r) return ">";
  return "=";
}

void table(std::ostringstream& out, const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) return;
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  for (const auto& row : rows) {
    std::ostringstream line;
    line << ' ';
    for (std::size_t c = 0; c < row.size(); ++c) line << ' ' << std::left << std::setw(static_cast<int>(width[c])) << row[c];
    std::string text = line.str();
    text.erase(text.find_last_not_of(' ') + 1);
    out << text << '\n';
  }
}

}  // namespace

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_comparison_text(const ComparisonReport& report, bool per_tuple) {
  std::ostringstream out;
  const std::string& L = report.left_name;
  const std::string& R = report.right_name;
  out << "  " << L << " vs " << R << ": " << to_string(report.overall) << '\n';
  std::vector<std::vector<std::string>> rows{
      {"q", "cosets", "profiles", "Adv(" + L + ")", "Adv(" + R + ")", "W(" + L + "|C,p)", "W(" + R + "|C,p)", "order"}};
  for (const auto& level : report.levels) {
    rows.push_back({std::to_string(level.q), to_string(level.coset_relation), to_string(level.profile_relation),
                    to_string(level.max_advantage_left.value),
                    to_string(level.max_advantage_right.value), to_string(level.worst_guesswork_left),
                    to_string(level.worst_guesswork_right), to_string(level.order)});
    if (!per_tuple) continue;
    for (const auto& t : level.tuples) {
      rows.push_back({"  " + t.tuple.str(), to_string(t.coset_verdict.relation), to_string(t.profile_verdict.relation),
                      to_string(t.advantage_left), to_string(t.advantage_right), to_string(t.guesswork_left),
                      to_string(t.guesswork_right), ""});
    }
  }
  table(out, rows);
  return out.str();
}

std::string format_comparison_csv(const ComparisonReport& report) {
  std::ostringstream out;
  out << "q,tuple,metric,value_left,value_right,verdict\n";
  for (const auto& level : report.levels) {
    for (const auto& t : level.tuples) {
      const std::string tuple = csv_field(t.tuple.str());
      out << level.q << ',' << tuple << ",ncpa_advantage," << to_string(t.advantage_left) << ','
          << to_string(t.advantage_right) << ',' << relation_of(t.advantage_left, t.advantage_right) << '\n';
      out << level.q << ',' << tuple << ",conditional_guesswork," << to_string(t.guesswork_left) << ','
          << to_string(t.guesswork_right) << ',' << relation_of(t.guesswork_left, t.guesswork_right) << '\n';
      out << level.q << ',' << tuple << ",coset_majorization,,," << to_string(t.coset_verdict.relation) << '\n';
      out << level.q << ',' << tuple << ",profile_majorization,,," << to_string(t.profile_verdict.relation) << '\n';
    }
  }
  return out.str();
}

std::string emit_report(std::span<const ExperimentResult> results, ReportFormat format) {
  std::ostringstream out;
  if (format == ReportFormat::Csv) {
    out << "experiment,quantity,expected,actual,verdict\n";
    for (const auto& r : results)
      for (const auto& c : r.checks)
        out << csv_field(r.id) << ',' << csv_field(c.quantity) << ',' << csv_field(c.expected) << ','
            << csv_field(c.actual) << ',' << (c.pass ? "pass" : "fail") << '\n';
    return out.str();
  }

  for (const auto& r : results) {
    out << "== " << r.id << (r.degenerate ? " (degenerate: pi lies in H)" : "") << ": "
        << (r.passed() ? "PASS" : "FAIL") << '\n';
    std::vector<std::vector<std::string>> checks{{"quantity", "expected", "actual", "verdict"}};
    for (const auto& c : r.checks) checks.push_back({c.quantity, c.expected, c.actual, c.pass ? "pass" : "fail"});
    table(out, checks);
    if (!r.metrics.empty()) {
      out << '\n';
      std::vector<std::vector<std::string>> metrics{{"metric", r.left_label, r.right_label}};
      for (const auto& m : r.metrics) metrics.push_back({m.metric, m.left, m.right});
      table(out, metrics);
    }
    if (r.comparison) {
      out << '\n' << format_comparison_text(*r.comparison, false);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace cipherorder
