#pragma once

#include "cipherorder/experiments.hpp"

#include <span>
#include <string>

namespace cipherorder {

enum class ReportFormat { Text, Csv };

/// Byte-identical for identical inputs. CSV columns:
/// experiment,quantity,expected,actual,verdict
std::string emit_report(std::span<const ExperimentResult> results, ReportFormat format);

/// Per-q table: majorization verdict, NCPA advantage and conditional guesswork
/// for both ciphers. With per_tuple, every tuple gets its own line.
std::string format_comparison_text(const ComparisonReport& report, bool per_tuple);

/// Columns: q,tuple,metric,value_left,value_right,verdict
std::string format_comparison_csv(const ComparisonReport& report);

std::string csv_field(const std::string& s);

}  // namespace cipherorder
