#ifndef REVANA_REPORT_HPP
#define REVANA_REPORT_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "revana/reversal.hpp"
#include "revana/subsets.hpp"

namespace revana {

/// One analysis request: which file, which roles the columns play, and the
/// knobs that shape the run.
struct AnalysisConfig {
  std::string input_path;
  std::string response;
  std::string explanatory;
  std::vector<std::string> controls;
  std::vector<std::string> candidates;
  bool standardize = false;
  int subset_ceiling = 20;
  std::map<std::string, double> tolerance_overrides;
  std::uint64_t seed = 0;
  /// Condition the per-candidate partial correlations on the explanatory
  /// column as well as the remaining candidates.  Off by default: the
  /// stability table conditions on the other candidates only.
  bool partials_include_explanatory = false;
};

struct PartialTableRow {
  std::string label;
  double partial_r = 0;
};

/// Contextual coefficient summary for the text report; not part of the
/// stability criterion.
struct CoefficientRow {
  std::string label;
  double beta = 0;
  double t = 0;
};

struct Report {
  ReversalDiagnostics diagnostics;
  std::optional<SubsetReport> subset_report;
  std::string subset_skip_reason;
  std::vector<PartialTableRow> partial_table;
  std::string narrative_verdict;
  std::vector<CoefficientRow> coefficients;
};

enum class ReportFormat { Json, Text };

/// Parse a numeric CSV: UTF-8, header row of unique labels, decimal-point
/// numbers.  Any malformed or missing field raises ParseError naming the
/// row and column; an empty file raises EmptyFile.
DataMatrix load_csv(const std::string& path);
DataMatrix load_csv(std::istream& in, const std::string& name);

/// Write a matrix in the same CSV dialect load_csv reads.
void write_csv(const DataMatrix& matrix, std::ostream& out);

/// Center and scale every column to unit sample standard deviation.
/// Raises ZeroVariance naming the first constant column.
DataMatrix standardize(const DataMatrix& matrix);

/// Full analysis pass: load, optionally standardize, diagnose, enumerate
/// subsets when the candidate count permits, and assemble the per-candidate
/// stability table.
Report run_analysis(const AnalysisConfig& config);
Report run_analysis(const AnalysisConfig& config, const DataMatrix& data);

/// Render a report.  The json form is a single stable-schema object holding
/// full-precision values; the text form is a human-readable summary with
/// diagnostics rounded to four decimals.
std::string emit_report(const Report& report, ReportFormat format);

Tolerances tolerances_from(const std::map<std::string, double>& overrides);

}  // namespace revana

#endif
