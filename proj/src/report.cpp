#include "revana/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "revana/linalg.hpp"

namespace revana {

namespace {

std::string trim(const std::string& field) {
  const auto begin = field.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = field.find_last_not_of(" \t");
  return field.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(current);
  return fields;
}

double parse_number(const std::string& field, long row, const std::string& column) {
  const std::string text = trim(field);
  if (text.empty()) {
    throw ParseError("row " + std::to_string(row) + ", column '" + column + "': empty field",
                     row, column);
  }
  double value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [parsed, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || parsed != end || !std::isfinite(value)) {
    throw ParseError("row " + std::to_string(row) + ", column '" + column + "': '" + text +
                     "' is not a finite number", row, column);
  }
  return value;
}

int sign_of(double beta, double scale, const Tolerances& tol) {
  return slope_sign(beta, scale, tol.sign_rel);
}

std::string format_rounded(double value, int decimals) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(decimals) << value;
  return out.str();
}

std::string narrative_for(const Report& report, const std::string& explanatory) {
  const ReversalDiagnostics& d = report.diagnostics;
  std::ostringstream out;
  switch (d.verdict) {
    case Verdict::ReversalCertain:
      out << "Adjusting for the full candidate set reverses the sign of the '" << explanatory
          << "' coefficient: " << format_rounded(d.beta_unadjusted, 4) << " becomes "
          << format_rounded(d.beta_adjusted, 4) << " (criterion ratio "
          << format_rounded(d.reversal_ratio, 4) << " > 1).";
      break;
    case Verdict::StableAllSubsetsCor1:
      out << "The sign of the '" << explanatory
          << "' coefficient is stable under adjustment for every subset of the candidates: "
          << "the correlation product " << format_rounded(d.R_ux_given_w * d.R_uy_given_w, 4)
          << " stays below |r| = " << format_rounded(std::abs(d.r_xy_given_w), 4) << ".";
      break;
    case Verdict::StableAllSubsetsCor2:
      out << "The sign of the '" << explanatory
          << "' coefficient is stable under adjustment for every subset of the candidates: "
          << "the candidates' determination for the v axis "
          << format_rounded(d.R2_u_v, 4) << " stays below the threshold r* = "
          << format_rounded(d.r_star, 4) << ".";
      break;
    case Verdict::Indeterminate:
      out << "Neither stability guarantee applies and the full candidate set does not "
          << "certainly reverse the sign of '" << explanatory
          << "'; consult the subset enumeration.";
      break;
  }
  return out.str();
}

}  // namespace

DataMatrix load_csv(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) throw EmptyFile("'" + name + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> labels;
  for (const auto& field : split_fields(line)) {
    const std::string label = trim(field);
    if (label.empty()) throw ParseError("empty header label", 1, "");
    for (const auto& existing : labels) {
      if (existing == label) {
        throw ParseError("duplicate header label '" + label + "'", 1, label);
      }
    }
    labels.push_back(label);
  }

  std::vector<std::vector<double>> columns(labels.size());
  long row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != labels.size()) {
      throw ParseError("row " + std::to_string(row) + " has " + std::to_string(fields.size()) +
                       " fields, expected " + std::to_string(labels.size()), row, "");
    }
    for (std::size_t j = 0; j < fields.size(); ++j) {
      columns[j].push_back(parse_number(fields[j], row, labels[j]));
    }
  }
  if (columns.empty() || columns.front().size() < 2) {
    throw ParseError("'" + name + "' has fewer than 2 data rows", row, "");
  }

  DataMatrix out;
  for (std::size_t j = 0; j < labels.size(); ++j) {
    out.append(DataColumn(labels[j],
                          Eigen::Map<const Eigen::VectorXd>(
                              columns[j].data(), static_cast<Eigen::Index>(columns[j].size()))));
  }
  return out;
}

DataMatrix load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return load_csv(in, path);
}

void write_csv(const DataMatrix& matrix, std::ostream& out) {
  const auto labels = matrix.labels();
  for (std::size_t j = 0; j < labels.size(); ++j) {
    out << (j ? "," : "") << labels[j];
  }
  out << "\n";
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
      out << (j ? "," : "") << matrix[j][i];
    }
    out << "\n";
  }
}

DataMatrix standardize(const DataMatrix& matrix) {
  DataMatrix out;
  for (const auto& column : matrix) {
    const Eigen::VectorXd centered = column.values().array() - column.values().mean();
    const double sd = std::sqrt(centered.squaredNorm() /
                                static_cast<double>(column.n() - 1));
    if (sd <= 1e-12 * column.values().norm() || sd == 0.0) {
      throw ZeroVariance(column.label());
    }
    out.append(DataColumn(column.label(), centered / sd));
  }
  return out;
}

Tolerances tolerances_from(const std::map<std::string, double>& overrides) {
  Tolerances tol;
  for (const auto& [key, value] : overrides) {
    if (key == "rank_rel") tol.rank_rel = value;
    else if (key == "baseline") tol.baseline = value;
    else if (key == "ratio_boundary") tol.ratio_boundary = value;
    else if (key == "sign_rel") tol.sign_rel = value;
    else throw InputError("unknown tolerance override '" + key + "'");
  }
  return tol;
}

Report run_analysis(const AnalysisConfig& config, const DataMatrix& data) {
  std::vector<std::string> used{config.response, config.explanatory};
  used.insert(used.end(), config.controls.begin(), config.controls.end());
  used.insert(used.end(), config.candidates.begin(), config.candidates.end());
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (used[i].empty()) throw InputError("column roles must all be named");
    if (!data.contains(used[i])) throw InputError("no column labeled '" + used[i] + "'");
    for (std::size_t j = i + 1; j < used.size(); ++j) {
      if (used[i] == used[j]) {
        throw InputError("column '" + used[i] + "' was assigned two roles");
      }
    }
  }
  if (config.candidates.empty()) throw InputError("at least one candidate column is required");
  if (config.subset_ceiling < 0) throw InputError("subset ceiling must be nonnegative");

  DataMatrix working = data.select(used);
  if (config.standardize) working = standardize(working);

  const Tolerances tol = tolerances_from(config.tolerance_overrides);
  ProblemOptions options;
  options.relaxed = true;
  options.rank_rel = tol.rank_rel;
  RegressionProblem problem(working.at(config.response), working.at(config.explanatory),
                            working.select(config.controls), working.select(config.candidates),
                            options);

  Report report;
  report.diagnostics = diagnose(problem, tol);

  const std::size_t k = problem.k();
  if (static_cast<int>(k) <= config.subset_ceiling) {
    report.subset_report = enumerate_subsets(problem, config.subset_ceiling, tol);
  } else {
    report.subset_skip_reason = "enumeration skipped: " + std::to_string(k) +
                                " candidates exceed the ceiling " +
                                std::to_string(config.subset_ceiling);
  }

  // stability table: each candidate against the response given the others
  for (const auto& label : config.candidates) {
    std::vector<std::string> conditioning;
    for (const auto& other : config.candidates) {
      if (other != label) conditioning.push_back(other);
    }
    if (config.partials_include_explanatory) conditioning.push_back(config.explanatory);
    report.partial_table.push_back(
        {label, partial_corr(working.at(label), working.at(config.response),
                             working.select(conditioning))});
  }

  // contextual coefficient summary of the full fit
  {
    DataMatrix design;
    design.append(problem.x());
    for (const auto& column : problem.controls()) design.append(column);
    for (const auto& column : problem.candidates()) design.append(column);
    const FitResult fit = ols_fit(problem.y(), design, true, tol.rank_rel);

    const Eigen::Index n = problem.n();
    const Eigen::Index params = fit.coefficients.size();
    Eigen::MatrixXd dense(n, params);
    dense.col(0).setOnes();
    for (std::size_t j = 0; j < design.cols(); ++j) {
      dense.col(static_cast<Eigen::Index>(j) + 1) = design[j].values();
    }
    const Eigen::Index dof = n - params;
    const double sigma2 =
        dof > 0 ? fit.residuals.squaredNorm() / static_cast<double>(dof)
                : std::numeric_limits<double>::quiet_NaN();
    const Eigen::MatrixXd gram_inverse =
        (dense.transpose() * dense)
            .ldlt()
            .solve(Eigen::MatrixXd::Identity(params, params));
    for (std::size_t j = 0; j < design.cols(); ++j) {
      const Eigen::Index idx = static_cast<Eigen::Index>(j) + 1;
      const double se = std::sqrt(sigma2 * gram_inverse(idx, idx));
      report.coefficients.push_back(
          {design[j].label(), fit.coefficients[idx],
           se > 0 ? fit.coefficients[idx] / se : std::numeric_limits<double>::quiet_NaN()});
    }
  }

  report.narrative_verdict = narrative_for(report, config.explanatory);
  return report;
}

Report run_analysis(const AnalysisConfig& config) {
  return run_analysis(config, load_csv(config.input_path));
}

std::string emit_report(const Report& report, ReportFormat format) {
  const ReversalDiagnostics& d = report.diagnostics;
  const double beta_scale = std::abs(d.beta_unadjusted) + std::abs(d.beta_adjusted);
  const Tolerances tol;
  const int baseline_sign = sign_of(d.beta_unadjusted, beta_scale, tol);
  const int adjusted_sign = sign_of(d.beta_adjusted, beta_scale, tol);

  if (format == ReportFormat::Json) {
    nlohmann::ordered_json j;
    j["baseline_sign"] = baseline_sign;
    j["adjusted_sign"] = adjusted_sign;
    j["prop1_ratio"] = d.reversal_ratio;
    j["r_partial"] = d.r_xy_given_w;
    j["R_ux"] = d.R_ux_given_w;
    j["R_uy"] = d.R_uy_given_w;
    j["fitted_corr"] = d.fitted_corr;
    j["r_star"] = d.r_star;
    j["R2_u_v"] = d.R2_u_v;
    j["verdict"] = to_string(d.verdict);
    if (report.subset_report) {
      nlohmann::ordered_json subsets;
      subsets["count"] = report.subset_report->signs.size();
      subsets["flipped"] = report.subset_report->flipping_subsets.size();
      subsets["flipped_list"] = report.subset_report->flipping_label_sets;
      j["subsets"] = subsets;
    } else {
      j["subsets"] = nullptr;
    }
    nlohmann::ordered_json table = nlohmann::ordered_json::array();
    for (const auto& row : report.partial_table) {
      table.push_back({{"label", row.label}, {"partial_r", row.partial_r}});
    }
    j["partial_table"] = table;
    return j.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "sign stability report\n";
  out << "=====================\n";
  out << "verdict: " << to_string(d.verdict) << "\n";
  out << report.narrative_verdict << "\n\n";
  out << "diagnostics (4 decimals)\n";
  out << "  baseline slope        " << format_rounded(d.beta_unadjusted, 4)
      << "  (sign " << (baseline_sign > 0 ? "+" : baseline_sign < 0 ? "-" : "0") << ")\n";
  out << "  adjusted slope        " << format_rounded(d.beta_adjusted, 4)
      << "  (sign " << (adjusted_sign > 0 ? "+" : adjusted_sign < 0 ? "-" : "0") << ")\n";
  out << "  r (partial)           " << format_rounded(d.r_xy_given_w, 4) << "\n";
  out << "  R_ux                  " << format_rounded(d.R_ux_given_w, 4) << "\n";
  out << "  R_uy                  " << format_rounded(d.R_uy_given_w, 4) << "\n";
  out << "  fitted correlation    " << format_rounded(d.fitted_corr, 4) << "\n";
  out << "  criterion ratio       " << format_rounded(d.reversal_ratio, 4) << "\n";
  out << "  r*                    " << format_rounded(d.r_star, 4) << "\n";
  out << "  R2(u, v)              " << format_rounded(d.R2_u_v, 4) << "\n";

  if (d.verdict == Verdict::ReversalCertain) {
    out << "\nreversal evidence: the coefficient flips from "
        << format_rounded(d.beta_unadjusted, 4) << " to "
        << format_rounded(d.beta_adjusted, 4)
        << " when the full candidate set is adjusted for\n";
  }

  if (report.subset_report) {
    const auto& subsets = *report.subset_report;
    out << "\nsubsets: " << subsets.signs.size() << " fitted, "
        << subsets.flipping_subsets.size() << " flip the sign\n";
    if (!subsets.flipping_subsets.empty()) {
      out << "  flipping:";
      for (const auto& id : subsets.flipping_subsets) out << " " << id;
      out << "\n";
    }
  } else if (!report.subset_skip_reason.empty()) {
    out << "\n" << report.subset_skip_reason << "\n";
  }

  if (!report.partial_table.empty()) {
    out << "\nper-candidate stability (|partial r| with the response, given the "
           "remaining candidates; higher indicates stability)\n";
    for (const auto& row : report.partial_table) {
      out << "  " << std::left << std::setw(16) << row.label << std::right
          << format_rounded(std::abs(row.partial_r), 4) << "\n";
    }
  }

  if (!report.coefficients.empty()) {
    out << "\ncoefficients of the full fit (contextual; t statistics are not part "
           "of the stability criterion; 2 decimals)\n";
    for (const auto& row : report.coefficients) {
      out << "  " << std::left << std::setw(16) << row.label << std::right
          << std::setw(10) << format_rounded(row.beta, 2) << std::setw(10)
          << (std::isfinite(row.t) ? format_rounded(row.t, 2) : "n/a") << "\n";
    }
  }
  return out.str();
}

}  // namespace revana
