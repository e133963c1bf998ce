#include "revana/subsets.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "revana/linalg.hpp"
#include "revana/stats.hpp"

namespace revana {

std::string SubsetReport::subset_id(const std::vector<std::string>& labels, std::uint32_t mask) {
  std::string id = "{";
  bool first = true;
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (mask & (1u << j)) {
      if (!first) id += ",";
      id += labels[j];
      first = false;
    }
  }
  id += "}";
  return id;
}

namespace {

int subset_sign(const RegressionProblem& problem, std::uint32_t mask, const Tolerances& tol) {
  DataMatrix design;
  design.append(problem.x());
  for (const auto& column : problem.controls()) design.append(column);
  for (std::size_t j = 0; j < problem.k(); ++j) {
    if (mask & (1u << j)) design.append(problem.candidates()[j]);
  }
  const FitResult fit = ols_fit(problem.y(), design, true, tol.rank_rel);
  const double scale = problem.y().values().norm() / (problem.x().values().norm() + 1e-300);
  return slope_sign(fit.first_slope(), scale, tol.sign_rel);
}

}  // namespace

SubsetReport enumerate_subsets(const RegressionProblem& problem, int ceiling,
                               const Tolerances& tol) {
  const std::size_t k = problem.k();
  if (static_cast<int>(k) > ceiling || k > 30) {
    throw SubsetCeilingExceeded("candidate count " + std::to_string(k) +
                                " exceeds the subset ceiling " +
                                std::to_string(std::min(ceiling, 30)));
  }
  const std::uint32_t total = 1u << k;

  SubsetReport report;
  report.labels = problem.candidates().labels();
  report.signs.assign(total, 0);

  const auto evaluate_range = [&](std::uint32_t begin, std::uint32_t end) {
    for (std::uint32_t mask = begin; mask < end; ++mask) {
      report.signs[mask] = subset_sign(problem, mask, tol);
    }
  };

  const unsigned workers = std::thread::hardware_concurrency();
  if (total >= 4096 && workers > 1) {
    std::vector<std::thread> pool;
    const std::uint32_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint32_t begin = w * chunk;
      const std::uint32_t end = std::min(total, begin + chunk);
      if (begin < end) pool.emplace_back(evaluate_range, begin, end);
    }
    for (auto& worker : pool) worker.join();
  } else {
    evaluate_range(0, total);
  }

  const int baseline = report.signs[0];
  std::vector<std::uint32_t> flipped;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    report.subset_signs[SubsetReport::subset_id(report.labels, mask)] = report.signs[mask];
    if (mask != 0 && report.signs[mask] != 0 && baseline != 0 &&
        report.signs[mask] != baseline) {
      flipped.push_back(mask);
    }
  }
  std::stable_sort(flipped.begin(), flipped.end(), [](std::uint32_t a, std::uint32_t b) {
    const int ca = std::popcount(a), cb = std::popcount(b);
    return ca != cb ? ca < cb : a < b;
  });
  for (std::uint32_t mask : flipped) {
    report.flipping_subsets.push_back(SubsetReport::subset_id(report.labels, mask));
    std::vector<std::string> names;
    for (std::size_t j = 0; j < k; ++j) {
      if (mask & (1u << j)) names.push_back(report.labels[j]);
    }
    report.flipping_label_sets.push_back(std::move(names));
  }
  report.any_reversal = !flipped.empty();
  return report;
}

CategoricalStudy::CategoricalStudy(std::vector<int> population, std::vector<int> category,
                                   std::vector<double> outcome, double membership_value)
    : x_("population", Eigen::VectorXd::Zero(static_cast<Eigen::Index>(population.size()))),
      y_("outcome", Eigen::VectorXd::Zero(static_cast<Eigen::Index>(outcome.size()))) {
  const std::size_t n = population.size();
  if (category.size() != n || outcome.size() != n) {
    throw DimensionMismatch("study columns have unequal lengths");
  }
  if (n < 2) throw InputError("a study needs at least 2 rows");
  if (membership_value == 0.0) throw InputError("membership value must be nonzero");

  int max_category = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (population[i] != 0 && population[i] != 1) {
      throw InputError("population entries must be 0 or 1, got " +
                       std::to_string(population[i]) + " at row " + std::to_string(i + 1));
    }
    if (category[i] < 0) throw InputError("category indices must be nonnegative");
    max_category = std::max(max_category, category[i]);
  }
  q_ = max_category + 1;

  Eigen::VectorXd xv(n), yv(n);
  cell_sums_.assign(q_, std::vector<double>(2, 0.0));
  cell_counts_.assign(q_, std::vector<long>(2, 0));
  Eigen::MatrixXd indicators = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), q_ - 1);
  for (std::size_t i = 0; i < n; ++i) {
    xv[static_cast<Eigen::Index>(i)] = population[i];
    yv[static_cast<Eigen::Index>(i)] = outcome[i];
    cell_sums_[category[i]][population[i]] += outcome[i];
    cell_counts_[category[i]][population[i]] += 1;
    if (category[i] < q_ - 1) {
      indicators(static_cast<Eigen::Index>(i), category[i]) = membership_value;
    }
  }
  x_ = DataColumn("population", std::move(xv));
  y_ = DataColumn("outcome", std::move(yv));
  for (int j = 0; j + 1 < q_; ++j) {
    indicators_.append(DataColumn("category_" + std::to_string(j), indicators.col(j)));
  }
}

double CategoricalStudy::cell_mean(int category, int population) const {
  const long count = cell_count(category, population);
  if (count == 0) {
    throw EmptyCell("no rows in category " + std::to_string(category) + " with population " +
                    std::to_string(population));
  }
  return cell_sums_[category][population] / static_cast<double>(count);
}

long CategoricalStudy::cell_count(int category, int population) const {
  if (category < 0 || category >= q_ || (population != 0 && population != 1)) {
    throw InputError("cell index out of range");
  }
  return cell_counts_[category][population];
}

double CategoricalStudy::overall_mean(int population) const {
  double sum = 0.0;
  long count = 0;
  for (int j = 0; j < q_; ++j) {
    sum += cell_sums_[j][population];
    count += cell_counts_[j][population];
  }
  if (count == 0) throw EmptyCell("population " + std::to_string(population) + " has no rows");
  return sum / static_cast<double>(count);
}

bool simpson_check(const CategoricalStudy& study) {
  const double mean0 = study.overall_mean(0);
  const double mean1 = study.overall_mean(1);
  if (mean0 == mean1) return false;  // ties read strictly
  const int higher = mean1 > mean0 ? 1 : 0;
  const int lower = 1 - higher;
  for (int j = 0; j < study.categories(); ++j) {
    if (!(study.cell_mean(j, higher) < study.cell_mean(j, lower))) return false;
  }
  return true;
}

bool reversal_check(const CategoricalStudy& study, const Tolerances& tol) {
  DataMatrix base;
  base.append(study.x());
  const double plain = ols_fit(study.y(), base, true, tol.rank_rel).first_slope();

  DataMatrix adjusted_design = base;
  for (const auto& column : study.indicators()) adjusted_design.append(column);
  const double adjusted = ols_fit(study.y(), adjusted_design, true, tol.rank_rel).first_slope();

  const double scale =
      study.y().values().norm() / (study.x().values().norm() + 1e-300);
  const int sign_plain = slope_sign(plain, scale, tol.sign_rel);
  const int sign_adjusted = slope_sign(adjusted, scale, tol.sign_rel);
  if (sign_plain == 0 || sign_adjusted == 0) {
    throw DegenerateBaseline("a slope is too close to zero to carry a sign");
  }
  return sign_plain != sign_adjusted;
}

bool necessary_condition_strong(const CategoricalStudy& study) {
  if (study.indicators().empty()) return false;  // one category: no partition effect
  const double r = corr(study.x(), study.y());
  const double R_ux = std::sqrt(coef_determination(study.indicators(), study.x()));
  const double R_uy = std::sqrt(coef_determination(study.indicators(), study.y()));
  return R_ux * R_uy > std::abs(r);
}

bool necessary_condition_weak(const CategoricalStudy& study, const Tolerances& tol) {
  if (study.indicators().empty()) return false;
  const double r = corr(study.x(), study.y());
  if (std::abs(r) < tol.baseline) {
    throw DegenerateBaseline("population and outcome are uncorrelated");
  }
  if (r < -1.0 + tol.baseline) {
    throw DegenerateBaseline("population-outcome correlation is -1");
  }
  DataColumn x_centered = center(study.x());
  if (r < 0.0) {
    x_centered = DataColumn(x_centered.label(), Eigen::VectorXd(-x_centered.values()));
  }
  const PartialContext ctx(std::move(x_centered), center(study.y()),
                           residualize(study.indicators(), DataMatrix{}), "");
  const DataColumn axis = v_vector(ctx);
  return coef_determination(ctx.u_res, axis) > r_star(std::abs(r));
}

CategoricalStudy load_study_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw EmptyFile("'" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  {
    std::istringstream header(line);
    std::string a, b, c;
    std::getline(header, a, ',');
    std::getline(header, b, ',');
    std::getline(header, c, ',');
    if (a != "population" || b != "category" || c != "outcome") {
      throw ParseError("expected header population,category,outcome in '" + path + "'", 1, "");
    }
  }

  std::vector<int> population;
  std::vector<std::string> category_names;
  std::vector<int> category;
  std::vector<double> outcome;
  long row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string pop_field, cat_field, out_field;
    if (!std::getline(fields, pop_field, ',') || !std::getline(fields, cat_field, ',') ||
        !std::getline(fields, out_field, ',')) {
      throw ParseError("row " + std::to_string(row) + " is missing fields", row, "");
    }
    try {
      const int pop = std::stoi(pop_field);
      population.push_back(pop);
    } catch (const std::exception&) {
      throw ParseError("row " + std::to_string(row) + ": bad population '" + pop_field + "'",
                       row, "population");
    }
    auto found = std::find(category_names.begin(), category_names.end(), cat_field);
    if (found == category_names.end()) {
      category_names.push_back(cat_field);
      category.push_back(static_cast<int>(category_names.size()) - 1);
    } else {
      category.push_back(static_cast<int>(found - category_names.begin()));
    }
    try {
      outcome.push_back(std::stod(out_field));
    } catch (const std::exception&) {
      throw ParseError("row " + std::to_string(row) + ": bad outcome '" + out_field + "'",
                       row, "outcome");
    }
  }
  return {std::move(population), std::move(category), std::move(outcome)};
}

}  // namespace revana
