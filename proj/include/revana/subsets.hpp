#ifndef REVANA_SUBSETS_HPP
#define REVANA_SUBSETS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "revana/reversal.hpp"

namespace revana {

/// Ground truth over every candidate subset: one fitted sign per subset of
/// the candidate columns, from a full least-squares fit on [1 x W s].
struct SubsetReport {
  std::vector<std::string> labels;              // candidate labels, in order
  std::vector<int> signs;                       // indexed by subset bitmask
  std::map<std::string, int> subset_signs;      // "{a,b}" -> sign
  bool any_reversal = false;
  std::vector<std::string> flipping_subsets;    // smallest cardinality first
  std::vector<std::vector<std::string>> flipping_label_sets;

  int baseline_sign() const { return signs.empty() ? 0 : signs.front(); }
  static std::string subset_id(const std::vector<std::string>& labels, std::uint32_t mask);
};

/// Exhaustively fit all 2^k candidate subsets.  Refuses k above the ceiling.
/// Subsets are evaluated independently (in parallel for large k) and the
/// report is assembled in bitmask order, so output is deterministic.
SubsetReport enumerate_subsets(const RegressionProblem& problem, int ceiling = 20,
                               const Tolerances& tol = {});

/// A two-population incidence study cut into categories: a 0/1 population
/// indicator, an outcome column, and a row partition into k+1 categories
/// encoded as k indicator columns with the final category as reference.
class CategoricalStudy {
 public:
  /// population entries must be 0 or 1; category entries index the cells
  /// 0..q-1; outcome is the incidence column (binary or real-valued).
  CategoricalStudy(std::vector<int> population, std::vector<int> category,
                   std::vector<double> outcome, double membership_value = 1.0);

  int categories() const { return q_; }
  Eigen::Index n() const { return x_.n(); }
  const DataColumn& x() const { return x_; }
  const DataColumn& y() const { return y_; }
  const DataMatrix& indicators() const { return indicators_; }

  /// Mean outcome of the rows in category j with the given population value.
  /// Raises EmptyCell when no such rows exist.
  double cell_mean(int category, int population) const;
  long cell_count(int category, int population) const;
  double overall_mean(int population) const;

 private:
  int q_ = 0;
  DataColumn x_;
  DataColumn y_;
  DataMatrix indicators_;
  std::vector<std::vector<double>> cell_sums_;   // [category][population]
  std::vector<std::vector<long>> cell_counts_;
};

/// True when the population with strictly higher overall incidence has
/// strictly lower mean incidence within every category.  Ties in the
/// overall comparison yield false.  Raises EmptyCell when some
/// (category, population) cell has no rows.
bool simpson_check(const CategoricalStudy& study);

/// True when adjusting for the category indicators flips the sign of the
/// population coefficient.  Raises DegenerateBaseline when either slope is
/// too close to zero to carry a sign.
bool reversal_check(const CategoricalStudy& study, const Tolerances& tol = {});

/// Necessary condition via the correlation product: when false, no category
/// partition of this study can produce the paradox.
bool necessary_condition_strong(const CategoricalStudy& study);

/// Necessary condition via a single determination against the r_star
/// threshold: when false, the paradox is impossible.  Requires a baseline
/// correlation away from 0 and -1.
bool necessary_condition_weak(const CategoricalStudy& study, const Tolerances& tol = {});

/// Parse a long-format CSV with columns population, category, outcome.
CategoricalStudy load_study_csv(const std::string& path);

}  // namespace revana

#endif
