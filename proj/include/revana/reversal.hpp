#ifndef REVANA_REVERSAL_HPP
#define REVANA_REVERSAL_HPP

#include <optional>
#include <string>

#include "revana/data.hpp"
#include "revana/stats.hpp"
#include "revana/tolerances.hpp"

namespace revana {

struct ProblemOptions {
  /// Strict construction (the default) enforces the assumptions the sign
  /// analysis is derived under: the response together with {1, x, W, U} is
  /// linearly independent and no column pair is exactly orthogonal.  Relaxed
  /// construction checks only that the design [1 x W U] has full rank; the
  /// crafted counterexample generators and the CLI use it, since their data
  /// intentionally contains exact orthogonality and saturated fits, and the
  /// operations report degeneracies themselves.
  bool relaxed = false;
  double rank_rel = Tolerances{}.rank_rel;
};

/// The (y, x, W, U) quadruple under study: response, explanatory column,
/// committed controls, and the candidate covariates whose subsets are in
/// question.  Construction verifies that the columns together with the
/// constant column are linearly independent and that none is constant.
class RegressionProblem {
 public:
  RegressionProblem(DataColumn y, DataColumn x, DataMatrix controls,
                    DataMatrix candidates, ProblemOptions options = {});

  const DataColumn& y() const { return y_; }
  const DataColumn& x() const { return x_; }
  const DataMatrix& controls() const { return controls_; }
  const DataMatrix& candidates() const { return candidates_; }

  Eigen::Index n() const { return y_.n(); }
  std::size_t p() const { return controls_.cols(); }
  std::size_t k() const { return candidates_.cols(); }

  /// x, y, and the candidates with the controls regressed out.
  PartialContext residual_context() const;

 private:
  DataColumn y_;
  DataColumn x_;
  DataMatrix controls_;
  DataMatrix candidates_;
};

enum class Verdict {
  ReversalCertain,        // the full candidate set flips the sign
  StableAllSubsetsCor1,   // correlation-product bound: no subset can flip
  StableAllSubsetsCor2,   // determination bound on the v axis: no subset can flip
  Indeterminate,
};

std::string to_string(Verdict verdict);

/// Every scalar the sign analysis rests on, for one problem.
struct ReversalDiagnostics {
  double r_xy_given_w = 0;      // partial correlation of x and y given W
  double R_ux_given_w = 0;      // multiple correlation of candidates with x given W
  double R_uy_given_w = 0;      // multiple correlation of candidates with y given W
  double fitted_corr = 0;       // correlation of the two projections onto the candidate span
  double reversal_ratio = 0;    // > 1 exactly when the full candidate set flips the sign
  double r_star = 0;            // stability threshold derived from |r_xy_given_w|
  double R2_u_v = 0;            // determination of the candidates for the v axis
  double beta_unadjusted = 0;   // slope of x in the fit on [1 x W]
  double beta_adjusted = 0;     // slope of x in the fit on [1 x W U]
  Verdict verdict = Verdict::Indeterminate;
};

/// The exact sign-flip criterion: the ratio
///
///     R(u|x) R(u|y) corr(px, py) / r
///
/// over the W-residualized problem, which exceeds 1 precisely when adding
/// the full candidate set reverses the sign of the x coefficient.  Raises
/// DegenerateBaseline when the residual correlation of x and y vanishes.
double reversal_ratio(const RegressionProblem& problem, const Tolerances& tol = {});

/// One-sided guarantee from the correlation product: when
/// R_ux * R_uy < |r_xy| no subset of the candidates can flip the sign.
/// A false result is inconclusive, not a reversal.
bool corollary1_scalar(double R_ux, double R_uy, double r_xy);

/// One-sided guarantee from a single coefficient of determination: when the
/// candidates' R^2 for the v axis stays below the r_star threshold, no
/// subset can flip the sign.  The x residual is negated first when the
/// baseline correlation is negative, making the check invariant to column
/// sign conventions.  A false result is inconclusive.
bool corollary2_check(const RegressionProblem& problem, const Tolerances& tol = {});

/// Full diagnostic sweep.  Verdict precedence: ReversalCertain when the
/// exact ratio exceeds 1; otherwise the correlation-product guarantee, then
/// the determination guarantee; Indeterminate when none applies.  Ratios
/// within tol.ratio_boundary of 1 are treated as ties and never certain.
ReversalDiagnostics diagnose(const RegressionProblem& problem, const Tolerances& tol = {});

/// Sign with a scale-aware dead zone: 0 when |value| < sign_rel * scale.
int slope_sign(double value, double scale, double sign_rel = Tolerances{}.sign_rel);

}  // namespace revana

#endif
