#ifndef REVANA_LINALG_HPP
#define REVANA_LINALG_HPP

#include <Eigen/Dense>

#include "revana/data.hpp"
#include "revana/tolerances.hpp"

namespace revana {

/// Outcome of a dense least-squares fit.
///
/// coefficients holds the intercept first (when one was requested) and then
/// one entry per regressor column.  fitted + residuals reproduces the
/// response entrywise, and the residuals are orthogonal to the intercept
/// column and to every regressor.
struct FitResult {
  Eigen::VectorXd coefficients;
  Eigen::VectorXd fitted;
  Eigen::VectorXd residuals;
  bool intercept = true;

  /// Slope of the first regressor column (skipping the intercept slot).
  double first_slope() const { return coefficients[intercept ? 1 : 0]; }
};

/// Subtract the mean: the result sums to zero.
DataColumn center(const DataColumn& column);

/// Least squares of the response on the given regressor columns, optionally
/// with an intercept.  The design must have full column rank: a RankDeficient
/// error is raised when the smallest singular value falls below rank_rel
/// times the largest, and a DimensionMismatch when lengths disagree.
FitResult ols_fit(const DataColumn& response, const DataMatrix& regressors,
                  bool include_intercept, double rank_rel = Tolerances{}.rank_rel);

/// Residual of the target after regressing on an intercept plus the control
/// columns.  With no controls this is center(target).  The output is
/// orthogonal to the constant column and to every control.
DataColumn residualize(const DataColumn& target, const DataMatrix& controls);

/// Residualize every column of a matrix against the same controls.
DataMatrix residualize(const DataMatrix& targets, const DataMatrix& controls);

/// Closed-form coefficient of x_res when y_res is regressed on
/// [x_res u_res] over centered data.  The candidate columns are
/// orthonormalized internally, after which the slope is
///
///     (<x,y> - <px,py>) / (<x,x> - <px,px>)
///
/// with px, py the projections of x_res and y_res onto span(u_res).  Agrees
/// with the corresponding ols_fit coefficient; kept separate because the
/// projection form is what the sign analysis reasons about.  Raises
/// RankDeficient when x_res lies in the span of the candidates.
double adjusted_coefficient(const DataColumn& y_res, const DataColumn& x_res,
                            const DataMatrix& u_res,
                            double rank_rel = Tolerances{}.rank_rel);

namespace detail {

/// Orthonormal basis of the column span via modified Gram-Schmidt with one
/// re-orthogonalization pass.  Throws RankDeficient if a column's residual
/// norm falls below rank_rel times its original norm.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& columns, double rank_rel);

/// True when the centered column has effectively no variation.
bool effectively_constant(const Eigen::VectorXd& values, double rank_rel = 1e-12);

}  // namespace detail

}  // namespace revana

#endif
