#ifndef REVANA_STATS_HPP
#define REVANA_STATS_HPP

#include "revana/data.hpp"
#include "revana/linalg.hpp"

namespace revana {

/// Residualized bundle: x, y and a candidate set, all regressed against the
/// same controls and therefore centered.
struct PartialContext {
  DataColumn x_res;
  DataColumn y_res;
  DataMatrix u_res;
  std::string controls_label;

  PartialContext(DataColumn x, DataColumn y, DataMatrix u, std::string controls);
};

/// Pearson correlation.  Raises ZeroVariance on a constant column.
double corr(const DataColumn& a, const DataColumn& b);

/// Coefficient of determination of the response regressed on an intercept
/// plus the given columns: 1 - RSS/TSS, clamped to [0, 1].
double coef_determination(const DataMatrix& regressors, const DataColumn& response);

/// Correlation between x and y after both are residualized against the
/// controls.  Raises ZeroVariance when a residual vanishes.
double partial_corr(const DataColumn& x, const DataColumn& y, const DataMatrix& controls);

/// Positive square root of the coefficient of determination computed on
/// residualized data: the candidate columns and the target are each
/// regressed against the controls first.
double partial_R(const DataMatrix& u, const DataColumn& z, const DataMatrix& controls);

/// Sum of the two unit-normalized residuals.  This is the axis of symmetry
/// of the reversal cone.  Antipodal residuals give the zero vector; callers
/// exclude that case by checking the partial correlation first.
DataColumn v_vector(const PartialContext& ctx);

/// Stability threshold |2r/(r+1)| for a baseline correlation r.  Defined on
/// (-1, 1]; raises DomainError elsewhere.
double r_star(double r);

}  // namespace revana

#endif
