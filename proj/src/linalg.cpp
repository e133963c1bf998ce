#include "revana/linalg.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>

namespace revana {

namespace detail {

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& columns, double rank_rel) {
  Eigen::MatrixXd q(columns.rows(), columns.cols());
  Eigen::Index kept = 0;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    Eigen::VectorXd candidate = columns.col(j);
    const double original_norm = candidate.norm();
    // two projection passes: plain Gram-Schmidt loses orthogonality when
    // columns are nearly dependent
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < kept; ++i) {
        candidate -= q.col(i).dot(candidate) * q.col(i);
      }
    }
    const double residual_norm = candidate.norm();
    if (residual_norm <= rank_rel * original_norm || original_norm == 0.0) {
      throw RankDeficient("column " + std::to_string(j + 1) +
                          " lies in the span of the preceding columns");
    }
    q.col(kept++) = candidate / residual_norm;
  }
  return q;
}

bool effectively_constant(const Eigen::VectorXd& values, double rel) {
  const Eigen::VectorXd centered = values.array() - values.mean();
  return centered.norm() <= rel * values.norm() || values.size() == 0;
}

}  // namespace detail

DataColumn center(const DataColumn& column) {
  Eigen::VectorXd centered = column.values().array() - column.values().mean();
  return {column.label(), std::move(centered)};
}

FitResult ols_fit(const DataColumn& response, const DataMatrix& regressors,
                  bool include_intercept, double rank_rel) {
  const Eigen::Index n = response.n();
  if (!regressors.empty() && regressors.rows() != n) {
    throw DimensionMismatch("response has " + std::to_string(n) + " rows, regressors have " +
                            std::to_string(regressors.rows()));
  }
  const Eigen::Index q = static_cast<Eigen::Index>(regressors.cols());
  const Eigen::Index params = q + (include_intercept ? 1 : 0);
  if (params == 0) {
    throw InputError("nothing to fit: no regressors and no intercept");
  }
  if (n < params) {
    throw RankDeficient("need at least " + std::to_string(params) + " rows, got " +
                        std::to_string(n));
  }

  Eigen::MatrixXd design(n, params);
  Eigen::Index offset = 0;
  if (include_intercept) {
    design.col(0).setOnes();
    offset = 1;
  }
  for (Eigen::Index j = 0; j < q; ++j) {
    design.col(offset + j) = regressors[static_cast<std::size_t>(j)].values();
  }

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(design);
  const auto& sigma = svd.singularValues();
  if (sigma[sigma.size() - 1] <= rank_rel * sigma[0]) {
    throw RankDeficient("design matrix is numerically singular (relative smallest "
                        "singular value " +
                        std::to_string(sigma[sigma.size() - 1] / sigma[0]) + ")");
  }

  FitResult result;
  result.intercept = include_intercept;
  result.coefficients = design.colPivHouseholderQr().solve(response.values());
  result.fitted = design * result.coefficients;
  result.residuals = response.values() - result.fitted;
  return result;
}

DataColumn residualize(const DataColumn& target, const DataMatrix& controls) {
  if (controls.empty()) return center(target);
  FitResult fit = ols_fit(target, controls, true);
  return {target.label(), std::move(fit.residuals)};
}

DataMatrix residualize(const DataMatrix& targets, const DataMatrix& controls) {
  DataMatrix out;
  for (const auto& column : targets) out.append(residualize(column, controls));
  return out;
}

double adjusted_coefficient(const DataColumn& y_res, const DataColumn& x_res,
                            const DataMatrix& u_res, double rank_rel) {
  if (y_res.n() != x_res.n() || (!u_res.empty() && u_res.rows() != x_res.n())) {
    throw DimensionMismatch("adjusted_coefficient: column lengths disagree");
  }
  const double n = static_cast<double>(x_res.n());
  const double mean_tol = 1e-9;
  if (std::abs(x_res.values().mean()) > mean_tol * (x_res.values().norm() / std::sqrt(n) + 1.0) ||
      std::abs(y_res.values().mean()) > mean_tol * (y_res.values().norm() / std::sqrt(n) + 1.0)) {
    throw InputError("adjusted_coefficient requires centered inputs");
  }

  const Eigen::VectorXd& x = x_res.values();
  const Eigen::VectorXd& y = y_res.values();
  double numerator = x.dot(y);
  double denominator = x.dot(x);

  if (!u_res.empty()) {
    const Eigen::MatrixXd q = detail::orthonormalize(u_res.dense(), rank_rel);
    const Eigen::VectorXd qx = q.transpose() * x;
    const Eigen::VectorXd qy = q.transpose() * y;
    numerator -= qx.dot(qy);
    denominator -= qx.dot(qx);
  }

  if (denominator <= rank_rel * rank_rel * x.dot(x)) {
    throw RankDeficient("explanatory residual lies in the span of the candidates");
  }
  return numerator / denominator;
}

}  // namespace revana
