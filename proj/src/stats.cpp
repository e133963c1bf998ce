#include "revana/stats.hpp"

#include <algorithm>
#include <cmath>

namespace revana {

namespace {

constexpr double kConstantRel = 1e-12;

Eigen::VectorXd centered_or_throw(const DataColumn& column) {
  Eigen::VectorXd centered = column.values().array() - column.values().mean();
  if (centered.norm() <= kConstantRel * column.values().norm()) {
    throw ZeroVariance(column.label());
  }
  return centered;
}

void check_centered(const DataColumn& column) {
  const double n = static_cast<double>(column.n());
  const double scale = column.values().norm() / std::sqrt(n) + 1.0;
  if (std::abs(column.values().mean()) > 1e-9 * scale) {
    throw InputError("column '" + column.label() + "' is not centered");
  }
}

}  // namespace

PartialContext::PartialContext(DataColumn x, DataColumn y, DataMatrix u, std::string controls)
    : x_res(std::move(x)), y_res(std::move(y)), u_res(std::move(u)),
      controls_label(std::move(controls)) {
  check_centered(x_res);
  check_centered(y_res);
  for (const auto& column : u_res) check_centered(column);
  if (x_res.n() != y_res.n() || (!u_res.empty() && u_res.rows() != x_res.n())) {
    throw DimensionMismatch("partial context: column lengths disagree");
  }
}

double corr(const DataColumn& a, const DataColumn& b) {
  if (a.n() != b.n()) throw DimensionMismatch("corr: column lengths disagree");
  const Eigen::VectorXd ac = centered_or_throw(a);
  const Eigen::VectorXd bc = centered_or_throw(b);
  return ac.dot(bc) / (ac.norm() * bc.norm());
}

double coef_determination(const DataMatrix& regressors, const DataColumn& response) {
  const Eigen::VectorXd centered = centered_or_throw(response);
  if (regressors.empty()) return 0.0;
  const FitResult fit = ols_fit(response, regressors, true);
  const double rss = fit.residuals.squaredNorm();
  const double tss = centered.squaredNorm();
  return std::clamp(1.0 - rss / tss, 0.0, 1.0);
}

double partial_corr(const DataColumn& x, const DataColumn& y, const DataMatrix& controls) {
  return corr(residualize(x, controls), residualize(y, controls));
}

double partial_R(const DataMatrix& u, const DataColumn& z, const DataMatrix& controls) {
  DataMatrix u_res;
  for (const auto& column : u) {
    DataColumn residual = residualize(column, controls);
    if (residual.values().norm() <= Tolerances{}.rank_rel * column.values().norm()) {
      throw ZeroVariance(column.label(),
                         "column '" + column.label() + "' lies in the span of the controls");
    }
    u_res.append(std::move(residual));
  }
  const DataColumn z_res = residualize(z, controls);
  return std::sqrt(coef_determination(u_res, z_res));
}

DataColumn v_vector(const PartialContext& ctx) {
  const double x_norm = ctx.x_res.values().norm();
  const double y_norm = ctx.y_res.values().norm();
  if (x_norm == 0.0) throw ZeroVariance(ctx.x_res.label());
  if (y_norm == 0.0) throw ZeroVariance(ctx.y_res.label());
  Eigen::VectorXd v = ctx.x_res.values() / x_norm + ctx.y_res.values() / y_norm;
  return {"v", std::move(v)};
}

double r_star(double r) {
  if (!(r > -1.0 && r <= 1.0)) {
    throw DomainError("r_star is defined for r in (-1, 1], got " + std::to_string(r));
  }
  return std::abs(2.0 * r / (r + 1.0));
}

}  // namespace revana
