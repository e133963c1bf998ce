#include "revana/reversal.hpp"

#include <cmath>

namespace revana {

namespace {

// Factors of the sign-flip ratio over an already-residualized context.
struct RatioParts {
  double r = 0;            // residual correlation of x and y
  double R_ux = 0;
  double R_uy = 0;
  double fitted_corr = 0;  // 0 when either projection vanishes
  double ratio = 0;
};

RatioParts ratio_parts(const PartialContext& ctx, const Tolerances& tol) {
  RatioParts parts;
  const Eigen::VectorXd& x = ctx.x_res.values();
  const Eigen::VectorXd& y = ctx.y_res.values();
  const double x_norm = x.norm();
  const double y_norm = y.norm();
  if (x_norm == 0.0) throw ZeroVariance(ctx.x_res.label());
  if (y_norm == 0.0) throw ZeroVariance(ctx.y_res.label());

  parts.r = x.dot(y) / (x_norm * y_norm);
  if (std::abs(parts.r) < tol.baseline) {
    throw DegenerateBaseline("residual correlation of '" + ctx.x_res.label() + "' and '" +
                             ctx.y_res.label() + "' is below tolerance; the baseline sign "
                             "is undefined");
  }

  const Eigen::MatrixXd q = detail::orthonormalize(ctx.u_res.dense(), tol.rank_rel);
  const Eigen::VectorXd px = q * (q.transpose() * x);
  const Eigen::VectorXd py = q * (q.transpose() * y);
  parts.R_ux = px.norm() / x_norm;
  parts.R_uy = py.norm() / y_norm;
  // when a projection vanishes the fitted correlation is undefined and the
  // product it multiplies is zero anyway
  const double projection_floor = 1e-14;
  if (px.norm() > projection_floor * x_norm && py.norm() > projection_floor * y_norm) {
    parts.fitted_corr = px.dot(py) / (px.norm() * py.norm());
  }
  parts.ratio = parts.R_ux * parts.R_uy * parts.fitted_corr / parts.r;
  return parts;
}

double determination_for_axis(const PartialContext& ctx, double r) {
  // negate the x residual when the baseline correlation is negative so the
  // axis construction does not depend on column sign conventions
  DataColumn x_adj = r < 0.0
      ? DataColumn(ctx.x_res.label(), Eigen::VectorXd(-ctx.x_res.values()))
      : ctx.x_res;
  const PartialContext adjusted(std::move(x_adj), ctx.y_res, ctx.u_res, ctx.controls_label);
  const DataColumn axis = v_vector(adjusted);
  return coef_determination(adjusted.u_res, axis);
}

}  // namespace

RegressionProblem::RegressionProblem(DataColumn y, DataColumn x, DataMatrix controls,
                                     DataMatrix candidates, ProblemOptions options)
    : y_(std::move(y)), x_(std::move(x)), controls_(std::move(controls)),
      candidates_(std::move(candidates)) {
  if (candidates_.empty()) {
    throw InputError("a problem needs at least one candidate column");
  }
  const Eigen::Index n = y_.n();
  if (x_.n() != n || (!controls_.empty() && controls_.rows() != n) || candidates_.rows() != n) {
    throw DimensionMismatch("problem columns have unequal lengths");
  }

  std::vector<const DataColumn*> all;
  all.push_back(&x_);
  for (const auto& c : controls_) all.push_back(&c);
  for (const auto& c : candidates_) all.push_back(&c);
  if (!options.relaxed) all.push_back(&y_);  // design rank first, then the response

  for (const auto* column : all) {
    if (detail::effectively_constant(column->values())) {
      throw ZeroVariance(column->label());
    }
  }
  if (options.relaxed && detail::effectively_constant(y_.values())) {
    throw ZeroVariance(y_.label());
  }

  // incremental independence check over [1 x W U] (plus y when strict)
  Eigen::MatrixXd basis(n, static_cast<Eigen::Index>(all.size()) + 1);
  basis.col(0) = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
  Eigen::Index kept = 1;
  for (const auto* column : all) {
    Eigen::VectorXd candidate = column->values();
    const double original_norm = candidate.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < kept; ++i) {
        candidate -= basis.col(i).dot(candidate) * basis.col(i);
      }
    }
    if (candidate.norm() <= options.rank_rel * original_norm) {
      throw RankDeficient("column '" + column->label() +
                          "' is linearly dependent on the preceding columns");
    }
    basis.col(kept++) = candidate / candidate.norm();
  }

  if (!options.relaxed) {
    std::vector<const DataColumn*> pairs = all;  // already includes y
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const Eigen::VectorXd a = pairs[i]->values().array() - pairs[i]->values().mean();
      for (std::size_t j = i + 1; j < pairs.size(); ++j) {
        const Eigen::VectorXd b = pairs[j]->values().array() - pairs[j]->values().mean();
        if (std::abs(a.dot(b)) <= 1e-12 * a.norm() * b.norm()) {
          throw InputError("columns '" + pairs[i]->label() + "' and '" + pairs[j]->label() +
                           "' are exactly orthogonal; use relaxed construction to "
                           "analyze such data");
        }
      }
    }
  }
}

PartialContext RegressionProblem::residual_context() const {
  std::string controls_label;
  for (const auto& column : controls_) {
    if (!controls_label.empty()) controls_label += ",";
    controls_label += column.label();
  }
  return {residualize(x_, controls_), residualize(y_, controls_),
          residualize(candidates_, controls_), std::move(controls_label)};
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::ReversalCertain: return "ReversalCertain";
    case Verdict::StableAllSubsetsCor1: return "StableAllSubsets_Cor1";
    case Verdict::StableAllSubsetsCor2: return "StableAllSubsets_Cor2";
    case Verdict::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

int slope_sign(double value, double scale, double sign_rel) {
  if (std::abs(value) < sign_rel * scale) return 0;
  return value > 0 ? 1 : -1;
}

double reversal_ratio(const RegressionProblem& problem, const Tolerances& tol) {
  return ratio_parts(problem.residual_context(), tol).ratio;
}

bool corollary1_scalar(double R_ux, double R_uy, double r_xy) {
  return R_ux * R_uy < std::abs(r_xy);
}

bool corollary2_check(const RegressionProblem& problem, const Tolerances& tol) {
  const PartialContext ctx = problem.residual_context();
  const double r = corr(ctx.x_res, ctx.y_res);
  if (std::abs(r) < tol.baseline) {
    throw DegenerateBaseline("baseline residual correlation is zero");
  }
  if (r < -1.0 + tol.baseline) {
    throw DegenerateBaseline("baseline residual correlation is -1; the axis degenerates");
  }
  return determination_for_axis(ctx, r) < r_star(std::abs(r));
}

ReversalDiagnostics diagnose(const RegressionProblem& problem, const Tolerances& tol) {
  const PartialContext ctx = problem.residual_context();
  const RatioParts parts = ratio_parts(ctx, tol);

  ReversalDiagnostics d;
  d.r_xy_given_w = parts.r;
  d.R_ux_given_w = parts.R_ux;
  d.R_uy_given_w = parts.R_uy;
  d.fitted_corr = parts.fitted_corr;
  d.reversal_ratio = parts.ratio;
  d.r_star = r_star(std::abs(parts.r));
  d.R2_u_v = determination_for_axis(ctx, parts.r);

  DataMatrix base_design;
  base_design.append(problem.x());
  for (const auto& column : problem.controls()) base_design.append(column);
  d.beta_unadjusted = ols_fit(problem.y(), base_design, true, tol.rank_rel).first_slope();

  DataMatrix full_design = base_design;
  for (const auto& column : problem.candidates()) full_design.append(column);
  d.beta_adjusted = ols_fit(problem.y(), full_design, true, tol.rank_rel).first_slope();

  const bool boundary = std::abs(parts.ratio - 1.0) <= tol.ratio_boundary;
  if (!boundary && parts.ratio > 1.0) {
    d.verdict = Verdict::ReversalCertain;
  } else if (boundary) {
    d.verdict = Verdict::Indeterminate;
  } else if (corollary1_scalar(parts.R_ux, parts.R_uy, parts.r)) {
    d.verdict = Verdict::StableAllSubsetsCor1;
  } else if (d.R2_u_v < d.r_star) {
    d.verdict = Verdict::StableAllSubsetsCor2;
  } else {
    d.verdict = Verdict::Indeterminate;
  }
  return d;
}

}  // namespace revana
