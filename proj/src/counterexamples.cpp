#include "revana/counterexamples.hpp"

#include <cmath>

#include "revana/linalg.hpp"

namespace revana {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;

void check_parameter(const char* name, double value) {
  if (!(value > 0.0 && value < 1.0)) {
    throw DomainError(std::string(name) + " must lie in (0, 1), got " + std::to_string(value));
  }
}

DataColumn col(const std::string& label, double a, double b, double c, double d) {
  Eigen::VectorXd values(4);
  values << a, b, c, d;
  return {label, std::move(values)};
}

}  // namespace

std::string to_string(Family family) {
  switch (family) {
    case Family::NeedR2: return "need-r2";
    case Family::NeedPartial: return "need-partial";
    case Family::NoFullFittedCorr: return "no-full-fitted-corr";
  }
  return "need-r2";
}

RegressionProblem CounterexampleInstance::to_problem() const {
  ProblemOptions relaxed;
  relaxed.relaxed = true;
  DataMatrix controls;
  DataMatrix candidates;
  if (family == Family::NeedPartial) {
    controls.append(data.at("w"));
    candidates.append(data.at("u"));
  } else {
    candidates.append(data.at("u1"));
    candidates.append(data.at("u2"));
  }
  return {data.at("y"), data.at("x"), std::move(controls), std::move(candidates), relaxed};
}

CounterexampleInstance gen_need_r2(double epsilon) {
  check_parameter("epsilon", epsilon);
  CounterexampleInstance instance;
  instance.family = Family::NeedR2;
  instance.epsilon = epsilon;

  const double e = epsilon / kSqrt2;
  instance.data.append(col("y", (kSqrt2 + 3) / 2, (kSqrt2 - 3) / 2, -0.5, -0.5));
  instance.data.append(col("x", (-kSqrt2 + 3) / 2, (-kSqrt2 - 3) / 2, 0.5, 0.5));
  instance.data.append(col("u1", e, -e, 1.0, -1.0));
  instance.data.append(col("u2", e, -e, -1.0, 1.0));

  // raw-geometry claims are exact at every parameter value; the pairwise
  // cosines are the only quantities that move with epsilon
  instance.expected = {
      {"cos_xy", 0.5},
      {"slope_x", 0.5},
      {"cos_u_x_limit", 0.0},
      {"cos_u_y_limit", 0.0},
      {"projection_R_product", 0.75},
      {"beta_x_given_u", -1.0},
  };
  return instance;
}

CounterexampleInstance gen_need_partial(double delta) {
  check_parameter("delta", delta);
  CounterexampleInstance instance;
  instance.family = Family::NeedPartial;
  instance.delta = delta;

  const double d = delta / kSqrt2;
  instance.data.append(col("y", (kSqrt2 + 3) / 2, (kSqrt2 - 3) / 2, -0.5, -0.5));
  instance.data.append(col("x", (-kSqrt2 + 3) / 2, (-kSqrt2 - 3) / 2, 0.5, 0.5));
  instance.data.append(col("w", d, -d, 1.0, -1.0));
  instance.data.append(col("u", 0.0, 0.0, -1.0, 1.0));

  // The u column is exactly uncorrelated with x and y, in both the raw and
  // the centered readings.  Fitting y on {x, w, u} interpolates exactly:
  // y + x is proportional to w + u, so the adjusted slope is -1 at every
  // delta and under every fit convention.
  instance.expected = {
      {"cos_u_x", 0.0},
      {"cos_u_y", 0.0},
      {"cos_w_x_limit", 0.0},
      {"slope_x_given_w", 0.5},
      {"beta_x_given_wu", -1.0},
  };
  return instance;
}

CounterexampleInstance gen_no_full_fitted_corr(double epsilon, double delta) {
  check_parameter("epsilon", epsilon);
  check_parameter("delta", delta);
  CounterexampleInstance instance;
  instance.family = Family::NoFullFittedCorr;
  instance.epsilon = epsilon;
  instance.delta = delta;

  const double e = epsilon;
  const double d = delta;
  instance.data.append(col("y", (kSqrt2 + 3) / 2, (kSqrt2 - 3) / 2, -0.5, -0.5));
  instance.data.append(col("x", (-kSqrt2 + 3) / 2, (-kSqrt2 - 3) / 2, 0.5, 0.5));
  instance.data.append(col("u1", (e + 3 * kSqrt2) / 2, (e - 3 * kSqrt2) / 2,
                           (-e + d * kSqrt2) / 2, (-e - d * kSqrt2) / 2));
  instance.data.append(col("u2", (-e + 3 * kSqrt2) / 2, (-e - 3 * kSqrt2) / 2,
                           (e + d * kSqrt2) / 2, (e - d * kSqrt2) / 2));

  // slope claims for this family hold for intercept fits: y - x decomposes
  // exactly over the constant column and u1 - u2, so the full fit pins the
  // x coefficient at +1 while each candidate alone drives it to -1
  instance.expected = {
      {"cos_xy", 0.5},
      {"beta_x_given_u1", -1.0},
      {"beta_x_given_u2", -1.0},
      {"beta_x_given_u1u2", 1.0},
  };
  return instance;
}

double raw_cosine(const DataColumn& a, const DataColumn& b) {
  const double denom = a.values().norm() * b.values().norm();
  if (denom == 0.0) throw ZeroVariance(a.values().norm() == 0.0 ? a.label() : b.label());
  return a.values().dot(b.values()) / denom;
}

double raw_projection_R(const DataMatrix& span, const DataColumn& target) {
  if (span.empty()) return 0.0;
  const Eigen::MatrixXd q = detail::orthonormalize(span.dense(), Tolerances{}.rank_rel);
  const Eigen::VectorXd coords = q.transpose() * target.values();
  const double norm = target.values().norm();
  if (norm == 0.0) throw ZeroVariance(target.label());
  return coords.norm() / norm;
}

}  // namespace revana
