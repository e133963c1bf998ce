#include "revana/cone.hpp"

#include <cmath>

#include "revana/linalg.hpp"
#include "revana/rng.hpp"
#include "revana/stats.hpp"

namespace revana {

namespace {

void check_r(double r) {
  if (!(r > 0.0 && r < 1.0)) {
    throw DomainError("cone requires 0 < r < 1, got " + std::to_string(r));
  }
}

}  // namespace

ConeSpec::ConeSpec(double r, int m) : r(r), m(m) {
  check_r(r);
  if (m < 3) throw DomainError("cone requires dimension m >= 3, got " + std::to_string(m));
  axis = Eigen::VectorXd::Zero(m);
  axis[1] = 1.0;
}

ConeSpec::ConeSpec(double r, int m, Eigen::VectorXd axis_direction) : ConeSpec(r, m) {
  const double norm = axis_direction.norm();
  if (norm == 0.0) throw DomainError("cone axis must be a nonzero vector");
  axis = axis_direction / norm;
}

std::pair<double, double> cone_coefficients(double r) {
  check_r(r);
  return {(1.0 + r) / (1.0 - r), 2.0 * r / (1.0 - r)};
}

ConeClass in_reversal_cone(const DataColumn& u_res, const DataColumn& x_res,
                           const DataColumn& y_res, double boundary_tol) {
  const Eigen::VectorXd& x = x_res.values();
  const Eigen::VectorXd& y = y_res.values();
  const double u_norm = u_res.values().norm();
  if (u_norm == 0.0) throw ZeroVariance(u_res.label());
  const Eigen::VectorXd u = u_res.values() / u_norm;

  const double raw_r = x.dot(y) / (x.norm() * y.norm());
  if (std::abs(raw_r) < Tolerances{}.baseline) {
    throw DegenerateBaseline("x and y residuals are orthogonal; the cone is undefined");
  }
  if (1.0 - std::abs(raw_r) < 1e-12) {
    throw RankDeficient("x and y residuals are collinear");
  }
  const double sign = raw_r < 0.0 ? -1.0 : 1.0;
  const double r = std::abs(raw_r);

  // canonical coordinates of u against the plane of the two residuals
  const Eigen::VectorXd xu = sign * x / x.norm();
  const Eigen::VectorXd yu = y / y.norm();
  Eigen::VectorXd b1 = yu - xu;
  Eigen::VectorXd b2 = yu + xu;
  b1 /= b1.norm();
  b2 /= b2.norm();
  const double u1 = b1.dot(u);
  const double u2 = b2.dot(u);

  // sign-flip ratio for a single candidate, with |u| = 1
  const double ratio = (u2 * u2 * (1.0 + r) - u1 * u1 * (1.0 - r)) / (2.0 * r);
  if (std::abs(ratio - 1.0) <= boundary_tol) return ConeClass::Boundary;
  return ratio > 1.0 ? ConeClass::Inside : ConeClass::Outside;
}

DataMatrix canonical_frame(const DataColumn& x_res, const DataColumn& y_res) {
  const Eigen::Index n = x_res.n();
  if (y_res.n() != n) throw DimensionMismatch("canonical_frame: column lengths disagree");
  const Eigen::VectorXd& x = x_res.values();
  const Eigen::VectorXd& y = y_res.values();
  if (x.norm() == 0.0) throw ZeroVariance(x_res.label());
  if (y.norm() == 0.0) throw ZeroVariance(y_res.label());

  const double raw_r = x.dot(y) / (x.norm() * y.norm());
  if (std::abs(raw_r) < Tolerances{}.baseline) {
    throw DegenerateBaseline("x and y residuals are orthogonal; the cone is undefined");
  }
  if (1.0 - std::abs(raw_r) < 1e-12) {
    throw RankDeficient("x and y residuals are collinear");
  }
  const double sign = raw_r < 0.0 ? -1.0 : 1.0;

  const Eigen::VectorXd xu = sign * x / x.norm();
  const Eigen::VectorXd yu = y / y.norm();
  Eigen::VectorXd b1 = yu - xu;
  Eigen::VectorXd b2 = yu + xu;  // the v direction
  b1 /= b1.norm();
  b2 /= b2.norm();

  DataMatrix frame;
  frame.append(DataColumn("b1", b1));
  frame.append(DataColumn("b2", b2));

  // complete with centered directions: project the standard centered basis
  // out of span{b1, b2} and keep what survives
  Eigen::MatrixXd kept(n, n - 1);
  kept.col(0) = b1;
  kept.col(1) = b2;
  Eigen::Index count = 2;
  for (Eigen::Index j = 1; j < n && count < n - 1; ++j) {
    // Helmert direction: j ones followed by -j, zero elsewhere
    Eigen::VectorXd h = Eigen::VectorXd::Zero(n);
    h.head(j).setConstant(1.0);
    h[j] = -static_cast<double>(j);
    h /= h.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < count; ++i) {
        h -= kept.col(i).dot(h) * kept.col(i);
      }
    }
    if (h.norm() > 1e-8) {
      h /= h.norm();
      kept.col(count++) = h;
      frame.append(DataColumn("b" + std::to_string(count), h));
    }
  }
  if (count != n - 1) {
    throw RankDeficient("failed to complete the canonical frame");
  }
  return frame;
}

std::vector<Eigen::VectorXd> sample_boundary(const ConeSpec& spec, int count,
                                             std::uint64_t seed) {
  if (count < 1) throw DomainError("sample count must be at least 1");
  const auto [a1, a_rest] = cone_coefficients(spec.r);
  Rng rng(seed);

  std::vector<Eigen::VectorXd> samples;
  samples.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    // a1 u1^2 + a_rest |tail|^2 = 1 at u2 = 1, split by a random angle
    const double theta = rng.uniform(0.0, 6.283185307179586476925286766559);
    Eigen::VectorXd u = Eigen::VectorXd::Zero(spec.m);
    u[0] = std::cos(theta) / std::sqrt(a1);
    u[1] = 1.0;
    if (spec.m > 3) {
      Eigen::VectorXd direction(spec.m - 2);
      for (Eigen::Index j = 0; j < direction.size(); ++j) direction[j] = rng.normal();
      if (direction.norm() == 0.0) direction[0] = 1.0;
      direction /= direction.norm();
      u.tail(spec.m - 2) = std::sin(theta) / std::sqrt(a_rest) * direction;
    } else {
      u[2] = std::sin(theta) / std::sqrt(a_rest);
    }
    samples.push_back(u / u.norm());
  }
  return samples;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> extreme_boundary_directions(const ConeSpec& spec) {
  const auto [a1, a_rest] = cone_coefficients(spec.r);
  Eigen::VectorXd plus = Eigen::VectorXd::Zero(spec.m);
  plus[1] = 1.0;
  plus[2] = 1.0 / std::sqrt(a_rest);
  Eigen::VectorXd minus = plus;
  minus[2] = -plus[2];
  plus /= plus.norm();
  minus /= minus.norm();
  return {plus, minus};
}

}  // namespace revana
