#ifndef REVANA_CONE_HPP
#define REVANA_CONE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "revana/data.hpp"
#include "revana/tolerances.hpp"

namespace revana {

/// The reversal region for a single added covariate: an ellipsoidal cone of
/// two nappes in the m-dimensional space orthogonal to the intercept and the
/// controls.  r is the magnitude of the residual correlation between x and
/// y; the axis is the direction of the v vector (the second canonical
/// coordinate when constructed parametrically).
struct ConeSpec {
  double r;
  int m;
  Eigen::VectorXd axis;

  ConeSpec(double r, int m);
  ConeSpec(double r, int m, Eigen::VectorXd axis);
};

/// Coefficients of the boundary quadric in canonical coordinates.  At
/// second coordinate 1 the boundary satisfies
///
///     a1 u1^2 + a_rest (u3^2 + ... + um^2) = 1
///
/// with a1 = (1+r)/(1-r) and a_rest = 2r/(1-r).  Only 0 < r < 1 is valid;
/// both endpoints degenerate the cone.
std::pair<double, double> cone_coefficients(double r);

enum class ConeClass { Inside, Boundary, Outside };

/// Membership test for a candidate direction: Inside exactly when adding
/// u_res flips the sign of the x coefficient, Boundary when the adjusted
/// coefficient vanishes (sign-flip ratio within boundary_tol of 1).
/// Invariant under rescaling of u_res; u and -u classify identically.
ConeClass in_reversal_cone(const DataColumn& u_res, const DataColumn& x_res,
                           const DataColumn& y_res,
                           double boundary_tol = Tolerances{}.ratio_boundary);

/// Orthonormal basis of the centered subspace containing the two residuals,
/// as columns b1..b_{n-1}.  After unit scaling and a sign convention that
/// makes the correlation positive, x_res and y_res take the coordinates
///
///     x = (-sqrt((1-r)/2), sqrt((1+r)/2), 0, ..., 0)
///     y = ( sqrt((1-r)/2), sqrt((1+r)/2), 0, ..., 0)
///
/// so the second basis vector is the v direction.  Raises DegenerateBaseline
/// when the residuals are orthogonal (no cone exists) and RankDeficient when
/// they are collinear.
DataMatrix canonical_frame(const DataColumn& x_res, const DataColumn& y_res);

/// Unit vectors on the cone boundary, in canonical coordinates.
/// Deterministic in the seed.  Every returned vector satisfies the boundary
/// quadric after rescaling its second coordinate to 1.
std::vector<Eigen::VectorXd> sample_boundary(const ConeSpec& spec, int count,
                                             std::uint64_t seed);

/// The two boundary directions of lowest determination for the axis; the
/// squared correlation with the axis equals the r_star threshold exactly
/// there.  Returned in canonical coordinates, unit length.
std::pair<Eigen::VectorXd, Eigen::VectorXd> extreme_boundary_directions(const ConeSpec& spec);

}  // namespace revana

#endif
