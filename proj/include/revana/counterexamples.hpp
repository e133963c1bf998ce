#ifndef REVANA_COUNTEREXAMPLES_HPP
#define REVANA_COUNTEREXAMPLES_HPP

#include <map>
#include <string>

#include "revana/reversal.hpp"

namespace revana {

/// The three crafted 4-row families, each showing that a weaker summary than
/// the exact ratio criterion can misjudge stability:
///
///   NeedR2           - both candidates correlate arbitrarily weakly with x
///                      and y, yet jointly they flip the sign.
///   NeedPartial      - the candidate is exactly uncorrelated with x and y
///                      and still flips the sign by activating a dormant
///                      control.
///   NoFullFittedCorr - each candidate alone flips the sign but the pair
///                      together does not, so no single-number refinement of
///                      the criterion can certify all subsets at once.
enum class Family { NeedR2, NeedPartial, NoFullFittedCorr };

std::string to_string(Family family);

/// One generated instance.  The data columns follow the family's closed
/// forms exactly at the given parameters.  `expected` maps named asymptotic
/// quantities to their limit values as the parameters go to zero; the
/// constructions state their correlation and projection claims for the raw
/// column geometry (plain inner products of the printed vectors), where
/// those limits are exact, while slope claims name the fit convention per
/// key ("slope_*" keys are raw no-intercept fits, "beta_*" keys are
/// intercept fits).
struct CounterexampleInstance {
  Family family;
  double epsilon = 0;
  double delta = 0;
  DataMatrix data;
  std::map<std::string, double> expected;

  /// The instance as a problem ready for diagnosis.  Construction is
  /// relaxed: these tables intentionally contain exactly orthogonal pairs.
  RegressionProblem to_problem() const;
};

/// Family NeedR2.  Columns y, x, u1, u2; 0 < epsilon < 1.
CounterexampleInstance gen_need_r2(double epsilon);

/// Family NeedPartial.  Columns y, x, w, u; 0 < delta < 1.
CounterexampleInstance gen_need_partial(double delta);

/// Family NoFullFittedCorr.  Columns y, x, u1, u2; 0 < epsilon, delta < 1.
CounterexampleInstance gen_no_full_fitted_corr(double epsilon, double delta);

/// Cosine of the angle between raw (uncentered) columns: the correlation
/// notion of the crafted constructions' own geometry.
double raw_cosine(const DataColumn& a, const DataColumn& b);

/// Norm fraction of the raw column captured by the span of the given
/// columns: the projection analogue of a multiple correlation, again in the
/// constructions' own geometry.
double raw_projection_R(const DataMatrix& span, const DataColumn& target);

}  // namespace revana

#endif
