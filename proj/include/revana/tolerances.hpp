#ifndef REVANA_TOLERANCES_HPP
#define REVANA_TOLERANCES_HPP

namespace revana {

/// Numerical thresholds used across the library.  Every value can be
/// overridden per call where an operation accepts a Tolerances argument;
/// the defaults are chosen for double precision on well-scaled data.
struct Tolerances {
  /// A column is declared linearly dependent on a set when its residual
  /// norm after projection drops below rank_rel times its own norm.
  double rank_rel = 1e-10;
  /// |r| below this makes the baseline sign undefined.
  double baseline = 1e-12;
  /// Sign-flip ratios within this distance of 1 are treated as ties.
  double ratio_boundary = 1e-9;
  /// Relative slope magnitude below which a sign is reported indeterminate.
  double sign_rel = 1e-10;
};

}  // namespace revana

#endif
