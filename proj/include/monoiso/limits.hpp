#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "monoiso/isoperimetry.hpp"

namespace monoiso {

enum class SweepParam { t, eps };

/// Geometric schedule start * ratio^k, k = 0..count-1.
struct SweepSchedule {
  SweepParam parameter = SweepParam::t;
  double start = 10.0;
  double ratio = 2.0;
  int count = 8;

  void validate() const;
  std::vector<double> values() const;
  /// Schedule with count points from first to last inclusive.
  static SweepSchedule spanning(SweepParam p, double first, double last, int count);
};

enum class ExtremalFamily { translated_ball, cone_slab };

/// The free parameter (t or eps) is supplied per schedule point; the fixed
/// radius is r for translated balls and R for cone slabs.
struct FamilyTemplate {
  ExtremalFamily family = ExtremalFamily::translated_ball;
  int N = 2;
  std::size_t axis = 0;
  double radius = 1.0;

  Shape at(double param) const;
  SweepParam parameter() const { return family == ExtremalFamily::translated_ball ? SweepParam::t : SweepParam::eps; }
};

/// One independent quotient per schedule value. Throws DegenerateShape naming
/// the offending parameter.
std::vector<QuotientReport> sweep(const FamilyTemplate& family, const SweepSchedule& schedule,
                                  const WeightPair& pair, const QuadratureSpec& q);

struct PowerLawFit {
  double exponent = 0.0;
  double intercept = 0.0;  ///< log of the prefactor
  double stderr_exponent = 0.0;
  double r_squared = 1.0;
  std::size_t points = 0;
};

nlohmann::json to_json(const PowerLawFit& f);

/// OLS of log(y) on log(x): y ~ exp(intercept) x^exponent.
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y);
/// Fit of the quotients against the schedule values.
PowerLawFit fit_power_law(const std::vector<QuotientReport>& reports, const SweepSchedule& schedule);
/// Same, restricted to the last half of the schedule (at least 3 points).
PowerLawFit fit_tail(const std::vector<QuotientReport>& reports, const SweepSchedule& schedule);

/// a_i - sigma b_i for translated balls (t -> infinity);
/// a_i - sigma (b_i + 1) for cone slabs (eps -> 0).
double predicted_exponent(const WeightPair& pair, std::size_t i, ExtremalFamily family);

/// Which boundary piece carries the perimeter along a sweep.
struct DominanceReport {
  std::vector<std::string> labels;
  std::vector<double> params;
  std::vector<std::vector<double>> piece_values;  ///< [point][piece]
  std::string dominant;                           ///< largest piece at the last point
  /// Per point: some other piece exceeds 0.1 of the dominant one.
  std::vector<bool> contaminated;
  /// Tail fit of dominant_piece / m^sigma, the leading surviving term.
  PowerLawFit leading;
  bool tail_clean = false;  ///< no contamination in the fitted tail
};

DominanceReport dominance_report(const std::vector<QuotientReport>& reports, const SweepSchedule& schedule);

/// Ratio P_A / m_B on cone slabs at eps and eps/2, and the two-point
/// extrapolation 2 r(eps/2) - r(eps) that removes the O(eps) term.
struct LimitEstimate {
  double eps = 0.0;
  double ratio_eps = 0.0;
  double ratio_half = 0.0;
  double extrapolated = 0.0;
  double predicted = 0.0;      ///< a_i
  double leading_term = 0.0;   ///< (b_i + 1)(1 + eps^2)^{3/2}
  double rel_error = 0.0;      ///< |extrapolated - predicted| / predicted
};

nlohmann::json to_json(const LimitEstimate& l);

LimitEstimate cone_slab_ratio_limit(const WeightPair& pair, std::size_t i, double eps, const QuadratureSpec& q);

}  // namespace monoiso
