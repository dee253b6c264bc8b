#pragma once

#include <cstddef>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "monoiso/param.hpp"
#include "monoiso/shapes.hpp"
#include "monoiso/weight.hpp"

namespace monoiso {

struct QuadratureSpec {
  int nodes_per_axis = 12;
  int max_refinement_depth = 6;
  double rel_tol = 1e-11;

  /// Defaults, with max_refinement_depth taken from MONOISO_QUAD_DEPTH when set.
  static QuadratureSpec defaults();
  void validate() const;
};

struct McSpec {
  std::size_t sample_count = 1'000'000;
  std::uint64_t seed = 0x5eed;
  void validate() const;
};

struct IntegralEstimate {
  double value = 0.0;
  double abs_error_est = 0.0;
  std::size_t evaluations = 0;
  /// False when the refinement budget ran out before rel_tol was met.
  bool converged = true;

  double rel_error() const { return value != 0.0 ? abs_error_est / std::abs(value) : 0.0; }
};

nlohmann::json to_json(const IntegralEstimate& e);

enum class Exec { parallel, serial };

/// multiplicity * int_{[0,1]^d} x(u)^E J(u) du, by tensor generalized-Gauss
/// rules with per-axis endpoint powers. The n- and 2n-point results are
/// compared; while they disagree beyond rel_tol the axis with the largest
/// disagreement is bisected, up to max_refinement_depth times.
IntegralEstimate integrate_param(const Parametrization& p, const ExponentVector& E, const QuadratureSpec& q,
                                 Exec exec = Exec::parallel);

IntegralEstimate weighted_volume(const Shape& shape, const ExponentVector& B, const QuadratureSpec& q,
                                 Exec exec = Exec::parallel);

struct PieceEstimate {
  std::string label;
  IntegralEstimate estimate;
  bool vanishing = false;  ///< lies in {x_k = 0} with a_k > 0
};

std::vector<PieceEstimate> weighted_surface_pieces(const Shape& shape, const ExponentVector& A,
                                                   const QuadratureSpec& q, Exec exec = Exec::parallel);
IntegralEstimate weighted_surface(const Shape& shape, const ExponentVector& A, const QuadratureSpec& q,
                                  Exec exec = Exec::parallel);

/// Importance-sampled Monte Carlo: coordinates drawn from |x_j|^{b_j} on the
/// bounding box, then a membership test. abs_error_est is one standard error
/// plus a rounding term for zero-variance cases.
IntegralEstimate mc_volume(const Shape& shape, const ExponentVector& B, const McSpec& mc,
                           Exec exec = Exec::parallel);
/// Uniform sampling of each boundary parametrization.
IntegralEstimate mc_surface(const Shape& shape, const ExponentVector& A, const McSpec& mc,
                            Exec exec = Exec::parallel);

}  // namespace monoiso
