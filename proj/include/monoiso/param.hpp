#pragma once

// Parametrizations of solids and boundary pieces over the unit box [0,1]^d.
//
// A weighted integral over a parametrized set is
//     multiplicity * int_{[0,1]^d} x(u)^E J(u) du .
// Each parameter axis declares the power of u (resp. 1-u) with which the
// integrand vanishes or blows up at its endpoints, as an affine function of
// the weight exponents E; the quadrature absorbs these powers into
// generalized Gauss rules instead of sampling them.

#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "monoiso/weight.hpp"

namespace monoiso {

/// constant + sum of E[c] over coords.
struct EndpointPower {
  double constant = 0.0;
  std::vector<std::size_t> coords;
  double eval(const ExponentVector& e) const {
    double p = constant;
    for (std::size_t c : coords) p += e[c];
    return p;
  }
};

struct ParamAxis {
  EndpointPower at_lo;
  EndpointPower at_hi;
};

using MapFn = std::function<void(std::span<const double> u, std::span<double> x)>;
using ScalarFn = std::function<double(std::span<const double> u)>;

struct Parametrization {
  int ambient = 0;
  std::vector<ParamAxis> axes;  ///< one per parameter
  /// The image is reflected across x_c = 0 for each listed c; the weight is
  /// even in those coordinates so the integral is scaled by 2^{|mirror|}.
  std::vector<std::size_t> mirror_coords;
  MapFn map;
  ScalarFn jacobian;  ///< area/volume element including the [0,1] rescaling
  MapFn normal;       ///< outward unit normal (boundary pieces only)
  bool empty = false;

  std::size_t dim() const { return axes.size(); }
  double multiplicity() const { return static_cast<double>(1ULL << mirror_coords.size()); }
};

namespace chart {

/// Point on the positive-orthant unit sphere S^{m-1}_+ from m-1 angle
/// parameters v in [0,1] (theta = pi/2 v): omega_1 = cos th_1,
/// omega_2 = sin th_1 cos th_2, ..., omega_m = prod sin th_j.
void sphere_point(std::span<const double> v, std::span<double> omega);
/// Surface element of the chart above, including the (pi/2)^{m-1} rescale.
double sphere_jacobian(std::span<const double> v, std::size_t m);
/// Endpoint powers for the m-1 angle axes when omega_l multiplies coords[l].
std::vector<ParamAxis> sphere_axes(std::span<const std::size_t> coords);

/// {x_c >= 0 for c in coords, |x| <= R}, other coordinates 0.
/// extra_radial_power adds a factor |x|^p to the Jacobian.
Parametrization orthant_ball_solid(int ambient, std::vector<std::size_t> coords, double R,
                                   double extra_radial_power = 0.0);
/// Part of the positive orthant of span(coords) with |x| <= R and
/// x_axis <= eps |x without axis|; empty when coords has one entry.
Parametrization cone_slab_solid(int ambient, std::vector<std::size_t> coords, std::size_t axis, double eps,
                                double R);

}  // namespace chart

}  // namespace monoiso
