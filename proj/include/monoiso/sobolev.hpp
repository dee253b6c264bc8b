#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "monoiso/integrate.hpp"
#include "monoiso/isoperimetry.hpp"
#include "monoiso/limits.hpp"
#include "monoiso/shapes.hpp"
#include "monoiso/weight.hpp"

namespace monoiso {

/// C_1 = D (prod Gamma((a_j+1)/2) / (2^k Gamma(1 + D/2)))^{1/D}.
double best_constant_p1(const ExponentVector& A);
/// C_p for 1 < p < D, with p' = p/(p-1).
double best_constant(double p, const ExponentVector& A);

/// Uniform tensor grid with nodes lo + k h (k = 0..dims-1) on every axis.
struct GridSpec {
  std::vector<double> lo;
  std::vector<std::size_t> dims;
  double h = 0.0;

  /// Smallest grid of spacing h covering [lo, hi] whose nodes are integer
  /// multiples of h, so coordinate hyperplanes pass through nodes.
  static GridSpec covering(std::span<const double> lo, std::span<const double> hi, double h);
  std::size_t size() const;
  std::vector<double> hi() const;
  void validate() const;
};

class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(GridSpec grid, std::vector<double> values, bool compact_support);

  /// Samples f at every node; parallel over nodes.
  static GridFunction sample(const GridSpec& grid, const std::function<double(std::span<const double>)>& f,
                             bool compact_support);

  const GridSpec& grid() const { return grid_; }
  int dim() const { return static_cast<int>(grid_.dims.size()); }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  bool compact_support() const { return compact_support_; }

  void node(std::size_t flat, std::span<double> x) const;
  std::size_t flat_index(std::span<const std::size_t> idx) const;

  /// Optional analytic gradient (dim() components per node, node-major).
  /// Not serialized.
  void set_gradient(std::vector<double> grad);
  bool has_gradient() const { return !gradient_.empty(); }
  std::span<const double> gradient() const { return gradient_; }

  /// Gradient magnitude at every node: the stored gradient when present,
  /// otherwise centered differences (one-sided at the grid edge).
  std::vector<double> gradient_norm() const;
  /// Trapezoid weights h^N prod(1/2 at edges) times x^E, per node.
  std::vector<double> quadrature_weights(const ExponentVector& E) const;

  /// Binary file (magic, version, dims, spacing, box, flags, row-major
  /// float64 payload) plus a JSON sidecar at path + ".json".
  void save(const std::string& path) const;
  static GridFunction load(const std::string& path);
  nlohmann::json sidecar() const;

 private:
  GridSpec grid_;
  std::vector<double> values_;
  bool compact_support_ = false;
  std::vector<double> gradient_;
};

/// Normalized bump c exp(-1/(1-|x|^2)) on the unit ball, scaled to radius epsilon.
struct MollifierSpec {
  double epsilon = 0.1;

  void validate() const;
  /// c such that the kernel has unit mass in R^N.
  static double normalization(int N);
  /// rho_eps at distance r.
  double kernel(double r, int N) const;
};

/// rho_eps * chi_shape on the grid, with the exact gradient
///   grad u(x) = - int_{boundary} rho_eps(x - y) nu(y) dS(y)
/// attached. In the plane the values are exact up to 1-D quadrature along
/// radii (angular measure of circle/shape intersections); in higher
/// dimensions a tensor rule over the kernel ball is used and no gradient is
/// attached.
GridFunction mollified_indicator(const Shape& shape, const MollifierSpec& m, const GridSpec& grid);

/// Grid of spacing epsilon / nodes_per_eps covering the shape with a margin
/// of epsilon plus one cell, so boundary nodes lie outside the support.
GridSpec mollifier_grid(const Shape& shape, double epsilon, int nodes_per_eps);

struct MollificationPoint {
  double epsilon = 0.0;
  double volume = 0.0;     ///< int u_eps x^B
  double perimeter = 0.0;  ///< int |grad u_eps| x^A
  double volume_error = 0.0;
  double perimeter_error = 0.0;
  double functional_quotient = 0.0;
};

/// u_eps for each epsilon, compared with the quadrature values of m_B and
/// P_A of the shape. The rates are power-law fits of the absolute errors.
struct MollificationStudy {
  QuotientReport target;
  std::vector<MollificationPoint> points;
  PowerLawFit volume_rate;
  PowerLawFit perimeter_rate;
};
nlohmann::json to_json(const MollificationStudy& s);

MollificationStudy mollification_study(const Shape& shape, const WeightPair& pair, std::span<const double> epsilons,
                                       int nodes_per_eps, const QuadratureSpec& q);

/// int |grad u| x^A / (int |u|^{1/sigma} x^B)^sigma.
double functional_quotient(const GridFunction& u, const WeightPair& pair);

struct IbpResult {
  double lhs = 0.0;  ///< int |y|^b v
  double rhs = 0.0;  ///< (1/a) int |y|^a |v'|
  bool holds = false;
};

/// One-dimensional inequality for the piecewise-linear interpolant of
/// (y_k, v_k); requires a = b + 1 > 0, v >= 0 and v = 0 at both ends.
IbpResult ibp_inequality_check(std::span<const double> y, std::span<const double> v, double a, double b);

struct CoareaResult {
  double gradient_integral = 0.0;  ///< int |grad u| x^A
  double level_integral = 0.0;     ///< C_hat * int_0^max m_B({u > t})^sigma dt
  double norm_term = 0.0;          ///< C_hat * (int |u|^{1/sigma} x^B)^sigma
  double c_hat = 0.0;              ///< min over levels of P_A({u>t}) / m_B({u>t})^sigma
  std::size_t levels = 0;
  bool holds = false;
};

/// Planar check of the chain
///   int |grad u| x^A >= C_hat int m_B({u>t})^sigma dt >= C_hat (int |u|^{1/sigma} x^B)^sigma
/// at relative tolerance rel_tol. Superlevel perimeters come from marching
/// squares; volumes from the node-based cell union. Requires a - b <= 1.
CoareaResult coarea_lower_bound_check(const GridFunction& u, const WeightPair& pair, int level_count,
                                      double rel_tol = 1e-2);

}  // namespace monoiso
