#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "monoiso/param.hpp"
#include "monoiso/weight.hpp"

namespace monoiso {

/// Ball of radius r centred at t e_axis (t > 2r).
struct TranslatedBall {
  std::size_t axis = 0;
  double t = 3.0;
  double r = 1.0;
};

/// {|x| < R, x > 0, x_axis < eps |x without axis|}.
struct ConeSlab {
  std::size_t axis = 0;
  double eps = 0.1;
  double R = 1.0;
};

/// Ball of radius R intersected with the closed positive orthant.
struct OrthantBall {
  double R = 1.0;
};

/// Axis-aligned box with lo >= 0.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
};

struct BoundaryPiece {
  std::string label;
  std::string reference_domain;  ///< human-readable description of the parameter box
  Parametrization param;
  /// Set when the piece lies in {x_k = 0}; the piece carries no weight if E[k] > 0.
  std::optional<std::size_t> hyperplane;
  bool vanishes_for(const ExponentVector& E) const { return hyperplane && E[*hyperplane] > 0.0; }
};

/// Intersection of half-planes {n.x <= c} and closed disks, for planar shapes.
struct PlanarRegion {
  std::vector<std::array<double, 3>> half_planes;  ///< (n1, n2, c) with |n| = 1
  std::vector<std::array<double, 3>> disks;        ///< (cx, cy, radius)
};

class Shape {
 public:
  using Variant = std::variant<TranslatedBall, ConeSlab, OrthantBall, Box>;

  Shape(int N, Variant v);

  static Shape translated_ball(int N, std::size_t axis, double t, double r);
  static Shape cone_slab(int N, std::size_t axis, double eps, double R);
  static Shape orthant_ball(int N, double R);
  static Shape box(std::vector<double> lo, std::vector<double> hi);

  int dim() const { return N_; }
  const Variant& variant() const { return v_; }
  std::string family() const;

  bool contains(std::span<const double> x) const;
  /// Closed axis-aligned box containing the shape.
  std::pair<std::vector<double>, std::vector<double>> bounding_box() const;
  Parametrization volume_param() const;
  std::vector<BoundaryPiece> boundary_pieces() const;
  /// Image under x -> lambda x.
  Shape dilate(double lambda) const;
  nlohmann::json to_json() const;
  /// Only for N = 2.
  PlanarRegion planar_region() const;

 private:
  int N_;
  Variant v_;
};

/// Parses e.g. "cone-slab --axis 1 --eps 1e-3 --R 1", "tball --axis 1 --t 100 --r 1",
/// "orthant-ball --R 1", "box --lo 0,0 --hi 1,1". Axes are 1-based in text.
Shape parse_shape(std::string_view text, int N);

/// int over the positive-orthant ball of radius R of x^A:
///   R^{N+a} prod Gamma((a_j+1)/2) / (2^N Gamma(1 + (N+a)/2)).
double closed_form_orthant_ball_mass(const ExponentVector& A, double R = 1.0);

}  // namespace monoiso
