#include "monoiso/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "monoiso/special.hpp"

namespace monoiso {
namespace {

constexpr int kMaxDim = 12;
constexpr double kHalfPi = std::numbers::pi / 2.0;

std::vector<std::size_t> all_coords(int N) {
  std::vector<std::size_t> c(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) c[k] = static_cast<std::size_t>(k);
  return c;
}

std::vector<std::size_t> without(int N, std::size_t skip) {
  std::vector<std::size_t> c;
  for (int k = 0; k < N; ++k)
    if (static_cast<std::size_t>(k) != skip) c.push_back(static_cast<std::size_t>(k));
  return c;
}

std::string idx1(std::size_t k) { return std::to_string(k + 1); }

MapFn constant_normal(int N, std::size_t k, double sign) {
  return [N, k, sign](std::span<const double>, std::span<double> n) {
    std::fill(n.begin(), n.begin() + N, 0.0);
    n[k] = sign;
  };
}

// ---- TranslatedBall ---------------------------------------------------------

Parametrization tball_volume(int N, const TranslatedBall& s) {
  const auto rest = without(N, s.axis);
  Parametrization p;
  p.ambient = N;
  p.mirror_coords = rest;
  ParamAxis rho;
  rho.at_lo.constant = N - 1;
  rho.at_lo.coords = rest;
  ParamAxis theta;
  theta.at_lo.constant = N - 2;
  theta.at_lo.coords = rest;
  theta.at_hi = theta.at_lo;
  p.axes = {rho, theta};
  for (auto& ax : chart::sphere_axes(rest)) p.axes.push_back(std::move(ax));

  const std::size_t i = s.axis;
  const double t = s.t, r = s.r;
  p.map = [rest, i, t, r](std::span<const double> u, std::span<double> x) {
    double omega[kMaxDim];
    chart::sphere_point(u.subspan(2), std::span<double>(omega, rest.size()));
    const double rr = r * u[0];
    const double th = std::numbers::pi * u[1];
    x[i] = t + rr * std::cos(th);
    const double rs = rr * std::sin(th);
    for (std::size_t l = 0; l < rest.size(); ++l) x[rest[l]] = rs * omega[l];
  };
  p.jacobian = [N, r](std::span<const double> u) {
    return std::pow(r, N) * std::numbers::pi * std::pow(u[0], N - 1) * std::pow(std::sin(std::numbers::pi * u[1]), N - 2) *
           chart::sphere_jacobian(u.subspan(2), static_cast<std::size_t>(N - 1));
  };
  return p;
}

BoundaryPiece tball_hemisphere(int N, const TranslatedBall& s, bool upper) {
  const auto rest = without(N, s.axis);
  BoundaryPiece piece;
  piece.label = upper ? "upper" : "lower";
  piece.reference_domain = "polar angle [0,pi/2] x S^" + std::to_string(N - 2) + "_+, mirrored over " +
                           std::to_string(N - 1) + " transverse signs";
  Parametrization& p = piece.param;
  p.ambient = N;
  p.mirror_coords = rest;
  ParamAxis theta;
  theta.at_lo.constant = N - 2;
  theta.at_lo.coords = rest;
  p.axes = {theta};
  for (auto& ax : chart::sphere_axes(rest)) p.axes.push_back(std::move(ax));

  const std::size_t i = s.axis;
  const double t = s.t, r = s.r, sgn = upper ? 1.0 : -1.0;
  p.map = [rest, i, t, r, sgn](std::span<const double> u, std::span<double> x) {
    double omega[kMaxDim];
    chart::sphere_point(u.subspan(1), std::span<double>(omega, rest.size()));
    const double th = kHalfPi * u[0];
    x[i] = t + sgn * r * std::cos(th);
    const double rs = r * std::sin(th);
    for (std::size_t l = 0; l < rest.size(); ++l) x[rest[l]] = rs * omega[l];
  };
  p.jacobian = [N, r](std::span<const double> u) {
    return kHalfPi * std::pow(r, N - 1) * std::pow(std::sin(kHalfPi * u[0]), N - 2) *
           chart::sphere_jacobian(u.subspan(1), static_cast<std::size_t>(N - 1));
  };
  const auto map = p.map;
  p.normal = [map, i, t, r](std::span<const double> u, std::span<double> n) {
    map(u, n);
    n[i] -= t;
    for (double& v : n) v /= r;
  };
  return piece;
}

// ---- ConeSlab -------------------------------------------------------------

BoundaryPiece cone_lateral(int N, const ConeSlab& s) {
  const auto rest = without(N, s.axis);
  const double psi = std::atan(s.eps);
  BoundaryPiece piece;
  piece.label = "A1";
  piece.reference_domain = "radius [0,R] x S^" + std::to_string(N - 2) + "_+ on the cone x_" + idx1(s.axis) +
                           " = eps |x'|";
  Parametrization& p = piece.param;
  p.ambient = N;
  ParamAxis radial;
  radial.at_lo.constant = N - 2;
  radial.at_lo.coords = all_coords(N);
  p.axes = {radial};
  for (auto& ax : chart::sphere_axes(rest)) p.axes.push_back(std::move(ax));

  const std::size_t i = s.axis;
  const double R = s.R, sp = std::sin(psi), cp = std::cos(psi);
  p.map = [rest, i, R, sp, cp](std::span<const double> u, std::span<double> x) {
    double omega[kMaxDim];
    chart::sphere_point(u.subspan(1), std::span<double>(omega, rest.size()));
    const double r = R * u[0];
    x[i] = r * sp;
    for (std::size_t l = 0; l < rest.size(); ++l) x[rest[l]] = r * cp * omega[l];
  };
  p.jacobian = [N, R, cp](std::span<const double> u) {
    return R * std::pow(R * u[0], N - 2) * std::pow(cp, N - 2) *
           chart::sphere_jacobian(u.subspan(1), static_cast<std::size_t>(N - 1));
  };
  p.normal = [rest, i, sp, cp](std::span<const double> u, std::span<double> n) {
    double omega[kMaxDim];
    chart::sphere_point(u.subspan(1), std::span<double>(omega, rest.size()));
    n[i] = cp;
    for (std::size_t l = 0; l < rest.size(); ++l) n[rest[l]] = -sp * omega[l];
  };
  return piece;
}

BoundaryPiece cone_cap(int N, const ConeSlab& s) {
  const auto rest = without(N, s.axis);
  const double psi_max = std::atan(s.eps);
  BoundaryPiece piece;
  piece.label = "A2";
  piece.reference_domain = "tilt [0,atan eps] x S^" + std::to_string(N - 2) + "_+ on |x| = R";
  Parametrization& p = piece.param;
  p.ambient = N;
  ParamAxis tilt;
  tilt.at_lo.coords = {s.axis};
  p.axes = {tilt};
  for (auto& ax : chart::sphere_axes(rest)) p.axes.push_back(std::move(ax));

  const std::size_t i = s.axis;
  const double R = s.R;
  p.map = [rest, i, R, psi_max](std::span<const double> u, std::span<double> x) {
    double omega[kMaxDim];
    chart::sphere_point(u.subspan(1), std::span<double>(omega, rest.size()));
    const double psi = psi_max * u[0];
    x[i] = R * std::sin(psi);
    const double rc = R * std::cos(psi);
    for (std::size_t l = 0; l < rest.size(); ++l) x[rest[l]] = rc * omega[l];
  };
  p.jacobian = [N, R, psi_max](std::span<const double> u) {
    return psi_max * std::pow(R, N - 1) * std::pow(std::cos(psi_max * u[0]), N - 2) *
           chart::sphere_jacobian(u.subspan(1), static_cast<std::size_t>(N - 1));
  };
  const auto map = p.map;
  p.normal = [map, R](std::span<const double> u, std::span<double> n) {
    map(u, n);
    for (double& v : n) v /= R;
  };
  return piece;
}

// ---- OrthantBall ------------------------------------------------------------

BoundaryPiece orthant_sphere(int N, double R) {
  const auto coords = all_coords(N);
  BoundaryPiece piece;
  piece.label = "sphere";
  piece.reference_domain = "S^" + std::to_string(N - 1) + "_+ scaled by R";
  Parametrization& p = piece.param;
  p.ambient = N;
  p.axes = chart::sphere_axes(coords);
  p.map = [N, R](std::span<const double> u, std::span<double> x) {
    chart::sphere_point(u, x.first(static_cast<std::size_t>(N)));
    for (int k = 0; k < N; ++k) x[k] *= R;
  };
  p.jacobian = [N, R](std::span<const double> u) {
    return std::pow(R, N - 1) * chart::sphere_jacobian(u, static_cast<std::size_t>(N));
  };
  p.normal = [N](std::span<const double> u, std::span<double> n) {
    chart::sphere_point(u, n.first(static_cast<std::size_t>(N)));
  };
  return piece;
}

BoundaryPiece facet(std::string label, std::string ref, Parametrization param, int N, std::size_t k) {
  BoundaryPiece piece;
  piece.label = std::move(label);
  piece.reference_domain = std::move(ref);
  piece.param = std::move(param);
  piece.param.normal = constant_normal(N, k, -1.0);
  piece.hyperplane = k;
  return piece;
}

// ---- Box -------------------------------------------------------------------

Parametrization box_solid(const Box& b, std::optional<std::size_t> fixed, double fixed_value) {
  const int N = static_cast<int>(b.lo.size());
  Parametrization p;
  p.ambient = N;
  std::vector<std::size_t> free_coords;
  for (int j = 0; j < N; ++j) {
    if (fixed && *fixed == static_cast<std::size_t>(j)) continue;
    free_coords.push_back(static_cast<std::size_t>(j));
    ParamAxis ax;
    if (b.lo[j] == 0.0) ax.at_lo.coords = {static_cast<std::size_t>(j)};
    p.axes.push_back(ax);
  }
  const auto lo = b.lo, hi = b.hi;
  const std::size_t fk = fixed ? *fixed : 0;
  const bool has_fixed = fixed.has_value();
  p.map = [free_coords, lo, hi, fk, has_fixed, fixed_value](std::span<const double> u, std::span<double> x) {
    for (std::size_t l = 0; l < free_coords.size(); ++l) {
      const std::size_t j = free_coords[l];
      x[j] = lo[j] + (hi[j] - lo[j]) * u[l];
    }
    if (has_fixed) x[fk] = fixed_value;
  };
  double J = 1.0;
  for (std::size_t j : free_coords) J *= b.hi[j] - b.lo[j];
  p.jacobian = [J](std::span<const double>) { return J; };
  return p;
}

void check_axis(std::size_t axis, int N, const char* who) {
  if (axis >= static_cast<std::size_t>(N)) throw std::invalid_argument(std::string(who) + ": axis out of range");
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

Shape::Shape(int N, Variant v) : N_(N), v_(std::move(v)) {
  if (N < 2 || N > kMaxDim) throw std::invalid_argument("Shape: dimension must be in [2, 12]");
  std::visit(
      [N](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TranslatedBall>) {
          check_axis(s.axis, N, "TranslatedBall");
          if (!finite_positive(s.r) || !std::isfinite(s.t) || !(s.t > 2.0 * s.r))
            throw std::invalid_argument("TranslatedBall: need r > 0 and t > 2r");
        } else if constexpr (std::is_same_v<T, ConeSlab>) {
          check_axis(s.axis, N, "ConeSlab");
          if (!finite_positive(s.eps) || !finite_positive(s.R))
            throw std::invalid_argument("ConeSlab: need eps > 0 and R > 0");
        } else if constexpr (std::is_same_v<T, OrthantBall>) {
          if (!finite_positive(s.R)) throw std::invalid_argument("OrthantBall: need R > 0");
        } else {
          if (s.lo.size() != static_cast<std::size_t>(N) || s.hi.size() != static_cast<std::size_t>(N))
            throw std::invalid_argument("Box: lo and hi must have length N");
          for (int j = 0; j < N; ++j) {
            if (!std::isfinite(s.lo[j]) || !std::isfinite(s.hi[j]) || s.lo[j] < 0.0 || !(s.lo[j] < s.hi[j]))
              throw std::invalid_argument("Box: need 0 <= lo < hi componentwise");
          }
        }
      },
      v_);
}

Shape Shape::translated_ball(int N, std::size_t axis, double t, double r) { return Shape(N, TranslatedBall{axis, t, r}); }
Shape Shape::cone_slab(int N, std::size_t axis, double eps, double R) { return Shape(N, ConeSlab{axis, eps, R}); }
Shape Shape::orthant_ball(int N, double R) { return Shape(N, OrthantBall{R}); }
Shape Shape::box(std::vector<double> lo, std::vector<double> hi) {
  const int N = static_cast<int>(lo.size());
  return Shape(N, Box{std::move(lo), std::move(hi)});
}

std::string Shape::family() const {
  switch (v_.index()) {
    case 0: return "tball";
    case 1: return "cone-slab";
    case 2: return "orthant-ball";
    default: return "box";
  }
}

bool Shape::contains(std::span<const double> x) const {
  const int N = N_;
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TranslatedBall>) {
          double d2 = 0.0;
          for (int k = 0; k < N; ++k) {
            const double c = static_cast<std::size_t>(k) == s.axis ? s.t : 0.0;
            d2 += (x[k] - c) * (x[k] - c);
          }
          return d2 <= s.r * s.r;
        } else if constexpr (std::is_same_v<T, ConeSlab>) {
          double rest2 = 0.0, all2 = 0.0;
          for (int k = 0; k < N; ++k) {
            if (x[k] < 0.0) return false;
            all2 += x[k] * x[k];
            if (static_cast<std::size_t>(k) != s.axis) rest2 += x[k] * x[k];
          }
          return all2 <= s.R * s.R && x[s.axis] <= s.eps * std::sqrt(rest2);
        } else if constexpr (std::is_same_v<T, OrthantBall>) {
          double all2 = 0.0;
          for (int k = 0; k < N; ++k) {
            if (x[k] < 0.0) return false;
            all2 += x[k] * x[k];
          }
          return all2 <= s.R * s.R;
        } else {
          for (int k = 0; k < N; ++k)
            if (x[k] < s.lo[k] || x[k] > s.hi[k]) return false;
          return true;
        }
      },
      v_);
}

std::pair<std::vector<double>, std::vector<double>> Shape::bounding_box() const {
  const std::size_t n = static_cast<std::size_t>(N_);
  std::vector<double> lo(n), hi(n);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TranslatedBall>) {
          for (std::size_t k = 0; k < n; ++k) {
            const double c = k == s.axis ? s.t : 0.0;
            lo[k] = c - s.r;
            hi[k] = c + s.r;
          }
        } else if constexpr (std::is_same_v<T, ConeSlab>) {
          for (std::size_t k = 0; k < n; ++k) {
            lo[k] = 0.0;
            hi[k] = k == s.axis ? s.R * s.eps / std::sqrt(1.0 + s.eps * s.eps) : s.R;
          }
        } else if constexpr (std::is_same_v<T, OrthantBall>) {
          std::fill(lo.begin(), lo.end(), 0.0);
          std::fill(hi.begin(), hi.end(), s.R);
        } else {
          lo = s.lo;
          hi = s.hi;
        }
      },
      v_);
  return {lo, hi};
}

Parametrization Shape::volume_param() const {
  const int N = N_;
  return std::visit(
      [N](const auto& s) -> Parametrization {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TranslatedBall>) {
          return tball_volume(N, s);
        } else if constexpr (std::is_same_v<T, ConeSlab>) {
          return chart::cone_slab_solid(N, all_coords(N), s.axis, s.eps, s.R);
        } else if constexpr (std::is_same_v<T, OrthantBall>) {
          return chart::orthant_ball_solid(N, all_coords(N), s.R);
        } else {
          return box_solid(s, std::nullopt, 0.0);
        }
      },
      v_);
}

std::vector<BoundaryPiece> Shape::boundary_pieces() const {
  const int N = N_;
  std::vector<BoundaryPiece> out;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TranslatedBall>) {
          out.push_back(tball_hemisphere(N, s, true));
          out.push_back(tball_hemisphere(N, s, false));
        } else if constexpr (std::is_same_v<T, ConeSlab>) {
          out.push_back(cone_lateral(N, s));
          out.push_back(cone_cap(N, s));
          const auto rest = without(N, s.axis);
          out.push_back(facet("A3", "positive orthant ball of radius R in {x_" + idx1(s.axis) + " = 0}",
                              chart::orthant_ball_solid(N, rest, s.R), N, s.axis));
          for (std::size_t k : rest) {
            out.push_back(facet("C" + idx1(k), "cone slab in {x_" + idx1(k) + " = 0}",
                                chart::cone_slab_solid(N, without(N, k), s.axis, s.eps, s.R), N, k));
          }
        } else if constexpr (std::is_same_v<T, OrthantBall>) {
          out.push_back(orthant_sphere(N, s.R));
          for (int k = 0; k < N; ++k) {
            const auto kk = static_cast<std::size_t>(k);
            out.push_back(facet("facet" + idx1(kk), "positive orthant ball of radius R in {x_" + idx1(kk) + " = 0}",
                                chart::orthant_ball_solid(N, without(N, kk), s.R), N, kk));
          }
        } else {
          for (int k = 0; k < N; ++k) {
            const auto kk = static_cast<std::size_t>(k);
            for (int side = 0; side < 2; ++side) {
              const double v = side == 0 ? s.lo[k] : s.hi[k];
              BoundaryPiece piece;
              piece.label = "x" + idx1(kk) + (side == 0 ? "=lo" : "=hi");
              piece.reference_domain = "face of the box";
              piece.param = box_solid(s, kk, v);
              piece.param.normal = constant_normal(N, kk, side == 0 ? -1.0 : 1.0);
              if (v == 0.0) piece.hyperplane = kk;
              out.push_back(std::move(piece));
            }
          }
        }
      },
      v_);
  return out;
}

Shape Shape::dilate(double lambda) const {
  if (!finite_positive(lambda)) throw std::invalid_argument("dilate: lambda must be positive");
  Variant v = v_;
  std::visit(
      [lambda](auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TranslatedBall>) {
          s.t *= lambda;
          s.r *= lambda;
        } else if constexpr (std::is_same_v<T, ConeSlab>) {
          s.R *= lambda;
        } else if constexpr (std::is_same_v<T, OrthantBall>) {
          s.R *= lambda;
        } else {
          for (double& x : s.lo) x *= lambda;
          for (double& x : s.hi) x *= lambda;
        }
      },
      v);
  return Shape(N_, std::move(v));
}

nlohmann::json Shape::to_json() const {
  nlohmann::json j;
  j["family"] = family();
  j["N"] = N_;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TranslatedBall>) {
          j["axis"] = s.axis + 1;
          j["t"] = s.t;
          j["r"] = s.r;
        } else if constexpr (std::is_same_v<T, ConeSlab>) {
          j["axis"] = s.axis + 1;
          j["eps"] = s.eps;
          j["R"] = s.R;
        } else if constexpr (std::is_same_v<T, OrthantBall>) {
          j["R"] = s.R;
        } else {
          j["lo"] = s.lo;
          j["hi"] = s.hi;
        }
      },
      v_);
  return j;
}

PlanarRegion Shape::planar_region() const {
  if (N_ != 2) throw std::invalid_argument("planar_region: only defined for N = 2");
  PlanarRegion reg;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TranslatedBall>) {
          reg.disks.push_back({s.axis == 0 ? s.t : 0.0, s.axis == 1 ? s.t : 0.0, s.r});
        } else if constexpr (std::is_same_v<T, ConeSlab>) {
          reg.half_planes.push_back({-1.0, 0.0, 0.0});
          reg.half_planes.push_back({0.0, -1.0, 0.0});
          // x_i - eps x_j <= 0
          const double h = std::sqrt(1.0 + s.eps * s.eps);
          std::array<double, 3> hp{0.0, 0.0, 0.0};
          hp[s.axis] = 1.0 / h;
          hp[1 - s.axis] = -s.eps / h;
          reg.half_planes.push_back(hp);
          reg.disks.push_back({0.0, 0.0, s.R});
        } else if constexpr (std::is_same_v<T, OrthantBall>) {
          reg.half_planes.push_back({-1.0, 0.0, 0.0});
          reg.half_planes.push_back({0.0, -1.0, 0.0});
          reg.disks.push_back({0.0, 0.0, s.R});
        } else {
          reg.half_planes.push_back({-1.0, 0.0, -s.lo[0]});
          reg.half_planes.push_back({1.0, 0.0, s.hi[0]});
          reg.half_planes.push_back({0.0, -1.0, -s.lo[1]});
          reg.half_planes.push_back({0.0, 1.0, s.hi[1]});
        }
      },
      v_);
  return reg;
}

namespace {

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    out.push_back(std::stod(item, &pos));
    if (pos != item.size()) throw std::invalid_argument("bad number: " + item);
  }
  return out;
}

double parse_number(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number: " + s);
  return v;
}

}  // namespace

Shape parse_shape(std::string_view text, int N) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> tok;
  for (std::string w; in >> w;) tok.push_back(w);
  if (tok.empty()) throw std::invalid_argument("parse_shape: empty shape description");
  const std::string fam = tok[0];

  std::optional<double> axis, eps, R, t, r;
  std::optional<std::vector<double>> lo, hi;
  for (std::size_t k = 1; k < tok.size(); k += 2) {
    if (k + 1 >= tok.size()) throw std::invalid_argument("parse_shape: flag " + tok[k] + " has no value");
    const std::string& f = tok[k];
    const std::string& v = tok[k + 1];
    static const std::vector<std::string> known = {"--axis", "--eps", "--R", "--t", "--r", "--lo", "--hi"};
    if (std::find(known.begin(), known.end(), f) == known.end())
      throw std::invalid_argument("parse_shape: unknown flag " + f);
    try {
      if (f == "--axis") axis = parse_number(v);
      else if (f == "--eps") eps = parse_number(v);
      else if (f == "--R") R = parse_number(v);
      else if (f == "--t") t = parse_number(v);
      else if (f == "--r") r = parse_number(v);
      else if (f == "--lo") lo = parse_list(v);
      else hi = parse_list(v);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("parse_shape: bad value for " + f + ": " + v);
    }
  }
  auto to_axis = [](double a) {
    if (!(a >= 1.0) || a != std::floor(a)) throw std::invalid_argument("parse_shape: --axis must be a 1-based index");
    return static_cast<std::size_t>(a) - 1;
  };
  if (fam == "tball" || fam == "translated-ball") {
    if (!t) throw std::invalid_argument("parse_shape: tball needs --t");
    return Shape::translated_ball(N, to_axis(axis.value_or(1.0)), *t, r.value_or(1.0));
  }
  if (fam == "cone-slab") {
    if (!eps) throw std::invalid_argument("parse_shape: cone-slab needs --eps");
    return Shape::cone_slab(N, to_axis(axis.value_or(1.0)), *eps, R.value_or(1.0));
  }
  if (fam == "orthant-ball") return Shape::orthant_ball(N, R.value_or(1.0));
  if (fam == "box") {
    if (!lo || !hi) throw std::invalid_argument("parse_shape: box needs --lo and --hi");
    if (static_cast<int>(lo->size()) != N) throw std::invalid_argument("parse_shape: box corners must have length N");
    return Shape::box(*lo, *hi);
  }
  throw std::invalid_argument("parse_shape: unknown family " + fam);
}

double closed_form_orthant_ball_mass(const ExponentVector& A, double R) {
  if (!finite_positive(R)) throw std::invalid_argument("closed_form_orthant_ball_mass: R must be positive");
  const double N = static_cast<double>(A.size());
  const double D = N + A.sum();
  double lg = D * std::log(R) - N * std::log(2.0) - lanczos_lgamma(1.0 + D / 2.0);
  for (std::size_t j = 0; j < A.size(); ++j) lg += lanczos_lgamma((A[j] + 1.0) / 2.0);
  return std::exp(lg);
}

}  // namespace monoiso
