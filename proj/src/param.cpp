#include "monoiso/param.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace monoiso::chart {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

void sphere_point(std::span<const double> v, std::span<double> omega) {
  const std::size_t m = omega.size();
  double s = 1.0;
  for (std::size_t j = 0; j + 1 < m; ++j) {
    const double th = kHalfPi * v[j];
    omega[j] = s * std::cos(th);
    s *= std::sin(th);
  }
  omega[m - 1] = s;
}

double sphere_jacobian(std::span<const double> v, std::size_t m) {
  if (m <= 1) return 1.0;
  double J = std::pow(kHalfPi, static_cast<double>(m - 1));
  for (std::size_t j = 0; j + 2 < m; ++j) {
    J *= std::pow(std::sin(kHalfPi * v[j]), static_cast<double>(m - 2 - j));
  }
  return J;
}

std::vector<ParamAxis> sphere_axes(std::span<const std::size_t> coords) {
  const std::size_t m = coords.size();
  std::vector<ParamAxis> axes;
  for (std::size_t j = 0; j + 1 < m; ++j) {
    ParamAxis ax;
    // sin(theta_j) multiplies omega_l for l > j and the Jacobian (power m-2-j)
    ax.at_lo.constant = static_cast<double>(m - 2 - j);
    ax.at_lo.coords.assign(coords.begin() + static_cast<std::ptrdiff_t>(j + 1), coords.end());
    // cos(theta_j) appears only in omega_j
    ax.at_hi.coords = {coords[j]};
    axes.push_back(std::move(ax));
  }
  return axes;
}

Parametrization orthant_ball_solid(int ambient, std::vector<std::size_t> coords, double R,
                                   double extra_radial_power) {
  const std::size_t m = coords.size();
  Parametrization p;
  p.ambient = ambient;
  if (m == 0) {
    p.empty = true;
    return p;
  }
  ParamAxis radial;
  radial.at_lo.constant = static_cast<double>(m - 1) + extra_radial_power;
  radial.at_lo.coords = coords;
  p.axes.push_back(radial);
  for (auto& ax : sphere_axes(coords)) p.axes.push_back(std::move(ax));

  p.map = [coords, R](std::span<const double> u, std::span<double> x) {
    const std::size_t m = coords.size();
    std::fill(x.begin(), x.end(), 0.0);
    const double r = R * u[0];
    double omega[16];
    sphere_point(u.subspan(1), std::span<double>(omega, m));
    for (std::size_t l = 0; l < m; ++l) x[coords[l]] = r * omega[l];
  };
  p.jacobian = [m, R, extra_radial_power](std::span<const double> u) {
    const double r = R * u[0];
    return R * std::pow(r, static_cast<double>(m - 1) + extra_radial_power) * sphere_jacobian(u.subspan(1), m);
  };
  return p;
}

Parametrization cone_slab_solid(int ambient, std::vector<std::size_t> coords, std::size_t axis, double eps,
                                double R) {
  const std::size_t m = coords.size();
  Parametrization p;
  p.ambient = ambient;
  if (m < 2) {
    p.empty = true;
    return p;
  }
  std::vector<std::size_t> rest;
  for (std::size_t c : coords)
    if (c != axis) rest.push_back(c);
  if (rest.size() + 1 != m) throw std::invalid_argument("cone_slab_solid: axis not among coords");
  const double psi_max = std::atan(eps);

  ParamAxis radial;
  radial.at_lo.constant = static_cast<double>(m - 1);
  radial.at_lo.coords = coords;
  p.axes.push_back(radial);
  ParamAxis tilt;
  tilt.at_lo.coords = {axis};
  p.axes.push_back(tilt);
  for (auto& ax : sphere_axes(rest)) p.axes.push_back(std::move(ax));

  p.map = [rest, axis, R, psi_max](std::span<const double> u, std::span<double> x) {
    std::fill(x.begin(), x.end(), 0.0);
    const double r = R * u[0];
    const double psi = psi_max * u[1];
    double omega[16];
    sphere_point(u.subspan(2), std::span<double>(omega, rest.size()));
    x[axis] = r * std::sin(psi);
    const double rc = r * std::cos(psi);
    for (std::size_t l = 0; l < rest.size(); ++l) x[rest[l]] = rc * omega[l];
  };
  p.jacobian = [m, R, psi_max](std::span<const double> u) {
    const double r = R * u[0];
    const double psi = psi_max * u[1];
    return R * psi_max * std::pow(r, static_cast<double>(m - 1)) *
           std::pow(std::cos(psi), static_cast<double>(m - 2)) * sphere_jacobian(u.subspan(2), m - 1);
  };
  return p;
}

}  // namespace monoiso::chart
