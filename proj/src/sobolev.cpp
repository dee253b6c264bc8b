#include "monoiso/sobolev.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "monoiso/gauss.hpp"
#include "monoiso/kernels.hpp"
#include "monoiso/special.hpp"

namespace monoiso {

double best_constant_p1(const ExponentVector& A) {
  const double N = static_cast<double>(A.size());
  const double D = N + A.sum();
  double lg = -static_cast<double>(A.positive_count()) * std::log(2.0) - lanczos_lgamma(1.0 + D / 2.0);
  for (std::size_t j = 0; j < A.size(); ++j) lg += lanczos_lgamma((A[j] + 1.0) / 2.0);
  return D * std::exp(lg / D);
}

double best_constant(double p, const ExponentVector& A) {
  const double D = static_cast<double>(A.size()) + A.sum();
  if (!(p > 1.0 && p < D)) throw std::invalid_argument("best_constant: need 1 < p < D");
  const double pp = p / (p - 1.0);
  const double log_gamma_ratio = std::log(pp) + lanczos_lgamma(D) - lanczos_lgamma(D / p) - lanczos_lgamma(D / pp);
  return best_constant_p1(A) * std::pow(D, 1.0 / D - 1.0 - 1.0 / p) * std::pow((p - 1.0) / (D - p), 1.0 / pp) *
         std::exp(log_gamma_ratio / D);
}

// ---- grids ------------------------------------------------------------------

GridSpec GridSpec::covering(std::span<const double> lo, std::span<const double> hi, double h) {
  if (lo.size() != hi.size() || lo.empty()) throw std::invalid_argument("GridSpec::covering: bad corners");
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("GridSpec::covering: h must be positive");
  GridSpec g;
  g.h = h;
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (!(lo[k] < hi[k])) throw std::invalid_argument("GridSpec::covering: need lo < hi");
    const double k0 = std::floor(lo[k] / h);
    const double k1 = std::ceil(hi[k] / h);
    g.lo.push_back(k0 * h);
    g.dims.push_back(static_cast<std::size_t>(k1 - k0) + 1);
  }
  g.validate();
  return g;
}

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (std::size_t d : dims) n *= d;
  return n;
}

std::vector<double> GridSpec::hi() const {
  std::vector<double> out(lo.size());
  for (std::size_t k = 0; k < lo.size(); ++k) out[k] = lo[k] + static_cast<double>(dims[k] - 1) * h;
  return out;
}

void GridSpec::validate() const {
  if (lo.empty() || lo.size() != dims.size()) throw std::invalid_argument("GridSpec: inconsistent dimensions");
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("GridSpec: spacing must be positive");
  for (std::size_t d : dims)
    if (d < 3) throw std::invalid_argument("GridSpec: need at least 3 nodes per axis");
  if (size() > (std::size_t{1} << 31)) throw std::invalid_argument("GridSpec: grid too large");
}

GridFunction::GridFunction(GridSpec grid, std::vector<double> values, bool compact_support)
    : grid_(std::move(grid)), values_(std::move(values)), compact_support_(compact_support) {
  grid_.validate();
  if (values_.size() != grid_.size()) throw std::invalid_argument("GridFunction: value count does not match the grid");
  double vmax = 0.0;
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("GridFunction: non-finite value");
    vmax = std::max(vmax, std::fabs(v));
  }
  if (compact_support_) {
    const std::size_t N = grid_.dims.size();
    std::vector<std::size_t> idx(N);
    for (std::size_t flat = 0; flat < values_.size(); ++flat) {
      std::size_t rem = flat;
      bool edge = false;
      for (std::size_t j = N; j-- > 0;) {
        idx[j] = rem % grid_.dims[j];
        rem /= grid_.dims[j];
        edge = edge || idx[j] == 0 || idx[j] + 1 == grid_.dims[j];
      }
      if (edge && std::fabs(values_[flat]) > 1e-12 * vmax)
        throw std::invalid_argument("GridFunction: compactly supported function must vanish on the grid boundary");
    }
  }
}

GridFunction GridFunction::sample(const GridSpec& grid, const std::function<double(std::span<const double>)>& f,
                                  bool compact_support) {
  grid.validate();
  const std::size_t N = grid.dims.size();
  std::vector<double> values(grid.size());
  GridFunction probe;
  probe.grid_ = grid;
  kernels::grid_map(
      values,
      [&](std::size_t flat, std::span<double> x) {
        probe.node(flat, x);
        return f(x);
      },
      N);
  return GridFunction(grid, std::move(values), compact_support);
}

void GridFunction::node(std::size_t flat, std::span<double> x) const {
  const std::size_t N = grid_.dims.size();
  for (std::size_t j = N; j-- > 0;) {
    const std::size_t i = flat % grid_.dims[j];
    flat /= grid_.dims[j];
    x[j] = grid_.lo[j] + static_cast<double>(i) * grid_.h;
  }
}

std::size_t GridFunction::flat_index(std::span<const std::size_t> idx) const {
  std::size_t flat = 0;
  for (std::size_t j = 0; j < grid_.dims.size(); ++j) flat = flat * grid_.dims[j] + idx[j];
  return flat;
}

void GridFunction::set_gradient(std::vector<double> grad) {
  if (grad.size() != values_.size() * grid_.dims.size())
    throw std::invalid_argument("GridFunction::set_gradient: size mismatch");
  gradient_ = std::move(grad);
}

std::vector<double> GridFunction::gradient_norm() const {
  const std::size_t N = grid_.dims.size();
  std::vector<double> out(values_.size());
  if (has_gradient()) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < N; ++j) s += gradient_[i * N + j] * gradient_[i * N + j];
      out[i] = std::sqrt(s);
    }
    return out;
  }
  std::vector<std::size_t> stride(N, 1);
  for (std::size_t j = N - 1; j-- > 0;) stride[j] = stride[j + 1] * grid_.dims[j + 1];
  const double h = grid_.h;
  kernels::grid_map(
      out,
      [&](std::size_t flat, std::span<double>) {
        double s = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
          const std::size_t i = (flat / stride[j]) % grid_.dims[j];
          double d;
          if (i == 0)
            d = (values_[flat + stride[j]] - values_[flat]) / h;
          else if (i + 1 == grid_.dims[j])
            d = (values_[flat] - values_[flat - stride[j]]) / h;
          else
            d = (values_[flat + stride[j]] - values_[flat - stride[j]]) / (2.0 * h);
          s += d * d;
        }
        return std::sqrt(s);
      },
      0);
  return out;
}

std::vector<double> GridFunction::quadrature_weights(const ExponentVector& E) const {
  const std::size_t N = grid_.dims.size();
  if (E.size() != N) throw std::invalid_argument("quadrature_weights: exponent length does not match the grid");
  const double cell = std::pow(grid_.h, static_cast<double>(N));
  std::vector<double> w(values_.size());
  kernels::grid_map(
      w,
      [&](std::size_t flat, std::span<double> x) {
        double f = cell;
        std::size_t rem = flat;
        for (std::size_t j = N; j-- > 0;) {
          const std::size_t i = rem % grid_.dims[j];
          rem /= grid_.dims[j];
          if (i == 0 || i + 1 == grid_.dims[j]) f *= 0.5;
        }
        node(flat, x);
        return f * eval_weight(x, E);
      },
      N);
  return w;
}

double functional_quotient(const GridFunction& u, const WeightPair& pair) {
  if (u.dim() != pair.N) throw std::invalid_argument("functional_quotient: grid dimension does not match the weights");
  if (!u.compact_support()) throw std::invalid_argument("functional_quotient: u must be compactly supported");
  const auto wa = u.quadrature_weights(pair.A);
  const auto wb = u.quadrature_weights(pair.B);
  const auto g = u.gradient_norm();
  const double num = kernels::weighted_grid_sum(g, wa, [](double v) { return v; });
  const double q = 1.0 / pair.sigma;
  const double den = kernels::weighted_grid_sum(u.values(), wb, [q](double v) { return std::pow(std::fabs(v), q); });
  if (!(den > 0.0)) throw DegenerateShape("functional_quotient: u vanishes identically");
  return num / std::pow(den, pair.sigma);
}

// ---- one-dimensional inequality -----------------------------------------------

namespace {

// int_p^q |y|^e y^k dy for k in {0, 1}, on an interval not containing 0 in its interior.
double signed_moment(double p, double q, double e, int k) {
  const double s = e + k + 1.0;
  if (p >= 0.0) return (std::pow(q, s) - std::pow(p, s)) / s;
  const double sign = k == 0 ? 1.0 : -1.0;
  return sign * (std::pow(-p, s) - std::pow(-q, s)) / s;
}

}  // namespace

IbpResult ibp_inequality_check(std::span<const double> y, std::span<const double> v, double a, double b) {
  if (y.size() != v.size() || y.size() < 2) throw std::invalid_argument("ibp_inequality_check: need matching samples");
  if (!(a > 0.0) || std::fabs(a - (b + 1.0)) > 1e-12 * std::max(1.0, a))
    throw HypothesisError("ibp_inequality_check: need a = b + 1 > 0");
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] < 0.0) throw std::invalid_argument("ibp_inequality_check: v must be nonnegative");
    if (k > 0 && !(y[k] > y[k - 1])) throw std::invalid_argument("ibp_inequality_check: nodes must increase");
  }
  if (v.front() != 0.0 || v.back() != 0.0)
    throw std::invalid_argument("ibp_inequality_check: v must vanish at both ends");

  IbpResult r;
  for (std::size_t k = 0; k + 1 < y.size(); ++k) {
    const double y0 = y[k], y1 = y[k + 1];
    const double slope = (v[k + 1] - v[k]) / (y1 - y0);
    // v(y) = v0 + slope (y - y0) = c0 + slope y
    const double c0 = v[k] - slope * y0;
    std::array<std::pair<double, double>, 2> parts{{{y0, y1}, {0.0, 0.0}}};
    std::size_t np = 1;
    if (y0 < 0.0 && y1 > 0.0) {
      parts = {{{y0, 0.0}, {0.0, y1}}};
      np = 2;
    }
    for (std::size_t j = 0; j < np; ++j) {
      const auto [p, q] = parts[j];
      r.lhs += c0 * signed_moment(p, q, b, 0) + slope * signed_moment(p, q, b, 1);
      r.rhs += std::fabs(slope) * signed_moment(p, q, a, 0) / a;
    }
  }
  r.holds = r.lhs <= r.rhs + 1e-12 * std::max({1.0, std::fabs(r.lhs), std::fabs(r.rhs)});
  return r;
}

// ---- coarea chain -----------------------------------------------------------

namespace {

double weighted_segment(const std::array<double, 2>& p, const std::array<double, 2>& q, const ExponentVector& A) {
  const GaussRule& g = gauss_legendre01(4);
  const double len = std::hypot(q[0] - p[0], q[1] - p[1]);
  if (len == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double t = g.nodes[k];
    const double x[2] = {p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])};
    s += g.weights[k] * eval_weight(x, A);
  }
  return len * s;
}

// Weighted length of the contour {u = t} by marching squares.
double contour_perimeter(const GridFunction& u, double t, const ExponentVector& A) {
  const auto& g = u.grid();
  const std::size_t n0 = g.dims[0], n1 = g.dims[1];
  const auto vals = u.values();
  const double h = g.h;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n0; ++i) {
    for (std::size_t j = 0; j + 1 < n1; ++j) {
      const double v00 = vals[i * n1 + j], v10 = vals[(i + 1) * n1 + j];
      const double v01 = vals[i * n1 + j + 1], v11 = vals[(i + 1) * n1 + j + 1];
      const bool b00 = v00 > t, b10 = v10 > t, b01 = v01 > t, b11 = v11 > t;
      const int mask = b00 | (b10 << 1) | (b11 << 2) | (b01 << 3);
      if (mask == 0 || mask == 15) continue;
      const double x0 = g.lo[0] + static_cast<double>(i) * h, y0 = g.lo[1] + static_cast<double>(j) * h;
      auto lerp = [t](double a, double b) { return (t - a) / (b - a); };
      // edges: 0 bottom (00-10), 1 right (10-11), 2 top (01-11), 3 left (00-01)
      std::array<std::array<double, 2>, 4> pt{};
      std::array<bool, 4> cut{b00 != b10, b10 != b11, b01 != b11, b00 != b01};
      if (cut[0]) pt[0] = {x0 + h * lerp(v00, v10), y0};
      if (cut[1]) pt[1] = {x0 + h, y0 + h * lerp(v10, v11)};
      if (cut[2]) pt[2] = {x0 + h * lerp(v01, v11), y0 + h};
      if (cut[3]) pt[3] = {x0, y0 + h * lerp(v00, v01)};
      int ncut = 0;
      for (bool c : cut) ncut += c;
      if (ncut == 2) {
        int e[2], m = 0;
        for (int k = 0; k < 4; ++k)
          if (cut[k]) e[m++] = k;
        total += weighted_segment(pt[e[0]], pt[e[1]], A);
      } else {
        const bool centre = 0.25 * (v00 + v10 + v01 + v11) > t;
        const bool diag = b00;  // above-set is {00, 11} when true, {10, 01} otherwise
        if (diag == centre) {
          total += weighted_segment(pt[0], pt[1], A) + weighted_segment(pt[2], pt[3], A);
        } else {
          total += weighted_segment(pt[0], pt[3], A) + weighted_segment(pt[1], pt[2], A);
        }
      }
    }
  }
  return total;
}

}  // namespace

CoareaResult coarea_lower_bound_check(const GridFunction& u, const WeightPair& pair, int level_count,
                                      double rel_tol) {
  if (u.dim() != 2 || pair.N != 2) throw std::invalid_argument("coarea_lower_bound_check: planar grids only");
  if (pair.a - pair.b > 1.0 + 1e-12) throw HypothesisError("coarea_lower_bound_check: requires a - b <= 1");
  if (level_count < 1) throw std::invalid_argument("coarea_lower_bound_check: level_count must be >= 1");
  if (!u.compact_support()) throw std::invalid_argument("coarea_lower_bound_check: u must be compactly supported");
  for (double v : u.values())
    if (v < 0.0) throw std::invalid_argument("coarea_lower_bound_check: u must be nonnegative");

  const auto wa = u.quadrature_weights(pair.A);
  const auto wb = u.quadrature_weights(pair.B);
  const auto vals = u.values();
  const double umax = *std::max_element(vals.begin(), vals.end());
  if (!(umax > 0.0)) throw DegenerateShape("coarea_lower_bound_check: u vanishes identically");

  CoareaResult r;
  r.levels = static_cast<std::size_t>(level_count);
  const double dt = umax / level_count;
  std::vector<double> m(r.levels), P(r.levels);
  r.c_hat = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < r.levels; ++j) {
    const double t = (static_cast<double>(j) + 0.5) * dt;
    double mj = 0.0;
    for (std::size_t k = 0; k < vals.size(); ++k)
      if (vals[k] > t) mj += wb[k];
    m[j] = mj;
    P[j] = contour_perimeter(u, t, pair.A);
    if (mj > 0.0) r.c_hat = std::min(r.c_hat, P[j] / std::pow(mj, pair.sigma));
  }
  if (!std::isfinite(r.c_hat)) throw DegenerateShape("coarea_lower_bound_check: all sampled superlevel sets are empty");

  r.gradient_integral = kernels::weighted_grid_sum(u.gradient_norm(), wa, [](double v) { return v; });
  double level_sum = 0.0;
  for (double mj : m) level_sum += std::pow(mj, pair.sigma) * dt;
  r.level_integral = r.c_hat * level_sum;
  const double q = 1.0 / pair.sigma;
  const double norm = kernels::weighted_grid_sum(vals, wb, [q](double v) { return std::pow(std::fabs(v), q); });
  r.norm_term = r.c_hat * std::pow(norm, pair.sigma);
  r.holds = r.gradient_integral >= r.level_integral * (1.0 - rel_tol) && r.level_integral >= r.norm_term * (1.0 - rel_tol);
  return r;
}

}  // namespace monoiso

// ---- mollification study ------------------------------------------------------

namespace monoiso {

GridSpec mollifier_grid(const Shape& shape, double epsilon, int nodes_per_eps) {
  if (nodes_per_eps < 2) throw std::invalid_argument("mollifier_grid: nodes_per_eps must be >= 2");
  const double h = epsilon / nodes_per_eps;
  auto [lo, hi] = shape.bounding_box();
  for (std::size_t k = 0; k < lo.size(); ++k) {
    lo[k] -= epsilon + h;
    hi[k] += epsilon + h;
  }
  return GridSpec::covering(lo, hi, h);
}

nlohmann::json to_json(const MollificationStudy& s) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : s.points)
    pts.push_back({{"epsilon", p.epsilon},
                   {"volume", p.volume},
                   {"perimeter", p.perimeter},
                   {"volume_error", p.volume_error},
                   {"perimeter_error", p.perimeter_error},
                   {"functional_quotient", p.functional_quotient}});
  return {{"target", to_json(s.target)},
          {"points", pts},
          {"volume_rate", to_json(s.volume_rate)},
          {"perimeter_rate", to_json(s.perimeter_rate)}};
}

MollificationStudy mollification_study(const Shape& shape, const WeightPair& pair, std::span<const double> epsilons,
                                       int nodes_per_eps, const QuadratureSpec& q) {
  if (epsilons.size() < 3) throw std::invalid_argument("mollification_study: need at least 3 values of epsilon");
  MollificationStudy s;
  s.target = quotient(shape, pair, q);
  std::vector<double> ev, dv, dp;
  for (double eps : epsilons) {
    MollifierSpec m{eps};
    const GridFunction u = mollified_indicator(shape, m, mollifier_grid(shape, eps, nodes_per_eps));
    MollificationPoint p;
    p.epsilon = eps;
    const auto wb = u.quadrature_weights(pair.B);
    const auto wa = u.quadrature_weights(pair.A);
    p.volume = kernels::weighted_grid_sum(u.values(), wb, [](double v) { return v; });
    const auto g = u.gradient_norm();
    p.perimeter = kernels::weighted_grid_sum(g, wa, [](double v) { return v; });
    p.volume_error = p.volume - s.target.volume.value;
    p.perimeter_error = p.perimeter - s.target.perimeter.value;
    p.functional_quotient = functional_quotient(u, pair);
    s.points.push_back(p);
    ev.push_back(eps);
    dv.push_back(std::fabs(p.volume_error));
    dp.push_back(std::fabs(p.perimeter_error));
  }
  s.volume_rate = fit_power_law(ev, dv);
  s.perimeter_rate = fit_power_law(ev, dp);
  return s;
}

}  // namespace monoiso
