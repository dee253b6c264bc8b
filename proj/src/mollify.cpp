#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "monoiso/gauss.hpp"
#include "monoiso/kernels.hpp"
#include "monoiso/sobolev.hpp"
#include "monoiso/special.hpp"

namespace monoiso {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double bump(double s) { return s < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0; }

double compute_normalization(int N) {
  // int_0^1 bump(r) r^{N-1} dr by composite Gauss-Legendre
  const GaussRule& g = gauss_legendre01(20);
  const int panels = 40;
  double I = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = static_cast<double>(p) / panels;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double r = a + g.nodes[k] / panels;
      I += g.weights[k] / panels * bump(r) * std::pow(r, N - 1);
    }
  }
  const double sphere = 2.0 * std::pow(std::numbers::pi, N / 2.0) / lanczos_gamma(N / 2.0);
  return 1.0 / (sphere * I);
}

}  // namespace

void MollifierSpec::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw std::invalid_argument("MollifierSpec: epsilon must be positive");
}

double MollifierSpec::normalization(int N) {
  if (N < 1 || N > 12) throw std::invalid_argument("MollifierSpec::normalization: N out of range");
  static const std::array<double, 13> table = [] {
    std::array<double, 13> t{};
    for (int n = 1; n <= 12; ++n) t[n] = compute_normalization(n);
    return t;
  }();
  return table[N];
}

double MollifierSpec::kernel(double r, int N) const {
  return normalization(N) * std::pow(epsilon, -N) * bump(r / epsilon);
}

namespace {

// ---- planar exact evaluation ---------------------------------------------------

struct Arc {
  double start, len;
};

// Allowed directions {phi : cos(phi - phi0) <= kappa}.
enum class ArcKind { all, none, some };
ArcKind make_arc(double phi0, double kappa, Arc& out) {
  if (kappa >= 1.0) return ArcKind::all;
  if (kappa <= -1.0) return ArcKind::none;
  const double a = std::acos(kappa);
  out = {phi0 + a, kTwoPi - 2.0 * a};
  return ArcKind::some;
}

class PlanarMollifier {
 public:
  PlanarMollifier(const Shape& shape, double eps) : reg_(shape.planar_region()), eps_(eps) {
    scale_ = MollifierSpec::normalization(2) / (eps * eps);
    build_vertices();
  }

  double slack(const double* x) const {
    double s = std::numeric_limits<double>::infinity();
    for (const auto& hp : reg_.half_planes) s = std::min(s, std::fabs(hp[0] * x[0] + hp[1] * x[1] - hp[2]));
    for (const auto& dk : reg_.disks) s = std::min(s, std::fabs(std::hypot(x[0] - dk[0], x[1] - dk[1]) - dk[2]));
    return s;
  }

  bool inside(const double* x) const {
    for (const auto& hp : reg_.half_planes)
      if (hp[0] * x[0] + hp[1] * x[1] > hp[2]) return false;
    for (const auto& dk : reg_.disks)
      if (std::hypot(x[0] - dk[0], x[1] - dk[1]) > dk[2]) return false;
    return true;
  }

  double value(const double* x) const {
    if (slack(x) >= eps_) return inside(x) ? 1.0 : 0.0;
    std::vector<double> br{0.0, eps_};
    auto add = [&](double r) {
      if (r > 0.0 && r < eps_) br.push_back(r);
    };
    for (const auto& hp : reg_.half_planes) add(std::fabs(hp[0] * x[0] + hp[1] * x[1] - hp[2]));
    for (const auto& dk : reg_.disks) {
      const double d = std::hypot(x[0] - dk[0], x[1] - dk[1]);
      add(std::fabs(d - dk[2]));
      add(d + dk[2]);
    }
    for (const auto& v : vertices_) add(std::hypot(x[0] - v[0], x[1] - v[1]));
    std::sort(br.begin(), br.end());

    const GaussRule& g = gauss_legendre01(32);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < br.size(); ++k) {
      const double a = br[k], b = br[k + 1];
      if (b - a <= 1e-15 * eps_) continue;
      // r = a + (b-a)(1 - cos(pi s))/2 clusters nodes at both ends, where the
      // angular measure has square-root behaviour
      for (std::size_t j = 0; j < g.size(); ++j) {
        const double s = g.nodes[j];
        const double r = a + 0.5 * (b - a) * (1.0 - std::cos(std::numbers::pi * s));
        const double dr = 0.5 * (b - a) * std::numbers::pi * std::sin(std::numbers::pi * s);
        total += g.weights[j] * dr * scale_ * bump(r / eps_) * r * angular_measure(x, r);
      }
    }
    return std::clamp(total, 0.0, 1.0);
  }

 private:
  double angular_measure(const double* x, double r) const {
    std::vector<std::pair<double, double>> cur;
    bool full = true;
    auto apply = [&](const Arc& arc) {
      if (full) {
        cur = {{arc.start, arc.start + arc.len}};
        full = false;
        return;
      }
      std::vector<std::pair<double, double>> next;
      for (const auto& [p, q] : cur) {
        for (int k = -2; k <= 2; ++k) {
          const double s = arc.start + k * kTwoPi;
          const double lo = std::max(p, s), hi = std::min(q, s + arc.len);
          if (hi > lo) next.emplace_back(lo, hi);
        }
      }
      cur = std::move(next);
    };
    Arc arc{};
    for (const auto& hp : reg_.half_planes) {
      const double kappa = (hp[2] - (hp[0] * x[0] + hp[1] * x[1])) / r;
      const auto kind = make_arc(std::atan2(hp[1], hp[0]), kappa, arc);
      if (kind == ArcKind::none) return 0.0;
      if (kind == ArcKind::some) apply(arc);
    }
    for (const auto& dk : reg_.disks) {
      const double dx = x[0] - dk[0], dy = x[1] - dk[1];
      const double d = std::hypot(dx, dy);
      if (d == 0.0) {
        if (r <= dk[2]) continue;
        return 0.0;
      }
      const double kappa = (dk[2] * dk[2] - d * d - r * r) / (2.0 * r * d);
      const auto kind = make_arc(std::atan2(dy, dx), kappa, arc);
      if (kind == ArcKind::none) return 0.0;
      if (kind == ArcKind::some) apply(arc);
    }
    if (full) return kTwoPi;
    double m = 0.0;
    for (const auto& [p, q] : cur) m += q - p;
    return m;
  }

  void build_vertices() {
    const auto& H = reg_.half_planes;
    const auto& C = reg_.disks;
    for (std::size_t i = 0; i < H.size(); ++i) {
      for (std::size_t j = i + 1; j < H.size(); ++j) {
        const double det = H[i][0] * H[j][1] - H[i][1] * H[j][0];
        if (std::fabs(det) < 1e-14) continue;
        vertices_.push_back({(H[i][2] * H[j][1] - H[j][2] * H[i][1]) / det, (H[i][0] * H[j][2] - H[j][0] * H[i][2]) / det});
      }
      for (const auto& dk : C) {
        const double s = H[i][2] - (H[i][0] * dk[0] + H[i][1] * dk[1]);
        if (std::fabs(s) > dk[2]) continue;
        const double w = std::sqrt(std::max(dk[2] * dk[2] - s * s, 0.0));
        const double fx = dk[0] + s * H[i][0], fy = dk[1] + s * H[i][1];
        vertices_.push_back({fx - w * H[i][1], fy + w * H[i][0]});
        vertices_.push_back({fx + w * H[i][1], fy - w * H[i][0]});
      }
    }
    for (std::size_t i = 0; i < C.size(); ++i) {
      for (std::size_t j = i + 1; j < C.size(); ++j) {
        const double dx = C[j][0] - C[i][0], dy = C[j][1] - C[i][1];
        const double d = std::hypot(dx, dy);
        if (d == 0.0 || d > C[i][2] + C[j][2] || d < std::fabs(C[i][2] - C[j][2])) continue;
        const double a = (C[i][2] * C[i][2] - C[j][2] * C[j][2] + d * d) / (2.0 * d);
        const double hh = std::sqrt(std::max(C[i][2] * C[i][2] - a * a, 0.0));
        const double px = C[i][0] + a * dx / d, py = C[i][1] + a * dy / d;
        vertices_.push_back({px - hh * dy / d, py + hh * dx / d});
        vertices_.push_back({px + hh * dy / d, py - hh * dx / d});
      }
    }
  }

  PlanarRegion reg_;
  double eps_;
  double scale_;
  std::vector<std::array<double, 2>> vertices_;
};

// Quadrature points on the boundary, bucketed on an eps-grid, for
// grad u(x) = - sum rho_eps(|x - y|) nu(y) w.
class BoundaryGradient {
 public:
  BoundaryGradient(const Shape& shape, const MollifierSpec& m) : m_(m) {
    const GaussRule& g8 = gauss_legendre01(8);
    const GaussRule& g64 = gauss_legendre01(64);
    const double eps = m.epsilon;
    std::array<double, 2> x{}, nu{};
    for (const BoundaryPiece& piece : shape.boundary_pieces()) {
      const Parametrization& p = piece.param;
      if (p.empty) continue;
      if (p.dim() != 1) throw std::logic_error("BoundaryGradient: planar pieces must be curves");
      double L = 0.0;
      for (std::size_t k = 0; k < g64.size(); ++k) {
        const double u[1] = {g64.nodes[k]};
        L += g64.weights[k] * p.jacobian(u);
      }
      const int panels = std::max(2, static_cast<int>(std::ceil(4.0 * L / eps)));
      const std::size_t masks = std::size_t{1} << p.mirror_coords.size();
      for (int q = 0; q < panels; ++q) {
        for (std::size_t k = 0; k < g8.size(); ++k) {
          const double u[1] = {(q + g8.nodes[k]) / panels};
          p.map(u, x);
          p.normal(u, nu);
          const double w = g8.weights[k] / panels * p.jacobian(u);
          for (std::size_t mask = 0; mask < masks; ++mask) {
            Point pt{x[0], x[1], nu[0], nu[1], w};
            for (std::size_t b = 0; b < p.mirror_coords.size(); ++b) {
              if (!(mask >> b & 1U)) continue;
              const std::size_t c = p.mirror_coords[b];
              (c == 0 ? pt.y0 : pt.y1) *= -1.0;
              (c == 0 ? pt.n0 : pt.n1) *= -1.0;
            }
            buckets_[key(cell(pt.y0), cell(pt.y1))].push_back(pt);
          }
        }
      }
    }
  }

  void gradient(const double* x, double* g) const {
    g[0] = g[1] = 0.0;
    const std::int64_t cx = cell(x[0]), cy = cell(x[1]);
    const double eps = m_.epsilon;
    for (std::int64_t i = cx - 1; i <= cx + 1; ++i) {
      for (std::int64_t j = cy - 1; j <= cy + 1; ++j) {
        const auto it = buckets_.find(key(i, j));
        if (it == buckets_.end()) continue;
        for (const Point& pt : it->second) {
          const double d = std::hypot(x[0] - pt.y0, x[1] - pt.y1);
          if (d >= eps) continue;
          const double k = m_.kernel(d, 2) * pt.w;
          g[0] -= k * pt.n0;
          g[1] -= k * pt.n1;
        }
      }
    }
  }

 private:
  struct Point {
    double y0, y1, n0, n1, w;
  };
  std::int64_t cell(double v) const { return static_cast<std::int64_t>(std::floor(v / m_.epsilon)); }
  static std::uint64_t key(std::int64_t i, std::int64_t j) {
    return (static_cast<std::uint64_t>(i) << 32) ^ (static_cast<std::uint64_t>(j) & 0xffffffffULL);
  }

  MollifierSpec m_;
  std::unordered_map<std::uint64_t, std::vector<Point>> buckets_;
};

// Normalized tensor rule over the unit ball in R^N (N >= 3).
struct BallRule {
  std::vector<double> points;  // N per node
  std::vector<double> weights;
};

BallRule ball_rule(int N) {
  const GaussRule& gr = gauss_legendre01(12);
  const GaussRule& ga = gauss_legendre01(12);
  const int nphi = 24;
  BallRule rule;
  const std::size_t nang = static_cast<std::size_t>(N - 2);
  std::vector<std::size_t> idx(nang, 0);
  std::vector<double> omega(static_cast<std::size_t>(N));
  double total = 0.0;
  for (std::size_t ir = 0; ir < gr.size(); ++ir) {
    const double r = gr.nodes[ir];
    const double wr = gr.weights[ir] * bump(r) * std::pow(r, N - 1);
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      double wa = 1.0, s = 1.0;
      for (std::size_t j = 0; j < nang; ++j) {
        const double th = std::numbers::pi * ga.nodes[idx[j]];
        wa *= std::numbers::pi * ga.weights[idx[j]] * std::pow(std::sin(th), static_cast<double>(N - 2 - j));
        omega[j] = s * std::cos(th);
        s *= std::sin(th);
      }
      for (int ip = 0; ip < nphi; ++ip) {
        const double phi = kTwoPi * (ip + 0.5) / nphi;
        omega[N - 2] = s * std::cos(phi);
        omega[N - 1] = s * std::sin(phi);
        const double w = wr * wa * kTwoPi / nphi;
        for (int c = 0; c < N; ++c) rule.points.push_back(r * omega[c]);
        rule.weights.push_back(w);
        total += w;
      }
      std::size_t j = 0;
      while (j < nang && ++idx[j] == ga.size()) idx[j++] = 0;
      if (j == nang) break;
    }
  }
  for (double& w : rule.weights) w /= total;
  return rule;
}

}  // namespace

GridFunction mollified_indicator(const Shape& shape, const MollifierSpec& m, const GridSpec& grid) {
  m.validate();
  grid.validate();
  const int N = shape.dim();
  if (static_cast<int>(grid.dims.size()) != N)
    throw std::invalid_argument("mollified_indicator: grid dimension does not match the shape");
  const auto [blo, bhi] = shape.bounding_box();
  const auto ghi = grid.hi();
  for (int k = 0; k < N; ++k) {
    if (grid.lo[k] > blo[k] - m.epsilon || ghi[k] < bhi[k] + m.epsilon)
      throw std::invalid_argument("mollified_indicator: grid box must contain the shape with margin epsilon");
  }

  GridFunction probe(grid, std::vector<double>(grid.size(), 0.0), false);
  std::vector<double> values(grid.size());
  const std::size_t NN = static_cast<std::size_t>(N);

  if (N == 2) {
    const PlanarMollifier pm(shape, m.epsilon);
    const BoundaryGradient bg(shape, m);
    std::vector<double> grad(2 * grid.size());
    kernels::grid_map(
        values,
        [&](std::size_t flat, std::span<double> x) {
          probe.node(flat, x);
          if (pm.slack(x.data()) >= m.epsilon) {
            grad[2 * flat] = grad[2 * flat + 1] = 0.0;
            return pm.inside(x.data()) ? 1.0 : 0.0;
          }
          bg.gradient(x.data(), &grad[2 * flat]);
          return pm.value(x.data());
        },
        NN);
    GridFunction u(grid, std::move(values), true);
    u.set_gradient(std::move(grad));
    return u;
  }

  const BallRule rule = ball_rule(N);
  const double eps = m.epsilon;
  kernels::grid_map(
      values,
      [&](std::size_t flat, std::span<double> work) {
        auto x = work.first(NN);
        auto y = work.subspan(NN, NN);
        probe.node(flat, x);
        for (std::size_t k = 0; k < NN; ++k)
          if (x[k] < blo[k] - eps || x[k] > bhi[k] + eps) return 0.0;
        double s = 0.0;
        for (std::size_t q = 0; q < rule.weights.size(); ++q) {
          for (std::size_t k = 0; k < NN; ++k) y[k] = x[k] + eps * rule.points[q * NN + k];
          if (shape.contains(y)) s += rule.weights[q];
        }
        return std::clamp(s, 0.0, 1.0);
      },
      2 * NN);
  return GridFunction(grid, std::move(values), true);
}

}  // namespace monoiso
