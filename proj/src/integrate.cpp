#include "monoiso/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "monoiso/gauss.hpp"
#include "monoiso/kernels.hpp"

namespace monoiso {

QuadratureSpec QuadratureSpec::defaults() {
  QuadratureSpec q;
  if (const char* env = std::getenv("MONOISO_QUAD_DEPTH")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0 && v <= 40) q.max_refinement_depth = static_cast<int>(v);
  }
  return q;
}

void QuadratureSpec::validate() const {
  if (nodes_per_axis < 2) throw std::invalid_argument("QuadratureSpec: nodes_per_axis must be >= 2");
  if (max_refinement_depth < 0) throw std::invalid_argument("QuadratureSpec: max_refinement_depth must be >= 0");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw std::invalid_argument("QuadratureSpec: rel_tol must lie in (0,1)");
}

void McSpec::validate() const {
  if (sample_count < 1000) throw std::invalid_argument("McSpec: sample_count must be >= 1000");
}

nlohmann::json to_json(const IntegralEstimate& e) {
  return {{"value", e.value}, {"abs_error_est", e.abs_error_est}, {"evaluations", e.evaluations}};
}

namespace {

struct AxisPlan {
  std::vector<double> breaks;  // sorted, breaks.front() == 0, breaks.back() == 1
  double alpha = 0.0;          // power of u at 0
  double beta = 0.0;           // power of 1-u at 1
};

kernels::AxisRule build_axis_rule(const AxisPlan& ax, int n) {
  kernels::AxisRule rule;
  for (std::size_t k = 0; k + 1 < ax.breaks.size(); ++k) {
    const double c = ax.breaks[k], d = ax.breaks[k + 1];
    if (c == 0.0 && ax.alpha != 0.0) {
      // int_0^d u^alpha g(u) du with the integrand f = u^alpha g evaluated directly
      const GaussRule& g = gauss_weighted_nodes(n, ax.alpha);
      for (std::size_t j = 0; j < g.size(); ++j) {
        const double s = g.nodes[j];
        rule.nodes.push_back(d * s);
        rule.weights.push_back(d * g.weights[j] / std::pow(s, ax.alpha));
      }
    } else if (d == 1.0 && ax.beta != 0.0) {
      const GaussRule& g = gauss_weighted_nodes(n, ax.beta);
      const double len = 1.0 - c;
      for (std::size_t j = g.size(); j-- > 0;) {
        const double s = g.nodes[j];
        rule.nodes.push_back(1.0 - len * s);
        rule.weights.push_back(len * g.weights[j] / std::pow(s, ax.beta));
      }
    } else {
      const GaussRule& g = gauss_legendre01(n);
      for (std::size_t j = 0; j < g.size(); ++j) {
        rule.nodes.push_back(c + (d - c) * g.nodes[j]);
        rule.weights.push_back((d - c) * g.weights[j]);
      }
    }
  }
  return rule;
}

void bisect(AxisPlan& ax) {
  std::vector<double> b;
  for (std::size_t k = 0; k + 1 < ax.breaks.size(); ++k) {
    b.push_back(ax.breaks[k]);
    b.push_back(0.5 * (ax.breaks[k] + ax.breaks[k + 1]));
  }
  b.push_back(1.0);
  ax.breaks = std::move(b);
}

}  // namespace

IntegralEstimate integrate_param(const Parametrization& p, const ExponentVector& E, const QuadratureSpec& q,
                                 Exec exec) {
  q.validate();
  if (p.empty) return {};
  if (E.size() != static_cast<std::size_t>(p.ambient))
    throw std::invalid_argument("integrate_param: exponent length does not match the ambient dimension");
  const std::size_t d = p.dim();
  const std::size_t N = static_cast<std::size_t>(p.ambient);
  const double mult = p.multiplicity();

  const kernels::PointFn f = [&](std::span<const double> u, std::span<double> work) {
    p.map(u, work.first(N));
    return mult * eval_weight(work.first(N), E) * p.jacobian(u);
  };

  if (d == 0) {
    std::vector<double> work(N);
    IntegralEstimate out;
    out.value = f({}, work);
    out.evaluations = 1;
    return out;
  }

  std::vector<AxisPlan> plan(d);
  for (std::size_t j = 0; j < d; ++j) {
    plan[j].alpha = p.axes[j].at_lo.eval(E);
    plan[j].beta = p.axes[j].at_hi.eval(E);
    if (plan[j].alpha != 0.0 && plan[j].beta != 0.0)
      plan[j].breaks = {0.0, 0.5, 1.0};
    else
      plan[j].breaks = {0.0, 1.0};
  }

  const int n = q.nodes_per_axis;
  auto run = [&](const std::vector<kernels::AxisRule>& rules) {
    return exec == Exec::parallel ? kernels::tensor_sum(rules, f, N) : kernels::tensor_sum_serial(rules, f, N);
  };

  IntegralEstimate out;
  for (int depth = 0;; ++depth) {
    std::vector<kernels::AxisRule> coarse(d), fine(d);
    for (std::size_t j = 0; j < d; ++j) {
      coarse[j] = build_axis_rule(plan[j], n);
      fine[j] = build_axis_rule(plan[j], 2 * n);
    }
    const kernels::TensorSum sc = run(coarse);
    const kernels::TensorSum sf = run(fine);
    out.evaluations += sc.evaluations + sf.evaluations;

    const double diff = std::fabs(sf.sum - sc.sum);
    const double floor = 32.0 * std::numeric_limits<double>::epsilon() * sf.abs_sum;
    out.value = sf.sum;
    out.abs_error_est = std::max(diff, floor);
    if (!std::isfinite(out.value)) throw NumericalError("integrate_param: non-finite integrand");
    if (diff <= std::max(q.rel_tol * std::fabs(sf.sum), floor)) {
      out.converged = true;
      return out;
    }
    if (depth >= q.max_refinement_depth) {
      out.converged = false;
      return out;
    }

    std::size_t worst = 0;
    if (d > 1) {
      double worst_diff = -1.0;
      for (std::size_t j = 0; j < d; ++j) {
        std::vector<kernels::AxisRule> mixed = fine;
        mixed[j] = coarse[j];
        const kernels::TensorSum sm = run(mixed);
        out.evaluations += sm.evaluations;
        const double dj = std::fabs(sm.sum - sf.sum);
        if (dj > worst_diff) {
          worst_diff = dj;
          worst = j;
        }
      }
    }
    bisect(plan[worst]);
  }
}

IntegralEstimate weighted_volume(const Shape& shape, const ExponentVector& B, const QuadratureSpec& q, Exec exec) {
  if (B.size() != static_cast<std::size_t>(shape.dim()))
    throw std::invalid_argument("weighted_volume: exponent length does not match the shape dimension");
  return integrate_param(shape.volume_param(), B, q, exec);
}

std::vector<PieceEstimate> weighted_surface_pieces(const Shape& shape, const ExponentVector& A,
                                                   const QuadratureSpec& q, Exec exec) {
  if (A.size() != static_cast<std::size_t>(shape.dim()))
    throw std::invalid_argument("weighted_surface: exponent length does not match the shape dimension");
  std::vector<PieceEstimate> out;
  for (const BoundaryPiece& piece : shape.boundary_pieces()) {
    PieceEstimate pe;
    pe.label = piece.label;
    pe.vanishing = piece.vanishes_for(A);
    if (!pe.vanishing) pe.estimate = integrate_param(piece.param, A, q, exec);
    out.push_back(std::move(pe));
  }
  return out;
}

IntegralEstimate weighted_surface(const Shape& shape, const ExponentVector& A, const QuadratureSpec& q, Exec exec) {
  IntegralEstimate total;
  for (const PieceEstimate& pe : weighted_surface_pieces(shape, A, q, exec)) {
    total.value += pe.estimate.value;
    total.abs_error_est += pe.estimate.abs_error_est;
    total.evaluations += pe.estimate.evaluations;
    total.converged = total.converged && pe.estimate.converged;
  }
  return total;
}

namespace {

// Sampler for the density |x|^b on [lo, hi] (lo may be negative).
struct PowerSampler {
  double b1 = 1.0;                   // b + 1
  double neg_lo = 0.0, neg_hi = 0.0;  // magnitude range on the negative side
  double pos_lo = 0.0, pos_hi = 0.0;
  double neg_mass = 0.0, pos_mass = 0.0;

  PowerSampler(double lo, double hi, double b) : b1(b + 1.0) {
    if (lo < 0.0) {
      neg_lo = std::max(-hi, 0.0);
      neg_hi = -lo;
      neg_mass = (std::pow(neg_hi, b1) - std::pow(neg_lo, b1)) / b1;
    }
    if (hi > 0.0) {
      pos_lo = std::max(lo, 0.0);
      pos_hi = hi;
      pos_mass = (std::pow(pos_hi, b1) - std::pow(pos_lo, b1)) / b1;
    }
  }
  double mass() const { return neg_mass + pos_mass; }
  double draw(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double total = mass();
    const bool neg = U(rng) * total < neg_mass;
    const double a = neg ? neg_lo : pos_lo, c = neg ? neg_hi : pos_hi;
    const double pa = std::pow(a, b1), pc = std::pow(c, b1);
    const double m = std::pow(pa + U(rng) * (pc - pa), 1.0 / b1);
    return neg ? -m : m;
  }
};

IntegralEstimate finish_mc(const kernels::McSum& s) {
  IntegralEstimate e;
  const double n = static_cast<double>(s.samples);
  e.value = s.sum / n;
  const double var = std::max(s.sum_sq / n - e.value * e.value, 0.0);
  // Zero-variance estimators (e.g. a box sampled from its own weight) still
  // carry the rounding error of the accumulated sum.
  const double rounding = 16.0 * std::numeric_limits<double>::epsilon() * std::sqrt(n) * std::fabs(e.value);
  e.abs_error_est = std::sqrt(var / (n - 1.0)) + rounding;
  e.evaluations = s.samples;
  return e;
}

}  // namespace

IntegralEstimate mc_volume(const Shape& shape, const ExponentVector& B, const McSpec& mc, Exec exec) {
  mc.validate();
  const std::size_t N = static_cast<std::size_t>(shape.dim());
  if (B.size() != N) throw std::invalid_argument("mc_volume: exponent length does not match the shape dimension");
  const auto [lo, hi] = shape.bounding_box();
  std::vector<PowerSampler> samplers;
  double Z = 1.0;
  for (std::size_t j = 0; j < N; ++j) {
    samplers.emplace_back(lo[j], hi[j], B[j]);
    Z *= samplers.back().mass();
  }
  if (!(Z > 0.0)) return {};
  const kernels::SampleFn draw = [&](std::mt19937_64& rng, std::span<double> x) {
    for (std::size_t j = 0; j < N; ++j) x[j] = samplers[j].draw(rng);
    return shape.contains(x) ? Z : 0.0;
  };
  const auto s = exec == Exec::parallel ? kernels::mc_sum(mc.seed, mc.sample_count, draw, N)
                                        : kernels::mc_sum_serial(mc.seed, mc.sample_count, draw, N);
  return finish_mc(s);
}

IntegralEstimate mc_surface(const Shape& shape, const ExponentVector& A, const McSpec& mc, Exec exec) {
  mc.validate();
  const std::size_t N = static_cast<std::size_t>(shape.dim());
  if (A.size() != N) throw std::invalid_argument("mc_surface: exponent length does not match the shape dimension");
  IntegralEstimate total;
  double var = 0.0;
  std::uint64_t piece_index = 0;
  for (const BoundaryPiece& piece : shape.boundary_pieces()) {
    ++piece_index;
    if (piece.param.empty || piece.vanishes_for(A)) continue;
    const Parametrization& p = piece.param;
    const std::size_t d = p.dim();
    const double mult = p.multiplicity();
    const kernels::SampleFn draw = [&](std::mt19937_64& rng, std::span<double> work) {
      std::uniform_real_distribution<double> U(0.0, 1.0);
      auto u = work.subspan(N, d);
      for (double& v : u) v = U(rng);
      p.map(u, work.first(N));
      return mult * eval_weight(work.first(N), A) * p.jacobian(u);
    };
    const std::uint64_t seed = kernels::batch_seed(mc.seed, 0xA5A5A5A5ULL + piece_index);
    const auto s = exec == Exec::parallel ? kernels::mc_sum(seed, mc.sample_count, draw, N + d)
                                          : kernels::mc_sum_serial(seed, mc.sample_count, draw, N + d);
    const IntegralEstimate e = finish_mc(s);
    total.value += e.value;
    var += e.abs_error_est * e.abs_error_est;
    total.evaluations += e.evaluations;
  }
  total.abs_error_est = std::sqrt(var);
  return total;
}

}  // namespace monoiso
