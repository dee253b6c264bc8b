#include "monoiso/gauss.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>

namespace monoiso {
namespace {

// Orthonormal recurrence for x^alpha on [0,1]:
//   sqrt(off[k+1]) p_{k+1} = (x - diag[k]) p_k - sqrt(off[k]) p_{k-1}
// obtained from the Jacobi (a = 0, b = alpha) coefficients on [-1,1] under x = (1+t)/2.
struct Recurrence {
  std::vector<double> diag;  // size n
  std::vector<double> off;   // off[k] = sqrt(beta_k), k = 1..n (off[0] unused)
  double mu0 = 1.0;
};

Recurrence shifted_jacobi(int n, double alpha) {
  const double a = 0.0;
  const double b = alpha;
  Recurrence rec;
  rec.diag.resize(n);
  rec.off.assign(n + 1, 0.0);
  rec.mu0 = 1.0 / (alpha + 1.0);
  for (int k = 0; k < n; ++k) {
    double d;
    if (k == 0) {
      d = (b - a) / (a + b + 2.0);
    } else {
      const double s = 2.0 * k + a + b;
      d = (b * b - a * a) / (s * (s + 2.0));
    }
    rec.diag[k] = 0.5 * (d + 1.0);
  }
  for (int k = 1; k <= n; ++k) {
    double beta;
    if (k == 1) {
      const double s = 2.0 + a + b;
      beta = 4.0 * (1.0 + a) * (1.0 + b) / (s * s * (s + 1.0));
    } else {
      const double s = 2.0 * k + a + b;
      beta = 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
    }
    rec.off[k] = 0.5 * std::sqrt(beta);
  }
  return rec;
}

// Evaluates p_n and p_n' (orthonormal) at x; also accumulates sum_{k<n} p_k^2.
struct PolyEval {
  double pn, dpn, christoffel;
};

PolyEval eval_orthonormal(const Recurrence& rec, int n, double x) {
  double p_prev = 0.0, dp_prev = 0.0;
  double p = 1.0 / std::sqrt(rec.mu0), dp = 0.0;
  double sum_sq = 0.0;
  for (int k = 0; k < n; ++k) {
    sum_sq += p * p;
    const double off_k = k > 0 ? rec.off[k] : 0.0;
    const double p_next = ((x - rec.diag[k]) * p - off_k * p_prev) / rec.off[k + 1];
    const double dp_next = (p + (x - rec.diag[k]) * dp - off_k * dp_prev) / rec.off[k + 1];
    p_prev = p;
    dp_prev = dp;
    p = p_next;
    dp = dp_next;
  }
  return {p, dp, sum_sq};
}

GaussRule build_rule(int n, double alpha) {
  const Recurrence rec = shifted_jacobi(n, alpha);

  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) diag[k] = rec.diag[k];
  for (int k = 0; k + 1 < n; ++k) sub[k] = rec.off[k + 1];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("gauss_weighted_nodes: tridiagonal eigensolver failed");
  }

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Near x = 0 the recurrence is accurate only to a fraction of the node spacing (~1/n^2).
  const double floor_scale = 1.0 / (static_cast<double>(n) * n);
  for (int j = 0; j < n; ++j) {
    double x = solver.eigenvalues()[j];
    const double eps = std::numeric_limits<double>::epsilon();
    const double scale = std::max(std::fabs(x), floor_scale);
    bool converged = false;
    double best_x = x, best_step = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 60; ++it) {
      const PolyEval e = eval_orthonormal(rec, n, x);
      if (e.dpn == 0.0 || !std::isfinite(e.dpn)) break;
      const double dx = e.pn / e.dpn;
      if (std::fabs(dx) < best_step) {
        best_step = std::fabs(dx);
        best_x = x;
      }
      x -= dx;
      if (std::fabs(dx) <= 4.0 * eps * scale) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      // Newton stalls at the rounding level of the recurrence, which grows like n ulps.
      x = best_x;
      converged = best_step <= 16.0 * n * eps * scale;
    }
    if (!converged) {
      throw NumericalError("gauss_weighted_nodes: recurrence did not converge for n=" + std::to_string(n) +
                           ", alpha=" + std::to_string(alpha));
    }
    rule.nodes[j] = x;
    rule.weights[j] = 1.0 / eval_orthonormal(rec, n, x).christoffel;
  }

  for (int j = 0; j < n; ++j) {
    const bool ordered = j == 0 || rule.nodes[j] > rule.nodes[j - 1];
    if (!(rule.nodes[j] > 0.0 && rule.nodes[j] < 1.0) || !ordered || !(rule.weights[j] > 0.0) ||
        !std::isfinite(rule.weights[j])) {
      throw NumericalError("gauss_weighted_nodes: degenerate rule for n=" + std::to_string(n) +
                           ", alpha=" + std::to_string(alpha));
    }
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_weighted_nodes(int n, double alpha) {
  if (n < 1) throw std::invalid_argument("gauss_weighted_nodes: n must be >= 1");
  if (!(alpha > -1.0) || !std::isfinite(alpha)) throw std::invalid_argument("gauss_weighted_nodes: alpha must be > -1");

  static std::mutex mutex;
  static std::map<std::pair<int, double>, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n, alpha}];
  if (!slot) slot = std::make_unique<GaussRule>(build_rule(n, alpha));
  return *slot;
}

}  // namespace monoiso
