#pragma once

#include <stdexcept>
#include <vector>

namespace monoiso {

/// Thrown when a numerical routine fails to reach its working accuracy.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss rule on [0,1] for the weight x^alpha (alpha > -1): exact for
/// int_0^1 x^alpha p(x) dx with deg p <= 2n - 1.
///
/// Nodes come from the Golub-Welsch eigenproblem of the shifted Jacobi
/// recurrence and are polished by Newton on the same recurrence; weights
/// use the Christoffel formula. Rules are cached per (n, alpha).
/// Throws NumericalError if the polish does not converge.
const GaussRule& gauss_weighted_nodes(int n, double alpha);

/// Gauss-Legendre on [0,1] (alpha = 0).
inline const GaussRule& gauss_legendre01(int n) { return gauss_weighted_nodes(n, 0.0); }

}  // namespace monoiso
