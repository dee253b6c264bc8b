#pragma once

namespace monoiso {

/// Gamma function by the Lanczos approximation (g = 7, 9 terms) with the
/// reflection formula below 1/2. Relative accuracy about 1e-15 on the
/// positive axis.
double lanczos_gamma(double x);
double lanczos_lgamma(double x);  ///< log|Gamma(x)| for x > 0

}  // namespace monoiso
