#include "monoiso/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace monoiso {
namespace {

constexpr double kG = 7.0;
constexpr double kCoef[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                             771.32342877765313,   -176.61502916214059,   12.507343278686905,
                             -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double series(double z) {
  double s = kCoef[0];
  for (int k = 1; k < 9; ++k) s += kCoef[k] / (z + k);
  return s;
}

}  // namespace

double lanczos_gamma(double x) {
  if (x < 0.5) {
    const double s = std::sin(std::numbers::pi * x);
    if (s == 0.0) throw std::domain_error("lanczos_gamma: pole");
    return std::numbers::pi / (s * lanczos_gamma(1.0 - x));
  }
  const double z = x - 1.0;
  const double t = z + kG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * series(z);
}

double lanczos_lgamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("lanczos_lgamma: x must be positive");
  if (x < 0.5) return std::log(lanczos_gamma(x));
  const double z = x - 1.0;
  const double t = z + kG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(series(z));
}

}  // namespace monoiso
