#include <cmath>
#include <vector>

#ifdef MONOISO_HAVE_OPENMP
#include <omp.h>
#endif

#include "doctest.h"
#include "monoiso/gauss.hpp"
#include "monoiso/kernels.hpp"

using namespace monoiso;
using namespace monoiso::kernels;

namespace {

AxisRule legendre(int n) {
  const auto& g = gauss_legendre01(n);
  return {g.nodes, g.weights};
}

}  // namespace

TEST_CASE("tensor_sum matches the serial reference and the exact integral") {
  const std::vector<AxisRule> axes{legendre(9), legendre(7), legendre(5)};
  const PointFn f = [](std::span<const double> u, std::span<double>) {
    return std::exp(u[0]) * u[1] * u[1] * std::cos(u[2]);
  };
  const TensorSum par = tensor_sum(axes, f, 0);
  const TensorSum ser = tensor_sum_serial(axes, f, 0);
  // The parallel sum is block-ordered, the serial one sequential.
  CHECK(par.sum == doctest::Approx(ser.sum).epsilon(1e-14));
  CHECK(par.evaluations == 9u * 7u * 5u);
  CHECK(ser.evaluations == par.evaluations);
  CHECK(par.sum == doctest::Approx((std::exp(1.0) - 1.0) / 3.0 * std::sin(1.0)).epsilon(1e-12));
  CHECK(par.abs_sum >= std::fabs(par.sum));
}

TEST_CASE("mc_sum is independent of the execution path and reproducible") {
  const SampleFn draw = [](std::mt19937_64& rng, std::span<double>) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double x = u(rng);
    return x * x;
  };
  const std::size_t n = 3 * mc_batch_size + 123;
  const McSum a = mc_sum(7, n, draw, 0);
  const McSum b = mc_sum_serial(7, n, draw, 0);
  const McSum c = mc_sum(7, n, draw, 0);
  CHECK(a.sum == b.sum);
  CHECK(a.sum_sq == b.sum_sq);
  CHECK(a.sum == c.sum);
  CHECK(a.samples == n);
  const double mean = a.sum / n;
  const double se = std::sqrt((a.sum_sq / n - mean * mean) / n);
  CHECK(std::fabs(mean - 1.0 / 3.0) < 5.0 * se);
  CHECK(mc_sum(8, n, draw, 0).sum != a.sum);
}

TEST_CASE("batch seeds differ across batches and seeds") {
  CHECK(batch_seed(1, 0) != batch_seed(1, 1));
  CHECK(batch_seed(1, 0) != batch_seed(2, 0));
  CHECK(batch_seed(5, 9) == batch_seed(5, 9));
}

TEST_CASE("grid_map and weighted_grid_sum agree with serial versions") {
  std::vector<double> p(10007), s(10007);
  const IndexFn f = [](std::size_t i, std::span<double> work) {
    work[0] = static_cast<double>(i);
    return std::sin(work[0]);
  };
  grid_map(p, f, 1);
  grid_map_serial(s, f, 1);
  CHECK(p == s);
  std::vector<double> w(p.size(), 0.5);
  const auto g = [](double v) { return v * v; };
  CHECK(weighted_grid_sum(p, w, g) == doctest::Approx(weighted_grid_sum_serial(s, w, g)).epsilon(1e-14));
}

#ifdef MONOISO_HAVE_OPENMP
TEST_CASE("parallel reductions do not depend on the thread count") {
  const std::vector<AxisRule> axes{legendre(40), legendre(40), legendre(40)};
  const PointFn f = [](std::span<const double> u, std::span<double>) { return std::sin(u[0] + 2 * u[1] - u[2]); };
  const SampleFn draw = [](std::mt19937_64& rng, std::span<double>) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  };
  std::vector<double> vals(50000), w(50000, 1e-3);
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = std::cos(0.01 * static_cast<double>(i));
  const auto g = [](double v) { return v * v; };

  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const double t1 = tensor_sum(axes, f, 0).sum;
  const double m1 = mc_sum(3, 100000, draw, 0).sum;
  const double w1 = weighted_grid_sum(vals, w, g);
  omp_set_num_threads(4);
  CHECK(tensor_sum(axes, f, 0).sum == t1);
  CHECK(mc_sum(3, 100000, draw, 0).sum == m1);
  CHECK(weighted_grid_sum(vals, w, g) == w1);
  omp_set_num_threads(saved);
}
#endif

TEST_CASE("max_threads is positive") { CHECK(max_threads() >= 1); }
