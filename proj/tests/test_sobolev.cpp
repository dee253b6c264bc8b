#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "doctest.h"
#include "monoiso/sobolev.hpp"

using namespace monoiso;

namespace {

const QuadratureSpec q = QuadratureSpec{};

// Brute-force midpoint value of rho_eps * chi_shape at x (planar).
double brute_mollified(const Shape& s, const MollifierSpec& m, double x, double y, int n) {
  double sum = 0.0;
  const double e = m.epsilon, h = 2 * e / n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double dx = -e + (i + 0.5) * h, dy = -e + (j + 0.5) * h;
      const std::vector<double> p{x - dx, y - dy};
      if (s.contains(p)) sum += m.kernel(std::hypot(dx, dy), 2) * h * h;
    }
  return sum;
}

}  // namespace

TEST_CASE("best constants against independent values") {
  CHECK(best_constant_p1(ExponentVector{0, 0}) == doctest::Approx(3.54490770181103205).epsilon(1e-13));
  CHECK(best_constant_p1(ExponentVector{1, 0}) == doctest::Approx(2.62074139420889661).epsilon(1e-13));
  CHECK(best_constant_p1(ExponentVector{1, 1}) == doctest::Approx(2.37841423000544213).epsilon(1e-13));
  CHECK(best_constant_p1(ExponentVector{2, 3}) == doctest::Approx(3.97521842489468910).epsilon(1e-13));
  CHECK(best_constant_p1(ExponentVector{0.5, 1.5, 0}) == doctest::Approx(3.41254767574422312).epsilon(1e-13));
  CHECK(best_constant(2.0, ExponentVector{0, 0, 0}) == doctest::Approx(2.30940107675850280).epsilon(1e-13));
  CHECK(best_constant(1.5, ExponentVector{1, 1}) == doctest::Approx(0.373364849797597442).epsilon(1e-13));
  CHECK_THROWS(best_constant(1.0, ExponentVector{1, 1}));
  CHECK_THROWS(best_constant(4.0, ExponentVector{1, 1}));
}

TEST_CASE("property: C_1 equals the ball constant") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int N = 2 + trial % 5;
    std::vector<double> a(N);
    for (double& v : a) v = rng() % 4 == 0 ? 0.0 : u(rng);
    const ExponentVector A(a);
    CHECK(best_constant_p1(A) == doctest::Approx(ball_constant(A)).epsilon(1e-12));
  }
}

TEST_CASE("mollifier kernel has unit mass") {
  for (int N = 1; N <= 6; ++N) {
    const MollifierSpec m{0.3};
    // |S^{N-1}| int_0^eps rho(r) r^{N-1} dr, composite Simpson.
    const double surf = 2 * std::pow(M_PI, N / 2.0) / std::tgamma(N / 2.0);
    const int n = 20000;
    const double h = m.epsilon / n;
    double s = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double r = k * h, w = (k == 0 || k == n) ? 1 : (k % 2 ? 4 : 2);
      s += w * m.kernel(r, N) * std::pow(r, N - 1);
    }
    CHECK(surf * s * h / 3 == doctest::Approx(1.0).epsilon(1e-8));
  }
  CHECK(MollifierSpec{0.1}.kernel(0.1, 2) == 0.0);
  CHECK_THROWS(MollifierSpec{0.0}.validate());
}

TEST_CASE("grid construction places coordinate planes on nodes") {
  const std::vector<double> lo{-0.23, -0.11}, hi{1.07, 0.5};
  const GridSpec g = GridSpec::covering(lo, hi, 0.05);
  const auto ghi = g.hi();
  for (int k = 0; k < 2; ++k) {
    CHECK(g.lo[k] <= lo[k]);
    CHECK(ghi[k] >= hi[k]);
    const double zero_index = -g.lo[k] / g.h;
    CHECK(zero_index == doctest::Approx(std::round(zero_index)).epsilon(1e-12));
  }
  CHECK_THROWS(GridSpec::covering(lo, lo, 0.05));
}

TEST_CASE("finite-difference gradient is exact for linear functions") {
  const GridSpec g = GridSpec::covering(std::vector<double>{0, 0}, std::vector<double>{1, 1}, 0.1);
  const GridFunction u = GridFunction::sample(
      g, [](std::span<const double> x) { return 3 * x[0] - 4 * x[1]; }, false);
  for (double v : u.gradient_norm()) CHECK(v == doctest::Approx(5.0).epsilon(1e-10));
  CHECK_FALSE(u.has_gradient());
  CHECK_THROWS(functional_quotient(u, WeightPair(ExponentVector{0, 0}, ExponentVector{0, 0})));
}

TEST_CASE("compact support is checked at construction") {
  const GridSpec g = GridSpec::covering(std::vector<double>{-1, -1}, std::vector<double>{1, 1}, 0.1);
  CHECK_THROWS(GridFunction::sample(g, [](std::span<const double>) { return 1.0; }, true));
}

TEST_CASE("grid files round trip") {
  const GridSpec g = GridSpec::covering(std::vector<double>{-0.5, 0.0, 0.2}, std::vector<double>{0.5, 0.3, 0.6}, 0.1);
  const GridFunction u = GridFunction::sample(
      g, [](std::span<const double> x) { return std::sin(x[0]) + x[1] * x[2]; }, false);
  const auto path = (std::filesystem::temp_directory_path() / "monoiso_grid_roundtrip.bin").string();
  u.save(path);
  const GridFunction v = GridFunction::load(path);
  CHECK(v.grid().dims == u.grid().dims);
  CHECK(v.grid().lo == u.grid().lo);
  CHECK(v.grid().h == u.grid().h);
  CHECK(std::vector<double>(v.values().begin(), v.values().end()) ==
        std::vector<double>(u.values().begin(), u.values().end()));
  std::ifstream side(path + ".json");
  const auto j = nlohmann::json::parse(side);
  CHECK(j["N"] == 3);
  CHECK(j["dtype"] == "float64");
  CHECK(std::filesystem::file_size(path) == j["header_bytes"].get<std::size_t>() + 8 * u.size());
  {
    std::ofstream bad(path, std::ios::binary | std::ios::trunc);
    bad << "XXXX";
  }
  CHECK_THROWS(GridFunction::load(path));
  std::filesystem::remove(path);
  std::filesystem::remove(path + ".json");
}

TEST_CASE("mollified indicator matches brute-force convolution") {
  const Shape qd = Shape::orthant_ball(2, 1.0);
  const MollifierSpec m{0.1};
  const GridSpec g = mollifier_grid(qd, m.epsilon, 5);
  const GridFunction u = mollified_indicator(qd, m, g);
  CHECK(u.compact_support());
  CHECK(u.has_gradient());
  std::mt19937_64 rng(52);
  std::vector<double> x(2);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t flat = rng() % u.size();
    u.node(flat, x);
    const double bf = brute_mollified(qd, m, x[0], x[1], 400);
    CHECK(u.values()[flat] == doctest::Approx(bf).epsilon(2e-3).scale(1.0));
    CHECK(u.values()[flat] >= -1e-15);
    CHECK(u.values()[flat] <= 1.0 + 1e-12);
  }
  const std::vector<double> far{0.5, 0.5};
  CHECK_THROWS(mollified_indicator(qd, m, GridSpec::covering(far, std::vector<double>{1.0, 1.0}, 0.01)));
}

TEST_CASE("mollified volumes and perimeters converge to the set values") {
  const Shape qd = Shape::orthant_ball(2, 1.0);
  const WeightPair w(ExponentVector{1, 0}, ExponentVector{1, 1});
  const std::vector<double> eps{0.1, 0.05, 0.025};
  const MollificationStudy s = mollification_study(qd, w, eps, 10, q);
  CHECK(s.volume_rate.exponent > 1.5);
  CHECK(s.perimeter_rate.exponent > 0.9);
  for (const auto& p : s.points) {
    CHECK(std::fabs(p.volume_error) < 0.1 * p.epsilon);
    CHECK(std::fabs(p.perimeter_error) < 0.1 * p.epsilon);
  }
  CHECK(to_json(s)["points"].size() == 3);
}

TEST_CASE("functional quotient of u_eps approaches the set quotient and stays above the ball constant") {
  const Shape qd = Shape::orthant_ball(2, 1.0);
  const WeightPair w(ExponentVector{0, 0}, ExponentVector{0, 0});
  const double target = 4.02921218509654118;
  double prev_gap = INFINITY;
  for (double eps : {0.1, 0.05, 0.025}) {
    const GridFunction u = mollified_indicator(qd, MollifierSpec{eps}, mollifier_grid(qd, eps, 10));
    const double fq = functional_quotient(u, w);
    CHECK(fq >= ball_constant(w.A));
    const double gap = std::fabs(fq - target);
    CHECK(gap < prev_gap);
    CHECK(gap < 2 * eps);
    prev_gap = gap;
  }
}

TEST_CASE("one-dimensional inequality on random piecewise-linear functions") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = 0.2 + 3.0 * u(rng), b = a - 1.0;
    const int n = 3 + static_cast<int>(rng() % 10);
    const double lo = -2.0 * u(rng) - 0.01, hi = 2.0 * u(rng) + 0.01;
    std::vector<double> y(n), v(n, 0.0);
    for (int k = 0; k < n; ++k) y[k] = lo + (hi - lo) * k / (n - 1);
    for (int k = 1; k + 1 < n; ++k) v[k] = 3.0 * u(rng);
    const IbpResult r = ibp_inequality_check(y, v, a, b);
    CHECK(r.holds);
    if (trial < 50 && b >= 0.0) {
      // Independent midpoint evaluation of both sides.
      const int m = 200000;
      double lhs = 0.0, rhs = 0.0;
      for (int k = 0; k < m; ++k) {
        const double t = lo + (hi - lo) * (k + 0.5) / m;
        const std::size_t s = std::min<std::size_t>(n - 2, static_cast<std::size_t>((t - lo) / (hi - lo) * (n - 1)));
        const double slope = (v[s + 1] - v[s]) / (y[s + 1] - y[s]);
        const double val = v[s] + slope * (t - y[s]);
        lhs += std::pow(std::fabs(t), b) * val;
        rhs += std::pow(std::fabs(t), a) * std::fabs(slope) / a;
      }
      lhs *= (hi - lo) / m;
      rhs *= (hi - lo) / m;
      CHECK(r.lhs == doctest::Approx(lhs).epsilon(1e-4));
      CHECK(r.rhs == doctest::Approx(rhs).epsilon(1e-4));
    }
  }
}

TEST_CASE("the tent function attains equality for a = 1") {
  const std::vector<double> y{-1, 0, 1}, v{0, 1, 0};
  const IbpResult r = ibp_inequality_check(y, v, 1.0, 0.0);
  CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::fabs(r.lhs - r.rhs) <= 1e-8 * r.rhs);
  CHECK_THROWS_AS(ibp_inequality_check(y, v, 1.0, 0.5), HypothesisError);
  const std::vector<double> open{1, 1, 0};
  CHECK_THROWS(ibp_inequality_check(y, open, 1.0, 0.0));
}

TEST_CASE("coarea chain holds for mollified indicators") {
  const Shape qd = Shape::orthant_ball(2, 1.0);
  for (const auto& w : {WeightPair(ExponentVector{0, 0}, ExponentVector{0, 0}),
                        WeightPair(ExponentVector{1, 0}, ExponentVector{1, 0}),
                        WeightPair(ExponentVector{1, 1}, ExponentVector{0.5, 1})}) {
    const GridFunction u = mollified_indicator(qd, MollifierSpec{0.1}, mollifier_grid(qd, 0.1, 10));
    const CoareaResult c = coarea_lower_bound_check(u, w, 48);
    INFO("A=" << format_exponents(w.A) << " B=" << format_exponents(w.B));
    CHECK(c.holds);
    CHECK(c.levels == 48);
    CHECK(c.gradient_integral >= c.level_integral * (1 - 1e-2));
    CHECK(c.level_integral >= c.norm_term * (1 - 1e-2));
    CHECK(c.c_hat > 0.0);
  }
  const GridFunction u = mollified_indicator(qd, MollifierSpec{0.1}, mollifier_grid(qd, 0.1, 5));
  CHECK_THROWS_AS(coarea_lower_bound_check(u, WeightPair(ExponentVector{2, 0}, ExponentVector{0, 0}), 16),
                  HypothesisError);
}

TEST_CASE("three-dimensional mollification integrates to the set volume") {
  const Shape ob = Shape::orthant_ball(3, 1.0);
  const double eps = 0.2;
  const GridFunction u = mollified_indicator(ob, MollifierSpec{eps}, mollifier_grid(ob, eps, 4));
  const auto w = u.quadrature_weights(ExponentVector{0, 0, 0});
  double vol = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) vol += w[k] * u.values()[k];
  CHECK(vol == doctest::Approx(M_PI / 6).epsilon(2e-2));
}

TEST_CASE("mollified indicators respect the lower bound of the a - b = 1 inequality") {
  // A = (1, 0), B = (0, 0): sigma = 1 and the sharp constant is b_1 + 1 = 1.
  const WeightPair w(ExponentVector{1, 0}, ExponentVector{0, 0});
  const double c = theorem2_constant(w, 0);
  CHECK(c == doctest::Approx(1.0));
  const std::vector<Shape> shapes{Shape::orthant_ball(2, 1.0), Shape::box({0.0, 0.2}, {1.0, 0.7}),
                                  Shape::cone_slab(2, 0, 0.3, 1.0), Shape::translated_ball(2, 0, 3.0, 1.0)};
  for (const Shape& s : shapes) {
    for (double eps : {0.1, 0.05}) {
      const GridFunction u = mollified_indicator(s, MollifierSpec{eps}, mollifier_grid(s, eps, 10));
      INFO(s.to_json().dump() << " eps=" << eps);
      CHECK(functional_quotient(u, w) >= c);
    }
  }
}

TEST_CASE("functional quotients of mollified boxes and cone slabs approach the set quotient") {
  const WeightPair w(ExponentVector{0, 0}, ExponentVector{0, 0});
  for (const Shape& s : {Shape::box({0.0, 0.0}, {1.0, 0.5}), Shape::cone_slab(2, 0, 0.5, 1.0)}) {
    const double target = quotient(s, w, q).quotient;
    double prev_gap = INFINITY;
    for (double eps : {0.1, 0.05, 0.025}) {
      const GridFunction u = mollified_indicator(s, MollifierSpec{eps}, mollifier_grid(s, eps, 10));
      const double gap = std::fabs(functional_quotient(u, w) - target);
      INFO(s.to_json().dump() << " eps=" << eps << " gap=" << gap);
      CHECK(gap < prev_gap);
      prev_gap = gap;
    }
    CHECK(prev_gap < 0.05 * target);
  }
}
