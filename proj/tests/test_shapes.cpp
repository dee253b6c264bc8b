#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "monoiso/shapes.hpp"

using namespace monoiso;

namespace {

std::vector<Shape> corpus() {
  return {Shape::translated_ball(2, 0, 3.0, 1.0),   Shape::translated_ball(3, 1, 5.0, 1.5),
          Shape::cone_slab(2, 0, 0.3, 1.0),         Shape::cone_slab(3, 0, 0.2, 2.0),
          Shape::cone_slab(4, 2, 0.5, 1.0),         Shape::orthant_ball(2, 1.0),
          Shape::orthant_ball(3, 0.7),              Shape::box({0.0, 0.5}, {1.0, 2.0}),
          Shape::box({0.2, 0.0, 0.1}, {1.0, 1.0, 0.4})};
}

// sqrt(det(J^T J)) of the map by central differences.
double gram_jacobian(const Parametrization& p, const std::vector<double>& u) {
  const std::size_t d = p.dim();
  const double h = 1e-6;
  Eigen::MatrixXd J(p.ambient, d);
  std::vector<double> up = u, um = u, xp(p.ambient), xm(p.ambient);
  for (std::size_t j = 0; j < d; ++j) {
    up = u;
    um = u;
    up[j] += h;
    um[j] -= h;
    p.map(up, xp);
    p.map(um, xm);
    for (int r = 0; r < p.ambient; ++r) J(r, j) = (xp[r] - xm[r]) / (2 * h);
  }
  return std::sqrt(std::max(0.0, (J.transpose() * J).determinant()));
}

}  // namespace

TEST_CASE("parse_shape grammar") {
  const Shape c = parse_shape("cone-slab --axis 1 --eps 1e-3 --R 1", 2);
  CHECK(c.family() == "cone-slab");
  CHECK(std::get<ConeSlab>(c.variant()).axis == 0);
  CHECK(std::get<ConeSlab>(c.variant()).eps == 1e-3);
  const Shape t = parse_shape("tball --axis 2 --t 100 --r 1", 3);
  CHECK(std::get<TranslatedBall>(t.variant()).axis == 1);
  CHECK(std::get<TranslatedBall>(t.variant()).t == 100.0);
  CHECK(parse_shape("translated-ball --axis 1 --t 5 --r 2", 2).family() == "tball");
  CHECK(parse_shape("orthant-ball --R 2", 2).family() == "orthant-ball");
  const Shape b = parse_shape("box --lo 0,0 --hi 1,1", 2);
  CHECK(std::get<Box>(b.variant()).hi == std::vector<double>{1.0, 1.0});

  CHECK_THROWS_AS(parse_shape("", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_shape("circle --R 1", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_shape("tball --axis 1 --t 1 --r 1", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_shape("cone-slab --axis 3 --eps 0.1", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_shape("cone-slab --axis 1 --eps abc", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_shape("orthant-ball --R", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_shape("orthant-ball --Q 1", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_shape("box --lo 0,0,0 --hi 1,1,1", 2), std::invalid_argument);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(Shape::orthant_ball(1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Shape::orthant_ball(13, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Shape::orthant_ball(2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Shape::translated_ball(2, 0, 2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Shape::cone_slab(2, 0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Shape::box({-0.1, 0.0}, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Shape::box({0.5, 0.0}, {0.5, 1.0}), std::invalid_argument);
}

TEST_CASE("membership and bounding box") {
  const Shape cs = Shape::cone_slab(2, 0, 0.5, 1.0);
  const std::vector<double> in{0.2, 0.8}, out_slope{0.5, 0.8}, out_radius{0.3, 0.99};
  CHECK(cs.contains(in));
  CHECK_FALSE(cs.contains(out_slope));
  CHECK_FALSE(cs.contains(out_radius));
  const Shape tb = Shape::translated_ball(2, 1, 4.0, 1.0);
  const std::vector<double> c{0.0, 4.0}, far{0.0, 2.5};
  CHECK(tb.contains(c));
  CHECK_FALSE(tb.contains(far));
  const auto [lo, hi] = tb.bounding_box();
  CHECK(lo == std::vector<double>{-1.0, 3.0});
  CHECK(hi == std::vector<double>{1.0, 5.0});

  // Random points inside the bounding box: membership never holds outside it.
  std::mt19937_64 rng(3);
  for (const Shape& s : corpus()) {
    auto [blo, bhi] = s.bounding_box();
    std::vector<double> x(s.dim());
    for (int trial = 0; trial < 200; ++trial) {
      bool outside = false;
      for (int k = 0; k < s.dim(); ++k) {
        const double w = bhi[k] - blo[k];
        x[k] = std::uniform_real_distribution<double>(blo[k] - 0.2 * w, bhi[k] + 0.2 * w)(rng);
        outside = outside || x[k] < blo[k] || x[k] > bhi[k];
      }
      if (outside) CHECK_FALSE(s.contains(x));
    }
  }
}

TEST_CASE("dilation scales every length") {
  const Shape tb = Shape::translated_ball(3, 2, 4.0, 1.0).dilate(2.5);
  CHECK(std::get<TranslatedBall>(tb.variant()).t == 10.0);
  CHECK(std::get<TranslatedBall>(tb.variant()).r == 2.5);
  const Shape cs = Shape::cone_slab(2, 0, 0.1, 1.0).dilate(3.0);
  CHECK(std::get<ConeSlab>(cs.variant()).eps == 0.1);
  CHECK(std::get<ConeSlab>(cs.variant()).R == 3.0);
  const Shape b = Shape::box({0.0, 1.0}, {2.0, 3.0}).dilate(0.5);
  CHECK(std::get<Box>(b.variant()).lo == std::vector<double>{0.0, 0.5});
  CHECK_THROWS(cs.dilate(0.0));
}

TEST_CASE("to_json uses 1-based axes") {
  const auto j = Shape::cone_slab(3, 1, 0.1, 2.0).to_json();
  CHECK(j["axis"] == 2);
  CHECK(j["family"] == "cone-slab");
  CHECK(j["N"] == 3);
}

TEST_CASE("boundary piece labels") {
  auto labels = [](const Shape& s) {
    std::vector<std::string> l;
    for (const auto& p : s.boundary_pieces()) l.push_back(p.label);
    return l;
  };
  CHECK(labels(Shape::cone_slab(2, 0, 0.1, 1.0)) == std::vector<std::string>{"A1", "A2", "A3", "C2"});
  CHECK(labels(Shape::cone_slab(3, 0, 0.1, 1.0)) == std::vector<std::string>{"A1", "A2", "A3", "C2", "C3"});
  CHECK(labels(Shape::orthant_ball(2, 1.0)) == std::vector<std::string>{"sphere", "facet1", "facet2"});
  CHECK(labels(Shape::translated_ball(2, 0, 3.0, 1.0)) == std::vector<std::string>{"upper", "lower"});
  CHECK(Shape::box({0, 0}, {1, 1}).boundary_pieces().size() == 4u);
  // In the plane the C facets degenerate to a point.
  CHECK(Shape::cone_slab(2, 0, 0.1, 1.0).boundary_pieces()[3].param.empty);
}

TEST_CASE("property: declared Jacobians match the Gram determinant of the map") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u01(0.05, 0.95);
  for (const Shape& s : corpus()) {
    std::vector<Parametrization> params{s.volume_param()};
    for (const auto& p : s.boundary_pieces()) params.push_back(p.param);
    for (const auto& p : params) {
      if (p.empty) continue;
      for (int trial = 0; trial < 25; ++trial) {
        std::vector<double> u(p.dim());
        for (double& v : u) v = u01(rng);
        const double expect = gram_jacobian(p, u);
        INFO(s.to_json().dump());
        CHECK(p.jacobian(u) == doctest::Approx(expect).epsilon(1e-6).scale(1e-8));
      }
    }
  }
}

TEST_CASE("property: normals are unit, tangent-orthogonal and outward") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u01(0.1, 0.9);
  for (const Shape& s : corpus()) {
    for (const auto& piece : s.boundary_pieces()) {
      const auto& p = piece.param;
      if (p.empty) continue;
      const int N = p.ambient;
      std::vector<double> u(p.dim()), x(N), nu(N), xp(N), up;
      for (int trial = 0; trial < 20; ++trial) {
        for (double& v : u) v = u01(rng);
        p.map(u, x);
        p.normal(u, nu);
        double len = 0.0;
        for (double v : nu) len += v * v;
        CHECK(std::sqrt(len) == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t j = 0; j < p.dim(); ++j) {
          up = u;
          up[j] += 1e-6;
          p.map(up, xp);
          double dot = 0.0, tl = 0.0;
          for (int k = 0; k < N; ++k) {
            dot += (xp[k] - x[k]) * nu[k];
            tl += (xp[k] - x[k]) * (xp[k] - x[k]);
          }
          if (tl > 0.0) CHECK(std::fabs(dot) / std::sqrt(tl) < 1e-5);
        }
        const double d = 1e-7 * (1.0 + std::fabs(x[0]) + std::fabs(x[N - 1]));
        std::vector<double> inner(N), outer(N);
        for (int k = 0; k < N; ++k) {
          inner[k] = x[k] - d * nu[k];
          outer[k] = x[k] + d * nu[k];
        }
        INFO(s.family() << " piece " << piece.label);
        CHECK(s.contains(inner));
        CHECK_FALSE(s.contains(outer));
      }
    }
  }
}

TEST_CASE("planar regions describe the same set") {
  std::mt19937_64 rng(8);
  for (const Shape& s : corpus()) {
    if (s.dim() != 2) continue;
    const PlanarRegion reg = s.planar_region();
    auto [lo, hi] = s.bounding_box();
    for (int trial = 0; trial < 500; ++trial) {
      const double x = std::uniform_real_distribution<double>(lo[0] - 0.5, hi[0] + 0.5)(rng);
      const double y = std::uniform_real_distribution<double>(lo[1] - 0.5, hi[1] + 0.5)(rng);
      bool in = true;
      for (const auto& h : reg.half_planes) in = in && h[0] * x + h[1] * y <= h[2];
      for (const auto& c : reg.disks) in = in && (x - c[0]) * (x - c[0]) + (y - c[1]) * (y - c[1]) <= c[2] * c[2];
      const std::vector<double> p{x, y};
      CHECK(in == s.contains(p));
    }
  }
  CHECK_THROWS(Shape::orthant_ball(3, 1.0).planar_region());
}

TEST_CASE("closed-form orthant-ball masses") {
  // Values computed independently at 30 digits.
  CHECK(closed_form_orthant_ball_mass(ExponentVector{0.0, 0.0}) == doctest::Approx(M_PI / 4).epsilon(1e-14));
  CHECK(closed_form_orthant_ball_mass(ExponentVector{2.0, 3.0}) ==
        doctest::Approx(0.0190476190476190476).epsilon(1e-13));
  CHECK(closed_form_orthant_ball_mass(ExponentVector{0.5, 1.5, 0.0}) ==
        doctest::Approx(0.0740480489693061041).epsilon(1e-13));
  CHECK(closed_form_orthant_ball_mass(ExponentVector{0.3, 0.7, 1.2}) ==
        doctest::Approx(0.0492872433439137750).epsilon(1e-13));
  CHECK(closed_form_orthant_ball_mass(ExponentVector{1.0, 1.0}, 2.0) == doctest::Approx(0.125 * 16.0).epsilon(1e-14));
}
