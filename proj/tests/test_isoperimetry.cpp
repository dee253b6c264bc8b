#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "monoiso/isoperimetry.hpp"

using namespace monoiso;

namespace {

const QuadratureSpec q = QuadratureSpec{};

WeightPair pair(std::initializer_list<double> A, std::initializer_list<double> B) {
  return WeightPair(ExponentVector(A), ExponentVector(B));
}

WeightPair random_pair(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 4.0);
  const int N = 2 + static_cast<int>(rng() % 3);
  std::vector<double> A(N), B(N);
  for (int k = 0; k < N; ++k) {
    A[k] = u(rng);
    B[k] = u(rng);
  }
  return WeightPair(ExponentVector(A), ExponentVector(B));
}

}  // namespace

TEST_CASE("classifier table") {
  const auto pos = classify_existence(pair({1, 0}, {0, 0}));
  CHECK(pos.status == ExistenceStatus::Positive);
  CHECK_FALSE(pos.witness_index.has_value());

  const auto lower = classify_existence(pair({0, 0}, {1, 0}));
  CHECK(lower.status == ExistenceStatus::Zero);
  CHECK(lower.witness_index == std::optional<std::size_t>(0));
  CHECK(lower.violated_side == std::optional<ViolatedSide>(ViolatedSide::lower));

  const auto upper = classify_existence(pair({2, 0}, {0, 0}));
  CHECK(upper.status == ExistenceStatus::Zero);
  CHECK(upper.witness_index == std::optional<std::size_t>(0));
  CHECK(upper.violated_side == std::optional<ViolatedSide>(ViolatedSide::upper));

  CHECK(classify_existence(pair({1, 1}, {0, 0})).status == ExistenceStatus::OutsideScope);
}

TEST_CASE("verdict JSON uses 1-based witnesses") {
  const auto j = to_json(classify_existence(pair({0, 0}, {1, 0})));
  CHECK(j["status"] == "Zero");
  CHECK(j["witness_index"] == 1);
  CHECK(j["violated_side"] == "lower");
  CHECK(j["sigma"] == doctest::Approx(1.0 / 3.0));
  CHECK(j["a_minus_b"] == -1.0);
  CHECK(j.contains("basis"));
  const auto p = to_json(classify_existence(pair({1, 0}, {0, 0})));
  CHECK(p["witness_index"].is_null());
}

TEST_CASE("boundary cases count as satisfied") {
  // a_1 = sigma b_1 exactly: sigma = 1 with A = B = (1, 0).
  CHECK(lower_condition(pair({1, 0}, {1, 0}), 0));
  // a_1 = sigma (b_1 + 1): N=2, A=(1,0), B=(0,0), sigma = 1.
  CHECK(upper_condition(pair({1, 0}, {0, 0}), 0));
}

TEST_CASE("property: index conditions match a direct evaluation") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10000; ++trial) {
    const WeightPair w = random_pair(rng);
    bool any_fail = false;
    for (std::size_t i = 0; i < w.A.size(); ++i) {
      const double d = w.A[i] - w.sigma * w.B[i];
      any_fail = any_fail || d < -1e-9 || d > w.sigma + 1e-9;
    }
    const auto v = classify_existence(w);
    CHECK((v.status == ExistenceStatus::Zero) == any_fail);
    if (!any_fail) {
      CHECK(v.status == (w.a - w.b <= 1.0 + 1e-12 ? ExistenceStatus::Positive : ExistenceStatus::OutsideScope));
    }
  }
}

TEST_CASE("property: the sigma form and the index-dropped form agree") {
  std::mt19937_64 rng(32);
  int mismatches = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const WeightPair w = random_pair(rng);
    if (!conditions_equivalent(w)) ++mismatches;
    for (std::size_t i = 0; i < w.A.size(); ++i) {
      CHECK(lower_condition(w, i) == dropped_lower_condition(w, i));
      CHECK(upper_condition(w, i) == dropped_upper_condition(w, i));
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("property: the status is invariant under coordinate permutations") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 2000; ++trial) {
    const WeightPair w = random_pair(rng);
    std::vector<std::size_t> perm(w.A.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> A, B;
    for (std::size_t k : perm) {
      A.push_back(w.A[k]);
      B.push_back(w.B[k]);
    }
    const WeightPair p{ExponentVector(A), ExponentVector(B)};
    const auto v = classify_existence(w), vp = classify_existence(p);
    CHECK(v.status == vp.status);
    CHECK(v.sigma == doctest::Approx(vp.sigma).epsilon(1e-15));
    if (vp.witness_index) {
      const std::size_t i = *vp.witness_index;
      CHECK_FALSE((lower_condition(p, i) && upper_condition(p, i)));
    }
  }
}

TEST_CASE("theorem2_constant hypotheses") {
  CHECK(theorem2_constant(pair({1, 0}, {0, 0}), 0) == 1.0);
  CHECK(theorem2_constant(pair({2, 1, 0}, {1, 1, 0}), 0) == 2.0);
  CHECK_THROWS_AS(theorem2_constant(pair({1, 1}, {0, 0}), 0), HypothesisError);
  CHECK_THROWS_AS(theorem2_constant(pair({1.5, 0}, {0, 0}), 0), HypothesisError);
  CHECK_THROWS_AS(theorem2_constant(pair({1, 0}, {0, 0}), 2), std::out_of_range);
}

TEST_CASE("ball constants against independent values") {
  // D (2^{N-k} m)^{1/D}, evaluated at 30 digits.
  CHECK(ball_constant(ExponentVector{0, 0}) == doctest::Approx(3.54490770181103205).epsilon(1e-13));
  CHECK(ball_constant(ExponentVector{1, 0}) == doctest::Approx(2.62074139420889661).epsilon(1e-13));
  CHECK(ball_constant(ExponentVector{1, 1}) == doctest::Approx(2.37841423000544213).epsilon(1e-13));
  CHECK(ball_constant(ExponentVector{2, 3}) == doctest::Approx(3.97521842489468910).epsilon(1e-13));
  CHECK(ball_constant(ExponentVector{0.5, 1.5, 0}) == doctest::Approx(3.41254767574422312).epsilon(1e-13));
}

TEST_CASE("quotients of reference shapes") {
  const auto r11 = quotient(Shape::orthant_ball(2, 1.0), pair({1, 1}, {1, 1}), q);
  CHECK(r11.quotient == doctest::Approx(2.37841423000544213).epsilon(1e-12));
  CHECK(r11.sigma == doctest::Approx(0.75));
  const auto r00 = quotient(Shape::orthant_ball(2, 1.0), pair({0, 0}, {0, 0}), q);
  CHECK(r00.quotient == doctest::Approx(4.02921218509654118).epsilon(1e-12));
  CHECK(r00.tolerance() >= 1e-6);
  const auto j = to_json(r00);
  CHECK(j.contains("perimeter"));
  CHECK(j.contains("combined_rel_error"));
}

TEST_CASE("property: quotients are dilation invariant") {
  const std::vector<std::pair<Shape, WeightPair>> cases{
      {Shape::orthant_ball(2, 1.0), pair({1, 0}, {0.5, 0})},
      {Shape::cone_slab(3, 0, 0.2, 1.0), pair({1, 1, 0}, {1, 1, 0})},
      {Shape::translated_ball(2, 1, 4.0, 1.0), pair({0, 1}, {1, 1})},
      {Shape::box({0, 0.5}, {1, 2}), pair({2, 0}, {1, 0})}};
  for (const auto& [s, w] : cases) {
    const auto base = quotient(s, w, q);
    for (double lambda : {0.5, 2.0, 10.0}) {
      const auto d = quotient(s.dilate(lambda), w, q);
      CHECK(std::fabs(d.quotient - base.quotient) <= base.quotient * std::max(base.tolerance(), d.tolerance()));
    }
  }
}

TEST_CASE("an underflowing volume raises DegenerateShape") {
  const Shape tiny = Shape::box({0, 0}, {1e-30, 1e-30});
  CHECK_THROWS_AS(quotient(tiny, pair({20, 20}, {20, 20}), q), DegenerateShape);
  CHECK_THROWS_AS(quotient(Shape::orthant_ball(2, 1.0), pair({0, 0, 0}, {0, 0, 0}), q), std::invalid_argument);
}

TEST_CASE("merging reflected quarter disks gives the half disk") {
  const WeightPair w = pair({0, 0}, {0, 0});
  const auto quarter = quotient(Shape::orthant_ball(2, 1.0), w, q);
  const std::vector<QuotientReport> parts{quarter, quarter};
  const auto half = merge_reports(parts, w, 1.0);
  CHECK(half.perimeter.value == doctest::Approx(M_PI + 2.0).epsilon(1e-13));
  CHECK(half.volume.value == doctest::Approx(M_PI / 2).epsilon(1e-13));
  CHECK(half.quotient == doctest::Approx((M_PI + 2.0) / std::sqrt(M_PI / 2)).epsilon(1e-13));
  CHECK(orthant_reduction_check(parts, half, w));
  CHECK_THROWS(merge_reports(std::span<const QuotientReport>{}, w));
  CHECK_THROWS_AS(orthant_reduction_check(parts, half, pair({2, 0}, {0, 0})), HypothesisError);
}

TEST_CASE("reflecting across a weighted axis with A = B = (1, 0)") {
  const WeightPair w = pair({1, 0}, {1, 0});
  const auto quarter = quotient(Shape::orthant_ball(2, 1.0), w, q);
  const std::vector<QuotientReport> parts{quarter, quarter};
  // The shared segment lies in {x1 = 0}, where |x1| vanishes.
  const auto half = merge_reports(parts, w, 0.0);
  // Upper half disk: int |x1| is 2 over the arc and 1 over the diameter; mass 2/3.
  CHECK(half.perimeter.value == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(half.volume.value == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(half.quotient == doctest::Approx(3.0 / std::cbrt(4.0 / 9.0)).epsilon(1e-13));
  CHECK(orthant_reduction_check(parts, half, w));
  const std::vector<QuotientReport> single{quarter};
  CHECK(orthant_reduction_check(single, quarter, w));
}

TEST_CASE("property: orthant shapes do not beat the ball constant when A = B") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.0, 3.0), ue(0.1, 0.9);
  for (int trial = 0; trial < 40; ++trial) {
    const int N = 2 + trial % 2;
    std::vector<double> a(N);
    for (double& v : a) v = rng() % 4 == 0 ? 0.0 : u(rng);
    const ExponentVector A(a);
    const WeightPair w(A, A);
    std::vector<double> lo(N), hi(N);
    for (int k = 0; k < N; ++k) {
      lo[k] = 0.5 * ue(rng);
      hi[k] = lo[k] + ue(rng);
    }
    const std::vector<Shape> shapes{Shape::orthant_ball(N, 1.0 + ue(rng)), Shape::box(lo, hi),
                                    Shape::cone_slab(N, static_cast<std::size_t>(trial) % N, ue(rng), 1.0)};
    const double c = ball_constant(A);
    for (const Shape& s : shapes) {
      const auto r = quotient(s, w, q);
      INFO(s.to_json().dump() << " A=" << format_exponents(A));
      CHECK(r.quotient >= c * (1 - r.tolerance()));
    }
  }
}
