#include "monoiso/isoperimetry.hpp"

#include <algorithm>
#include <cmath>

namespace monoiso {
namespace {

constexpr double kRelTie = 1e-12;

bool le(double x, double y) { return x <= y + kRelTie * std::max({1.0, std::fabs(x), std::fabs(y)}); }

}  // namespace

double QuotientReport::tolerance() const { return std::max(1e-6, 3.0 * combined_rel_error); }

nlohmann::json to_json(const QuotientReport& r) {
  nlohmann::json j;
  j["perimeter"] = to_json(r.perimeter);
  j["volume"] = to_json(r.volume);
  j["quotient"] = r.quotient;
  j["sigma"] = r.sigma;
  j["shape"] = r.shape_params;
  j["combined_rel_error"] = r.combined_rel_error;
  if (!r.pieces.empty()) {
    nlohmann::json pieces = nlohmann::json::array();
    for (const auto& p : r.pieces)
      pieces.push_back({{"label", p.label}, {"value", p.estimate.value}, {"vanishing", p.vanishing}});
    j["pieces"] = pieces;
  }
  return j;
}

QuotientReport quotient(const Shape& shape, const WeightPair& pair, const QuadratureSpec& q, Exec exec) {
  if (shape.dim() != pair.N) throw std::invalid_argument("quotient: shape dimension does not match the weights");
  QuotientReport r;
  r.sigma = pair.sigma;
  r.shape_params = shape.to_json();
  r.volume = weighted_volume(shape, pair.B, q, exec);
  if (!(r.volume.value > 0.0) || !std::isfinite(r.volume.value))
    throw DegenerateShape("quotient: weighted volume is zero or non-finite for " + r.shape_params.dump());
  r.pieces = weighted_surface_pieces(shape, pair.A, q, exec);
  for (const auto& p : r.pieces) {
    r.perimeter.value += p.estimate.value;
    r.perimeter.abs_error_est += p.estimate.abs_error_est;
    r.perimeter.evaluations += p.estimate.evaluations;
    r.perimeter.converged = r.perimeter.converged && p.estimate.converged;
  }
  r.quotient = r.perimeter.value / std::pow(r.volume.value, r.sigma);
  r.combined_rel_error = r.perimeter.rel_error() + r.sigma * r.volume.rel_error();
  return r;
}

std::string to_string(ExistenceStatus s) {
  switch (s) {
    case ExistenceStatus::Zero: return "Zero";
    case ExistenceStatus::Positive: return "Positive";
    default: return "OutsideScope";
  }
}

std::string to_string(ViolatedSide s) { return s == ViolatedSide::lower ? "lower" : "upper"; }

nlohmann::json to_json(const ExistenceVerdict& v) {
  nlohmann::json j;
  j["status"] = to_string(v.status);
  j["witness_index"] = v.witness_index ? nlohmann::json(*v.witness_index + 1) : nlohmann::json(nullptr);
  j["violated_side"] = v.violated_side ? nlohmann::json(to_string(*v.violated_side)) : nlohmann::json(nullptr);
  j["sigma"] = v.sigma;
  j["a_minus_b"] = v.a_minus_b;
  j["basis"] = v.theorem_basis;
  return j;
}

bool lower_condition(const WeightPair& p, std::size_t i) { return le(0.0, p.A[i] - p.sigma * p.B[i]); }

bool upper_condition(const WeightPair& p, std::size_t i) { return le(p.A[i] - p.sigma * p.B[i], p.sigma); }

bool dropped_lower_condition(const WeightPair& p, std::size_t i) {
  const double abar = p.a - p.A[i], bbar = p.b - p.B[i];
  return le(0.0, p.A[i] - (p.N + abar - 1.0) / (p.N + bbar) * p.B[i]);
}

bool dropped_upper_condition(const WeightPair& p, std::size_t i) {
  const double abar = p.a - p.A[i], bbar = p.b - p.B[i];
  return le(p.A[i] / (p.B[i] + 1.0), (p.N + abar - 1.0) / (p.N + bbar - 1.0));
}

ExistenceVerdict classify_existence(const WeightPair& pair) {
  ExistenceVerdict v;
  v.sigma = pair.sigma;
  v.a_minus_b = pair.a - pair.b;
  for (std::size_t i = 0; i < pair.A.size(); ++i) {
    const bool lo = lower_condition(pair, i);
    const bool hi = upper_condition(pair, i);
    if (!lo || !hi) {
      v.status = ExistenceStatus::Zero;
      v.witness_index = i;
      v.violated_side = lo ? ViolatedSide::upper : ViolatedSide::lower;
      v.theorem_basis = lo ? "a_i > sigma (b_i + 1): cone slabs x_i < eps |x'| drive the quotient to 0"
                           : "a_i < sigma b_i: balls translated along e_i drive the quotient to 0";
      return v;
    }
  }
  if (le(v.a_minus_b, 1.0)) {
    v.status = ExistenceStatus::Positive;
    v.theorem_basis = "0 <= a_i - sigma b_i <= sigma for all i and a - b <= 1: the inequality holds";
  } else {
    v.status = ExistenceStatus::OutsideScope;
    v.theorem_basis = "index conditions hold but a - b > 1: no result available";
  }
  return v;
}

bool conditions_equivalent(const WeightPair& pair) {
  for (std::size_t i = 0; i < pair.A.size(); ++i) {
    const bool c1 = lower_condition(pair, i) && upper_condition(pair, i);
    const bool c2 = dropped_lower_condition(pair, i) && dropped_upper_condition(pair, i);
    if (c1 != c2) return false;
  }
  return true;
}

double theorem2_constant(const WeightPair& pair, std::size_t i) {
  if (i >= pair.A.size()) throw std::out_of_range("theorem2_constant: index out of range");
  for (std::size_t j = 0; j < pair.A.size(); ++j) {
    if (j == i) continue;
    if (pair.A[j] != pair.B[j])
      throw HypothesisError("theorem2_constant: need a_j = b_j for j != i, but a_" + std::to_string(j + 1) +
                            " != b_" + std::to_string(j + 1));
  }
  if (std::fabs(pair.A[i] - (pair.B[i] + 1.0)) > 1e-12 * std::max(1.0, pair.A[i]))
    throw HypothesisError("theorem2_constant: need a_i = b_i + 1");
  return pair.A[i];
}

double ball_constant(const ExponentVector& A) {
  const double N = static_cast<double>(A.size());
  const double D = N + A.sum();
  const double k = static_cast<double>(A.positive_count());
  const double m = std::pow(2.0, N - k) * closed_form_orthant_ball_mass(A, 1.0);
  return D * std::pow(m, 1.0 / D);
}

QuotientReport merge_reports(std::span<const QuotientReport> pieces, const WeightPair& pair,
                             double interface_perimeter) {
  if (pieces.empty()) throw std::invalid_argument("merge_reports: no pieces");
  if (interface_perimeter < 0.0) throw std::invalid_argument("merge_reports: negative interface perimeter");
  QuotientReport r;
  r.sigma = pair.sigma;
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& p : pieces) {
    r.perimeter.value += p.perimeter.value;
    r.perimeter.abs_error_est += p.perimeter.abs_error_est;
    r.perimeter.evaluations += p.perimeter.evaluations;
    r.volume.value += p.volume.value;
    r.volume.abs_error_est += p.volume.abs_error_est;
    r.volume.evaluations += p.volume.evaluations;
    parts.push_back(p.shape_params);
  }
  r.perimeter.value -= 2.0 * interface_perimeter;
  if (!(r.volume.value > 0.0)) throw DegenerateShape("merge_reports: zero total volume");
  r.shape_params = {{"union", parts}, {"interface_perimeter", interface_perimeter}};
  r.quotient = r.perimeter.value / std::pow(r.volume.value, r.sigma);
  r.combined_rel_error = r.perimeter.rel_error() + r.sigma * r.volume.rel_error();
  return r;
}

bool orthant_reduction_check(std::span<const QuotientReport> pieces, const QuotientReport& whole,
                             const WeightPair& pair) {
  if (!le(pair.a - pair.b, 1.0)) throw HypothesisError("orthant_reduction_check: requires a - b <= 1");
  if (pieces.empty()) throw std::invalid_argument("orthant_reduction_check: no pieces");
  double qmin = pieces[0].quotient, tol = whole.tolerance();
  for (const auto& p : pieces) {
    qmin = std::min(qmin, p.quotient);
    tol = std::max(tol, p.tolerance());
  }
  return whole.quotient >= qmin * (1.0 - tol);
}

}  // namespace monoiso
