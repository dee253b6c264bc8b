#include "monoiso/limits.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace monoiso {

void SweepSchedule::validate() const {
  if (!(start > 0.0) || !std::isfinite(start)) throw std::invalid_argument("SweepSchedule: start must be positive");
  if (!(ratio > 0.0) || ratio == 1.0 || !std::isfinite(ratio))
    throw std::invalid_argument("SweepSchedule: ratio must be positive and != 1");
  if (count < 5) throw std::invalid_argument("SweepSchedule: count must be >= 5");
}

std::vector<double> SweepSchedule::values() const {
  validate();
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) v[k] = start * std::pow(ratio, k);
  return v;
}

SweepSchedule SweepSchedule::spanning(SweepParam p, double first, double last, int count) {
  if (count < 2) throw std::invalid_argument("SweepSchedule::spanning: count must be >= 2");
  SweepSchedule s;
  s.parameter = p;
  s.start = first;
  s.ratio = std::pow(last / first, 1.0 / (count - 1));
  s.count = count;
  s.validate();
  return s;
}

Shape FamilyTemplate::at(double param) const {
  if (family == ExtremalFamily::translated_ball) return Shape::translated_ball(N, axis, param, radius);
  return Shape::cone_slab(N, axis, param, radius);
}

std::vector<QuotientReport> sweep(const FamilyTemplate& family, const SweepSchedule& schedule,
                                  const WeightPair& pair, const QuadratureSpec& q) {
  if (schedule.parameter != family.parameter())
    throw std::invalid_argument("sweep: schedule parameter does not match the family");
  std::vector<QuotientReport> out;
  for (double v : schedule.values()) {
    try {
      out.push_back(quotient(family.at(v), pair, q));
    } catch (const DegenerateShape& e) {
      std::ostringstream msg;
      msg << "sweep: degenerate shape at parameter " << v << ": " << e.what();
      throw DegenerateShape(msg.str());
    }
  }
  return out;
}

nlohmann::json to_json(const PowerLawFit& f) {
  return {{"exponent", f.exponent},
          {"intercept", f.intercept},
          {"stderr", f.stderr_exponent},
          {"r_squared", f.r_squared},
          {"points", f.points}};
}

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_power_law: size mismatch");
  const std::size_t n = x.size();
  if (n < 3) throw std::invalid_argument("fit_power_law: need at least 3 points");
  std::vector<double> lx(n), ly(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0) || !std::isfinite(x[k]) || !std::isfinite(y[k]))
      throw std::invalid_argument("fit_power_law: values must be positive and finite");
    lx[k] = std::log(x[k]);
    ly[k] = std::log(y[k]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
    syy += (ly[k] - my) * (ly[k] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_power_law: parameter values are all equal");
  PowerLawFit f;
  f.points = n;
  f.exponent = sxy / sxx;
  f.intercept = my - f.exponent * mx;
  double ssr = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = ly[k] - (f.intercept + f.exponent * lx[k]);
    ssr += r * r;
  }
  f.stderr_exponent = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
  f.r_squared = syy > 0.0 ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 1.0;
  return f;
}

namespace {

std::vector<double> quotients(const std::vector<QuotientReport>& reports) {
  std::vector<double> q;
  for (const auto& r : reports) q.push_back(r.quotient);
  return q;
}

std::size_t tail_start(std::size_t n) { return n >= 6 ? n - n / 2 : 0; }

}  // namespace

PowerLawFit fit_power_law(const std::vector<QuotientReport>& reports, const SweepSchedule& schedule) {
  const auto x = schedule.values();
  if (x.size() != reports.size()) throw std::invalid_argument("fit_power_law: reports do not match the schedule");
  const auto y = quotients(reports);
  return fit_power_law(x, y);
}

PowerLawFit fit_tail(const std::vector<QuotientReport>& reports, const SweepSchedule& schedule) {
  const auto x = schedule.values();
  if (x.size() != reports.size()) throw std::invalid_argument("fit_tail: reports do not match the schedule");
  const auto y = quotients(reports);
  const std::size_t s = tail_start(x.size());
  return fit_power_law(std::span(x).subspan(s), std::span(y).subspan(s));
}

double predicted_exponent(const WeightPair& pair, std::size_t i, ExtremalFamily family) {
  if (i >= pair.A.size()) throw std::out_of_range("predicted_exponent: index out of range");
  if (family == ExtremalFamily::translated_ball) return pair.A[i] - pair.sigma * pair.B[i];
  return pair.A[i] - pair.sigma * (pair.B[i] + 1.0);
}

DominanceReport dominance_report(const std::vector<QuotientReport>& reports, const SweepSchedule& schedule) {
  DominanceReport d;
  d.params = schedule.values();
  if (reports.size() != d.params.size() || reports.empty())
    throw std::invalid_argument("dominance_report: reports do not match the schedule");
  for (const auto& p : reports.front().pieces) d.labels.push_back(p.label);
  const std::size_t np = d.labels.size();
  if (np == 0) throw std::invalid_argument("dominance_report: reports carry no piece breakdown");

  for (const auto& r : reports) {
    if (r.pieces.size() != np) throw std::invalid_argument("dominance_report: piece count changes along the sweep");
    std::vector<double> v;
    for (const auto& p : r.pieces) v.push_back(p.estimate.value);
    d.piece_values.push_back(std::move(v));
  }
  const auto& last = d.piece_values.back();
  const std::size_t dom = static_cast<std::size_t>(std::max_element(last.begin(), last.end()) - last.begin());
  d.dominant = d.labels[dom];

  for (const auto& v : d.piece_values) {
    double other = 0.0;
    for (std::size_t k = 0; k < np; ++k)
      if (k != dom) other = std::max(other, v[k]);
    d.contaminated.push_back(other > 0.1 * v[dom]);
  }

  const std::size_t s = tail_start(reports.size());
  std::vector<double> x, y;
  d.tail_clean = true;
  for (std::size_t k = s; k < reports.size(); ++k) {
    x.push_back(d.params[k]);
    y.push_back(d.piece_values[k][dom] / std::pow(reports[k].volume.value, reports[k].sigma));
    d.tail_clean = d.tail_clean && !d.contaminated[k];
  }
  d.leading = fit_power_law(x, y);
  return d;
}

nlohmann::json to_json(const LimitEstimate& l) {
  return {{"eps", l.eps},
          {"ratio_eps", l.ratio_eps},
          {"ratio_half_eps", l.ratio_half},
          {"extrapolated", l.extrapolated},
          {"predicted", l.predicted},
          {"leading_term", l.leading_term},
          {"rel_error", l.rel_error}};
}

LimitEstimate cone_slab_ratio_limit(const WeightPair& pair, std::size_t i, double eps, const QuadratureSpec& q) {
  LimitEstimate l;
  l.predicted = theorem2_constant(pair, i);
  if (!(eps > 0.0)) throw std::invalid_argument("cone_slab_ratio_limit: eps must be positive");
  l.eps = eps;
  auto ratio = [&](double e) {
    const Shape s = Shape::cone_slab(pair.N, i, e, 1.0);
    const double m = weighted_volume(s, pair.B, q).value;
    if (!(m > 0.0)) throw DegenerateShape("cone_slab_ratio_limit: zero volume");
    return weighted_surface(s, pair.A, q).value / m;
  };
  l.ratio_eps = ratio(eps);
  l.ratio_half = ratio(eps / 2.0);
  l.extrapolated = 2.0 * l.ratio_half - l.ratio_eps;
  l.leading_term = (pair.B[i] + 1.0) * std::pow(1.0 + eps * eps, 1.5);
  l.rel_error = std::fabs(l.extrapolated - l.predicted) / l.predicted;
  return l;
}

}  // namespace monoiso
