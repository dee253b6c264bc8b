#include "monoiso/weight.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace monoiso {

ExponentVector::ExponentVector(std::vector<double> entries) : entries_(std::move(entries)) {
  for (double v : entries_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("exponent entries must be finite and nonnegative");
    }
  }
}

double ExponentVector::sum() const {
  return std::accumulate(entries_.begin(), entries_.end(), 0.0);
}

int ExponentVector::positive_count() const {
  int k = 0;
  for (double v : entries_) k += v > 0.0 ? 1 : 0;
  return k;
}

double eval_weight(std::span<const double> x, const ExponentVector& e) {
  if (x.size() != e.size()) throw std::invalid_argument("eval_weight: dimension mismatch");
  double w = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) w *= signless_pow(x[i], e[i]);
  return w;
}

ExponentVector drop_index(const ExponentVector& e, std::size_t i) {
  if (i >= e.size()) throw std::out_of_range("drop_index: index out of range");
  std::vector<double> out;
  out.reserve(e.size() - 1);
  for (std::size_t j = 0; j < e.size(); ++j)
    if (j != i) out.push_back(e[j]);
  return ExponentVector(std::move(out));
}

ExponentVector drop_two(const ExponentVector& e, std::size_t i, std::size_t k) {
  if (i >= e.size() || k >= e.size()) throw std::out_of_range("drop_two: index out of range");
  if (i == k) throw std::invalid_argument("drop_two: indices must differ");
  std::vector<double> out;
  for (std::size_t j = 0; j < e.size(); ++j)
    if (j != i && j != k) out.push_back(e[j]);
  return ExponentVector(std::move(out));
}

bool in_admissible_cone(std::span<const double> x, const ExponentVector& a) {
  if (x.size() != a.size()) throw std::invalid_argument("in_admissible_cone: dimension mismatch");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (a[i] > 0.0 && !(x[i] > 0.0)) return false;
  return true;
}

ExponentVector parse_exponents(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw std::invalid_argument("cannot parse exponent list '" + std::string(text) + "'");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return ExponentVector(std::move(out));
}

std::string format_exponents(const ExponentVector& e) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
  return os.str();
}

WeightPair::WeightPair(ExponentVector A_, ExponentVector B_) : A(std::move(A_)), B(std::move(B_)) {
  if (A.size() != B.size()) throw std::invalid_argument("A and B must have the same length");
  if (A.size() < 2) throw std::invalid_argument("dimension N must be at least 2");
  N = static_cast<int>(A.size());
  a = A.sum();
  b = B.sum();
  sigma = (N + a - 1.0) / (N + b);
  D = N + a;
  k = A.positive_count();
}

}  // namespace monoiso
