#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace monoiso {

/// Nonnegative exponent vector of a monomial weight |x_1|^{e_1} ... |x_N|^{e_N}.
///
/// Entries are validated on construction (finite, >= 0). Length is not
/// restricted here because index-dropped vectors may have length N-1 or N-2;
/// the N >= 2 requirement is enforced by WeightPair and by the shapes.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::vector<double> entries);
  ExponentVector(std::initializer_list<double> entries)
      : ExponentVector(std::vector<double>(entries)) {}

  std::size_t size() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> entries() const { return entries_; }

  /// Sum of all entries.
  double sum() const;
  /// Number of strictly positive entries.
  int positive_count() const;

  bool operator==(const ExponentVector&) const = default;

 private:
  std::vector<double> entries_;
};

/// |x|^e with the 0^0 = 1 convention.
inline double signless_pow(double x, double e) {
  if (e == 0.0) return 1.0;
  if (x == 0.0) return 0.0;
  return std::pow(std::fabs(x), e);
}

/// Product of |x_i|^{e_i}. Zero exponents are inert even at x_i = 0.
double eval_weight(std::span<const double> x, const ExponentVector& e);

/// Vector with entry i removed (0-based).
ExponentVector drop_index(const ExponentVector& e, std::size_t i);
/// Vector with entries i and k removed (0-based, i != k).
ExponentVector drop_two(const ExponentVector& e, std::size_t i, std::size_t k);

/// x_i > 0 for every i with a_i > 0.
bool in_admissible_cone(std::span<const double> x, const ExponentVector& a);

/// Parses "1.5,0,2" into an exponent vector. Throws std::invalid_argument.
ExponentVector parse_exponents(std::string_view text);
std::string format_exponents(const ExponentVector& e);

/// The exponent data (A, B, N) and every scalar derived from it.
struct WeightPair {
  ExponentVector A;
  ExponentVector B;
  int N = 0;
  double a = 0.0;      ///< sum of A
  double b = 0.0;      ///< sum of B
  double sigma = 0.0;  ///< (N + a - 1) / (N + b)
  double D = 0.0;      ///< N + a
  int k = 0;           ///< strictly positive entries of A

  WeightPair() = default;
  /// Throws std::invalid_argument when lengths differ or N < 2.
  WeightPair(ExponentVector A_, ExponentVector B_);
};


}  // namespace monoiso
