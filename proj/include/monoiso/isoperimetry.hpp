#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "monoiso/integrate.hpp"
#include "monoiso/shapes.hpp"
#include "monoiso/weight.hpp"

namespace monoiso {

/// Raised when a shape has zero or non-finite weighted volume.
class DegenerateShape : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a formula is applied outside its hypotheses.
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct QuotientReport {
  IntegralEstimate perimeter;
  IntegralEstimate volume;
  double quotient = 0.0;  ///< perimeter / volume^sigma
  double sigma = 0.0;
  nlohmann::json shape_params;
  double combined_rel_error = 0.0;  ///< relerr(P) + sigma relerr(m)
  std::vector<PieceEstimate> pieces;

  /// max(1e-6, 3 combined_rel_error), used as a relative tolerance.
  double tolerance() const;
};

nlohmann::json to_json(const QuotientReport& r);

QuotientReport quotient(const Shape& shape, const WeightPair& pair, const QuadratureSpec& q,
                        Exec exec = Exec::parallel);

enum class ExistenceStatus { Zero, Positive, OutsideScope };
enum class ViolatedSide { lower, upper };

std::string to_string(ExistenceStatus s);
std::string to_string(ViolatedSide s);

struct ExistenceVerdict {
  ExistenceStatus status = ExistenceStatus::Positive;
  std::optional<std::size_t> witness_index;  ///< 0-based
  std::optional<ViolatedSide> violated_side;
  std::string theorem_basis;
  double sigma = 0.0;
  double a_minus_b = 0.0;
};

/// JSON with a 1-based witness_index (null when absent).
nlohmann::json to_json(const ExistenceVerdict& v);

/// Per-index test 0 <= a_i - sigma b_i <= sigma. The first failing index is
/// the witness; the lower inequality is checked before the upper one.
/// Equalities (within 1e-12 relative) count as satisfied.
ExistenceVerdict classify_existence(const WeightPair& pair);

/// Same inequalities with sigma replaced by index-dropped quantities:
///   0 <= a_i - (N + abar_i - 1)/(N + bbar_i) b_i  and
///   a_i/(b_i + 1) <= (N + abar_i - 1)/(N + bbar_i - 1).
bool lower_condition(const WeightPair& pair, std::size_t i);
bool upper_condition(const WeightPair& pair, std::size_t i);
bool dropped_lower_condition(const WeightPair& pair, std::size_t i);
bool dropped_upper_condition(const WeightPair& pair, std::size_t i);
/// True iff both forms agree at every index.
bool conditions_equivalent(const WeightPair& pair);

/// Exact constant a_i when a_j = b_j (j != i) and a_i = b_i + 1.
double theorem2_constant(const WeightPair& pair, std::size_t i);

/// D m^{1/D}, with m the mass of the unit ball intersected with
/// {x_j > 0 where a_j > 0} (other coordinates of both signs).
double ball_constant(const ExponentVector& A);

/// Report for a union of pieces glued along interfaces of total weighted
/// area interface_perimeter (each interface counted once in both pieces).
QuotientReport merge_reports(std::span<const QuotientReport> pieces, const WeightPair& pair,
                             double interface_perimeter = 0.0);

/// whole.quotient >= min piece quotient, up to the reports' tolerance.
/// Requires a - b <= 1.
bool orthant_reduction_check(std::span<const QuotientReport> pieces, const QuotientReport& whole,
                             const WeightPair& pair);

}  // namespace monoiso
