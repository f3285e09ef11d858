#ifndef RPT_SERIES_HPP
#define RPT_SERIES_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rpt/rational.hpp"

namespace rpt {

/// Exponent tuple of a monomial, one non-negative entry per variable.
using MultiIndex = std::vector<int>;

int total_order(const MultiIndex& index);

/// Total order first, then lexicographic. Every ordered report in the
/// project (mismatches, serialized tables) uses this single ordering.
struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

using CoefficientMap = std::map<MultiIndex, Rational, GradedLexLess>;

struct SeriesMismatch {
  MultiIndex index;
  Rational lhs;
  Rational rhs;
};

/// Truncated formal power series with exact rational coefficients.
/// Absent coefficients are exact zeros; stored ones are reduced and
/// nonzero, so structural equality is series equality.
class Series {
 public:
  /// Zero series.
  Series(int num_vars, int truncation_order);

  /// Duplicate indices are accumulated; zero results are dropped.
  /// Throws std::invalid_argument on an index of the wrong length and
  /// std::out_of_range on an index beyond the truncation order.
  static Series make(int num_vars, int truncation_order,
                     const std::vector<std::pair<MultiIndex, Rational>>& coeffs);

  static Series constant(int num_vars, int truncation_order, const Rational& value);
  /// The monomial X_var. Requires truncation_order >= 1.
  static Series variable(int num_vars, int var, int truncation_order);

  int num_vars() const { return num_vars_; }
  int truncation_order() const { return truncation_order_; }
  const CoefficientMap& coefficients() const { return coeffs_; }

  /// Exact coefficient, zero if absent. Indices beyond the truncation
  /// order are not determined and raise std::out_of_range.
  Rational coefficient(const MultiIndex& index) const;

  Series truncated(int new_order) const;

  bool operator==(const Series& other) const;

 private:
  void insert(const MultiIndex& index, const Rational& value);

  int num_vars_;
  int truncation_order_;
  CoefficientMap coeffs_;

  friend Series operator+(const Series&, const Series&);
  friend Series operator-(const Series&, const Series&);
  friend Series operator*(const Series&, const Series&);
  friend Series operator*(const Rational&, const Series&);
};

/// Sum/product with result truncation = min of the operand orders, so no
/// reported coefficient depends on terms beyond either truncation.
Series operator+(const Series& a, const Series& b);
Series operator-(const Series& a, const Series& b);
Series operator*(const Series& a, const Series& b);
Series operator*(const Rational& scalar, const Series& s);

/// Sum_{k<=N} s^k / k!. Requires a vanishing constant term.
Series exp_series(const Series& s);

/// Sum_{1<=k<=N} (-1)^(k+1) (s-1)^k / k. Requires constant term 1.
Series log_series(const Series& s);

Series pow_series(const Series& s, int exponent);

/// Smallest graded-lex index (through the smaller truncation order) where
/// the coefficients differ, with both values; empty if none.
std::optional<SeriesMismatch> first_mismatch(const Series& a, const Series& b);

}  // namespace rpt

#endif
