#ifndef RPT_CUMULANTS_HPP
#define RPT_CUMULANTS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "rpt/series.hpp"

namespace rpt {

/// Particle-type bookkeeping. Tables and diagrams index their types into
/// the combined range [0, num_types()).
struct ModelSpec {
  int dim_gauge = 1;
  int dim_matter = 0;
  Rational coupling = Rational(0);

  int num_types() const { return dim_gauge + dim_matter; }
};

void validate_model(const ModelSpec& model);

/// Moments mu(nu) = <X_1^nu_1 ... X_d^nu_d>, normalized so mu(0) = 1.
/// Entries absent at order <= max_order are exact zeros.
class MomentTable {
 public:
  static MomentTable make(int num_types, int max_order,
                          const std::vector<std::pair<MultiIndex, Rational>>& values);

  int num_types() const { return num_types_; }
  int max_order() const { return max_order_; }
  const CoefficientMap& values() const { return values_; }

  /// Zero if absent; throws std::out_of_range beyond max_order.
  Rational moment(const MultiIndex& index) const;

  bool operator==(const MomentTable& other) const;

 private:
  MomentTable(int num_types, int max_order) : num_types_(num_types), max_order_(max_order) {}

  int num_types_;
  int max_order_;
  CoefficientMap values_;
};

/// Cumulants kappa(nu); the zero index is omitted by definition.
class CumulantTable {
 public:
  static CumulantTable make(int num_types, int max_order,
                            const std::vector<std::pair<MultiIndex, Rational>>& values);

  int num_types() const { return num_types_; }
  int max_order() const { return max_order_; }
  const CoefficientMap& values() const { return values_; }

  Rational cumulant(const MultiIndex& index) const;

  bool operator==(const CumulantTable& other) const;

 private:
  CumulantTable(int num_types, int max_order) : num_types_(num_types), max_order_(max_order) {}

  int num_types_;
  int max_order_;
  CoefficientMap values_;
};

/// kappa via K = log M on the generating-function series. This route is
/// the project's ground truth for cumulants.
CumulantTable cumulants_from_moments_series(const MomentTable& moments);

/// kappa via the partition sum in multiplicity form: for each nu,
///   kappa(nu) = nu! * sum over multisets {(m_i, k_i)} with sum k_i m_i = nu
///               of (p-1)! (-1)^(p-1) prod_i mu(m_i)^k_i / (k_i! (m_i!)^k_i),
/// p = sum k_i, m! = prod_j m_j!. Must agree exactly with the series route.
CumulantTable cumulants_from_moments_partition(const MomentTable& moments);

/// M = exp K; inverse of either conversion above.
MomentTable moments_from_cumulants(const CumulantTable& cumulants);

struct MethodDiscrepancy {
  MultiIndex index;
  Rational partition_value;
  Rational series_value;
};

/// First graded-lex index where the partition formula and the series
/// logarithm disagree, or empty when they agree everywhere.
std::optional<MethodDiscrepancy> compare_cumulant_methods(const MomentTable& moments);

/// Joint table of an independent union: mu(nu_a, nu_b) = mu_a(nu_a) mu_b(nu_b).
/// Requires max_order <= min of the operand orders.
MomentTable product_join(const MomentTable& a, const MomentTable& b, int max_order);

struct MixedCumulantReport {
  int group_a_types = 0;
  int group_b_types = 0;
  int max_order = 0;
  /// Graded-lex list of indices touching both groups with nonzero
  /// cumulant. Independence of the two groups makes this empty.
  std::vector<std::pair<MultiIndex, Rational>> nonzero_mixed;

  bool empty() const { return nonzero_mixed.empty(); }
};

/// Audits an arbitrary joint table whose first group_a_types variables
/// form group A and the rest group B.
MixedCumulantReport mixed_cumulant_report(const MomentTable& joint, int group_a_types,
                                          int max_order);

/// Forms the independent union of two tables and audits it; the report
/// must come back empty.
MixedCumulantReport between_group_cumulant_audit(const MomentTable& a, const MomentTable& b,
                                                 int max_order);

}  // namespace rpt

#endif
