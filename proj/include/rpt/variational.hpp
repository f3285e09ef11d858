#ifndef RPT_VARIATIONAL_HPP
#define RPT_VARIATIONAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "rpt/series.hpp"

namespace rpt {

/// The gauge-invariant second variation acts on monomials as
/// X^n -> n X^(n-2) (terms with n < 2 are annihilated) and extends
/// linearly. Univariate input; the truncation order drops by 2.
Series gi_second_variation(const Series& s);

/// n-fold composition of gi_second_variation. Requires truncation order
/// >= 2n.
Series gi_2n_variation(const Series& s, int n);

/// Multivariate form: diagonal powers (X_j)^n map to n (X_j)^(n-2)
/// per variable; mixed monomials are annihilated. That convention covers
/// exactly the diagonal sums the identity addresses and nothing more.
Series multivariate_2var(const Series& s);

/// exp(e^X - 1): the Bell-number EGF, built through the series engine.
Series vacuum_series(int order);

/// (e^X - 1) exp(e^X - 1).
Series mass_series(int order);

/// Sum B_n X^n / n! with B_n from the Bell triangle; an independent route
/// to the same coefficients as vacuum_series.
Series bell_series(int order);

/// Sum B_(n+2) X^n / (n+1)!.
Series shifted_bell_series(int order);

/// Constant coefficient of exp(e^X - 1); exactly 1.
Rational vacuum_norm_at_limit();

struct VariationReport {
  std::string identity;
  std::string members;
  int checked_order = 0;
  std::optional<SeriesMismatch> mismatch;
};

/// Pairwise audit of the three claimed members:
///   (i)   second variation of sum B_n X^n / n!
///   (ii)  sum B_(n+2) X^n / (n+1)!
///   (iii) (e^X - 1) exp(e^X - 1)
/// (i) and (ii) agree identically; the (ii)/(iii) comparison disagrees
/// from order 0 on, and the report documents that rather than asserting
/// the claimed equality.
struct TwoVarAudit {
  VariationReport variation_vs_reindexed;   // (i) vs (ii)
  VariationReport reindexed_vs_closed;      // (ii) vs (iii)
  VariationReport variation_vs_closed;      // (i) vs (iii)
};

/// Members compared through order N - 2. Requires N >= 4.
TwoVarAudit check_2var_identity(int order);

/// Compares the 2n-fold variation of exp(e^X - 1) against
/// (n-1)! (e^X - 1)^n exp(e^X - 1) through order N - 2n, reporting the
/// first mismatch at or above min_order. Requires N >= 2n + 2.
VariationReport check_2nvar_identity(int n, int order, int min_order = 0);

struct CoefficientDelta {
  int order = 0;
  Rational lhs;
  Rational rhs;
  Rational delta;
};

/// Per-order coefficient table for two univariate series through the
/// smaller truncation order.
std::vector<CoefficientDelta> coefficient_deltas(const Series& lhs, const Series& rhs);

}  // namespace rpt

#endif
