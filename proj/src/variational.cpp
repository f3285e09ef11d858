#include "rpt/variational.hpp"

#include <algorithm>
#include <stdexcept>

#include "rpt/combinatorics.hpp"

namespace rpt {

Series gi_second_variation(const Series& s) {
  if (s.num_vars() != 1) {
    throw std::invalid_argument("the second variation acts on univariate series");
  }
  const int order = std::max(s.truncation_order() - 2, 0);
  std::vector<std::pair<MultiIndex, Rational>> coeffs;
  for (const auto& [index, value] : s.coefficients()) {
    const int n = index[0];
    if (n < 2) continue;
    coeffs.emplace_back(MultiIndex{n - 2}, Rational(n) * value);
  }
  return Series::make(1, order, coeffs);
}

Series gi_2n_variation(const Series& s, int n) {
  if (n < 1) throw std::invalid_argument("variation order must be at least 1");
  if (s.truncation_order() < 2 * n) {
    throw std::out_of_range("truncation order insufficient for a 2n-fold variation");
  }
  Series out = s;
  for (int k = 0; k < n; ++k) out = gi_second_variation(out);
  return out;
}

Series multivariate_2var(const Series& s) {
  const int order = std::max(s.truncation_order() - 2, 0);
  std::vector<std::pair<MultiIndex, Rational>> coeffs;
  for (const auto& [index, value] : s.coefficients()) {
    int active = -1;
    bool diagonal = true;
    for (size_t j = 0; j < index.size(); ++j) {
      if (index[j] == 0) continue;
      if (active >= 0) {
        diagonal = false;
        break;
      }
      active = static_cast<int>(j);
    }
    // Mixed monomials are annihilated; only diagonal powers are addressed.
    if (!diagonal || active < 0) continue;
    const int n = index[static_cast<size_t>(active)];
    if (n < 2) continue;
    MultiIndex shifted = index;
    shifted[static_cast<size_t>(active)] = n - 2;
    coeffs.emplace_back(std::move(shifted), Rational(n) * value);
  }
  return Series::make(s.num_vars(), order, coeffs);
}

namespace {

Series exp_minus_one(int order) {
  std::vector<std::pair<MultiIndex, Rational>> coeffs;
  for (int n = 1; n <= order; ++n) {
    Rational c(1);
    c /= Rational(factorial(n));
    coeffs.emplace_back(MultiIndex{n}, c);
  }
  return Series::make(1, order, coeffs);
}

}  // namespace

Series vacuum_series(int order) { return exp_series(exp_minus_one(order)); }

Series mass_series(int order) { return exp_minus_one(order) * vacuum_series(order); }

Series bell_series(int order) {
  const std::vector<BigInt> bells = bell_table(order);
  std::vector<std::pair<MultiIndex, Rational>> coeffs;
  for (int n = 0; n <= order; ++n) {
    Rational c(bells[static_cast<size_t>(n)]);
    c /= Rational(factorial(n));
    coeffs.emplace_back(MultiIndex{n}, c);
  }
  return Series::make(1, order, coeffs);
}

Series shifted_bell_series(int order) {
  const std::vector<BigInt> bells = bell_table(order + 2);
  std::vector<std::pair<MultiIndex, Rational>> coeffs;
  for (int n = 0; n <= order; ++n) {
    Rational c(bells[static_cast<size_t>(n + 2)]);
    c /= Rational(factorial(n + 1));
    coeffs.emplace_back(MultiIndex{n}, c);
  }
  return Series::make(1, order, coeffs);
}

Rational vacuum_norm_at_limit() { return vacuum_series(2).coefficient(MultiIndex{0}); }

namespace {

VariationReport report_for(const std::string& identity, const std::string& members,
                           const Series& lhs, const Series& rhs) {
  VariationReport report;
  report.identity = identity;
  report.members = members;
  report.checked_order = std::min(lhs.truncation_order(), rhs.truncation_order());
  report.mismatch = first_mismatch(lhs, rhs);
  return report;
}

}  // namespace

TwoVarAudit check_2var_identity(int order) {
  if (order < 4) throw std::invalid_argument("the two-variation audit needs order >= 4");
  const Series variation = gi_second_variation(bell_series(order));
  const Series reindexed = shifted_bell_series(order - 2);
  const Series closed = mass_series(order).truncated(order - 2);
  TwoVarAudit audit;
  audit.variation_vs_reindexed = report_for("2var", "(i) vs (ii)", variation, reindexed);
  audit.reindexed_vs_closed = report_for("2var", "(ii) vs (iii)", reindexed, closed);
  audit.variation_vs_closed = report_for("2var", "(i) vs (iii)", variation, closed);
  return audit;
}

VariationReport check_2nvar_identity(int n, int order, int min_order) {
  if (n < 1) throw std::invalid_argument("variation order must be at least 1");
  if (order < 2 * n + 2) {
    throw std::out_of_range("the 2n-variation audit needs order >= 2n + 2");
  }
  if (min_order < 0) throw std::invalid_argument("negative comparison floor");
  const int compare_order = order - 2 * n;
  const Series lhs = gi_2n_variation(vacuum_series(order), n);
  Rational scale(factorial(n - 1));
  const Series rhs =
      (scale * (pow_series(exp_minus_one(order), n) * vacuum_series(order))).truncated(compare_order);
  VariationReport report;
  report.identity = "2nvar";
  report.members = "variation vs closed form (n=" + std::to_string(n) + ")";
  report.checked_order = compare_order;
  if (min_order == 0) {
    report.mismatch = first_mismatch(lhs, rhs);
  } else {
    for (const CoefficientDelta& d : coefficient_deltas(lhs, rhs)) {
      if (d.order < min_order) continue;
      if (d.delta != 0) {
        report.mismatch = SeriesMismatch{MultiIndex{d.order}, d.lhs, d.rhs};
        break;
      }
    }
  }
  return report;
}

std::vector<CoefficientDelta> coefficient_deltas(const Series& lhs, const Series& rhs) {
  if (lhs.num_vars() != 1 || rhs.num_vars() != 1) {
    throw std::invalid_argument("delta tables are univariate");
  }
  const int order = std::min(lhs.truncation_order(), rhs.truncation_order());
  std::vector<CoefficientDelta> out;
  out.reserve(static_cast<size_t>(order) + 1);
  for (int n = 0; n <= order; ++n) {
    CoefficientDelta d;
    d.order = n;
    d.lhs = lhs.coefficient(MultiIndex{n});
    d.rhs = rhs.coefficient(MultiIndex{n});
    d.delta = d.lhs - d.rhs;
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace rpt
