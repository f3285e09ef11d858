#include "rpt/cumulants.hpp"

#include <algorithm>
#include <stdexcept>

#include "rpt/combinatorics.hpp"

namespace rpt {

void validate_model(const ModelSpec& model) {
  if (model.dim_gauge < 1) throw std::invalid_argument("dim_gauge must be at least 1");
  if (model.dim_matter < 0) throw std::invalid_argument("dim_matter must be non-negative");
}

namespace {

void check_table_index(const MultiIndex& index, int num_types, int max_order) {
  if (static_cast<int>(index.size()) != num_types) {
    throw std::invalid_argument("table index length does not match type count");
  }
  for (int e : index) {
    if (e < 0) throw std::invalid_argument("negative entry in table index");
  }
  if (total_order(index) > max_order) {
    throw std::out_of_range("table index exceeds max order");
  }
}

Rational index_factorial(const MultiIndex& index) {
  Rational f(1);
  for (int e : index) f *= Rational(factorial(e));
  return f;
}

}  // namespace

MomentTable MomentTable::make(int num_types, int max_order,
                              const std::vector<std::pair<MultiIndex, Rational>>& values) {
  if (num_types < 1) throw std::invalid_argument("moment table needs at least one type");
  if (max_order < 0) throw std::invalid_argument("negative max order");
  MomentTable t(num_types, max_order);
  for (const auto& [index, value] : values) {
    check_table_index(index, num_types, max_order);
    if (value == 0) continue;
    Rational reduced = value;
    reduced.canonicalize();
    if (!t.values_.emplace(index, reduced).second) {
      throw std::invalid_argument("duplicate moment entry");
    }
  }
  const MultiIndex zero(static_cast<size_t>(num_types), 0);
  auto it = t.values_.find(zero);
  if (it == t.values_.end() || it->second != 1) {
    throw std::domain_error("moment table is not normalized: mu(0) must be 1");
  }
  return t;
}

Rational MomentTable::moment(const MultiIndex& index) const {
  check_table_index(index, num_types_, max_order_);
  auto it = values_.find(index);
  return it == values_.end() ? Rational(0) : it->second;
}

bool MomentTable::operator==(const MomentTable& other) const {
  return num_types_ == other.num_types_ && max_order_ == other.max_order_ &&
         values_ == other.values_;
}

CumulantTable CumulantTable::make(int num_types, int max_order,
                                  const std::vector<std::pair<MultiIndex, Rational>>& values) {
  if (num_types < 1) throw std::invalid_argument("cumulant table needs at least one type");
  if (max_order < 0) throw std::invalid_argument("negative max order");
  CumulantTable t(num_types, max_order);
  for (const auto& [index, value] : values) {
    check_table_index(index, num_types, max_order);
    if (total_order(index) == 0) {
      throw std::invalid_argument("the zero index is omitted from cumulant tables");
    }
    if (value == 0) continue;
    Rational reduced = value;
    reduced.canonicalize();
    if (!t.values_.emplace(index, reduced).second) {
      throw std::invalid_argument("duplicate cumulant entry");
    }
  }
  return t;
}

Rational CumulantTable::cumulant(const MultiIndex& index) const {
  check_table_index(index, num_types_, max_order_);
  auto it = values_.find(index);
  return it == values_.end() ? Rational(0) : it->second;
}

bool CumulantTable::operator==(const CumulantTable& other) const {
  return num_types_ == other.num_types_ && max_order_ == other.max_order_ &&
         values_ == other.values_;
}

CumulantTable cumulants_from_moments_series(const MomentTable& moments) {
  std::vector<std::pair<MultiIndex, Rational>> coeffs;
  coeffs.reserve(moments.values().size());
  for (const auto& [index, value] : moments.values()) {
    coeffs.emplace_back(index, value / index_factorial(index));
  }
  const Series m = Series::make(moments.num_types(), moments.max_order(), coeffs);
  const Series k = log_series(m);
  std::vector<std::pair<MultiIndex, Rational>> out;
  out.reserve(k.coefficients().size());
  for (const auto& [index, value] : k.coefficients()) {
    out.emplace_back(index, value * index_factorial(index));
  }
  return CumulantTable::make(moments.num_types(), moments.max_order(), out);
}

namespace {

// All nonzero indices m <= bound componentwise with nonzero moment,
// graded-lex ordered; zero-moment blocks cannot contribute.
std::vector<MultiIndex> block_candidates(const MomentTable& moments, const MultiIndex& bound) {
  std::vector<MultiIndex> out;
  MultiIndex current(bound.size(), 0);
  while (true) {
    // Odometer over the box [0, bound].
    size_t pos = 0;
    while (pos < current.size()) {
      if (current[pos] < bound[pos]) {
        ++current[pos];
        break;
      }
      current[pos] = 0;
      ++pos;
    }
    if (pos == current.size()) break;
    if (moments.moment(current) != 0) out.push_back(current);
  }
  std::sort(out.begin(), out.end(), GradedLexLess{});
  return out;
}

// Recursion over multisets of block compositions: at `pos` choose how many
// blocks of composition candidates[pos] appear, then move on.
void partition_sum(const MomentTable& moments, const std::vector<MultiIndex>& candidates,
                   size_t pos, MultiIndex& remaining, int blocks_so_far, const Rational& weight,
                   Rational& accum) {
  if (total_order(remaining) == 0) {
    // weight carries prod mu(m_i)^k_i / (k_i! (m_i!)^k_i); attach the
    // (p-1)! (-1)^(p-1) partition-count factor.
    Rational sign(blocks_so_far % 2 == 1 ? 1 : -1);
    accum += sign * Rational(factorial(blocks_so_far - 1)) * weight;
    return;
  }
  if (pos == candidates.size()) return;
  const MultiIndex& block = candidates[pos];
  // Multiplicity 0 first.
  partition_sum(moments, candidates, pos + 1, remaining, blocks_so_far, weight, accum);
  const Rational mu = moments.moment(block);
  const Rational block_factorial = index_factorial(block);
  Rational factor(1);
  MultiIndex saved = remaining;
  int k = 0;
  while (true) {
    bool fits = true;
    for (size_t j = 0; j < remaining.size(); ++j) {
      if (remaining[j] < block[j]) {
        fits = false;
        break;
      }
    }
    if (!fits) break;
    for (size_t j = 0; j < remaining.size(); ++j) remaining[j] -= block[j];
    ++k;
    factor *= mu / (Rational(k) * block_factorial);
    partition_sum(moments, candidates, pos + 1, remaining, blocks_so_far + k, weight * factor,
                  accum);
  }
  remaining = saved;
}

}  // namespace

CumulantTable cumulants_from_moments_partition(const MomentTable& moments) {
  std::vector<std::pair<MultiIndex, Rational>> out;
  MultiIndex nu(static_cast<size_t>(moments.num_types()), 0);
  // Walk every index of total order 1..max_order.
  const std::function<void(size_t, int)> walk = [&](size_t pos, int budget) {
    if (pos + 1 == nu.size()) {
      for (int e = 0; e <= budget; ++e) {
        nu[pos] = e;
        if (total_order(nu) == 0) continue;
        const std::vector<MultiIndex> candidates = block_candidates(moments, nu);
        Rational sum(0);
        MultiIndex remaining = nu;
        partition_sum(moments, candidates, 0, remaining, 0, Rational(1), sum);
        sum *= index_factorial(nu);
        if (sum != 0) out.emplace_back(nu, sum);
      }
      nu[pos] = 0;
      return;
    }
    for (int e = 0; e <= budget; ++e) {
      nu[pos] = e;
      walk(pos + 1, budget - e);
    }
    nu[pos] = 0;
  };
  walk(0, moments.max_order());
  return CumulantTable::make(moments.num_types(), moments.max_order(), out);
}

MomentTable moments_from_cumulants(const CumulantTable& cumulants) {
  std::vector<std::pair<MultiIndex, Rational>> coeffs;
  coeffs.reserve(cumulants.values().size());
  for (const auto& [index, value] : cumulants.values()) {
    coeffs.emplace_back(index, value / index_factorial(index));
  }
  const Series k = Series::make(cumulants.num_types(), cumulants.max_order(), coeffs);
  const Series m = exp_series(k);
  std::vector<std::pair<MultiIndex, Rational>> out;
  out.reserve(m.coefficients().size());
  for (const auto& [index, value] : m.coefficients()) {
    out.emplace_back(index, value * index_factorial(index));
  }
  return MomentTable::make(cumulants.num_types(), cumulants.max_order(), out);
}

std::optional<MethodDiscrepancy> compare_cumulant_methods(const MomentTable& moments) {
  const CumulantTable by_partition = cumulants_from_moments_partition(moments);
  const CumulantTable by_series = cumulants_from_moments_series(moments);
  auto ip = by_partition.values().begin();
  auto is = by_series.values().begin();
  const auto ep = by_partition.values().end();
  const auto es = by_series.values().end();
  const GradedLexLess less;
  while (ip != ep || is != es) {
    if (is == es || (ip != ep && less(ip->first, is->first))) {
      return MethodDiscrepancy{ip->first, ip->second, Rational(0)};
    }
    if (ip == ep || less(is->first, ip->first)) {
      return MethodDiscrepancy{is->first, Rational(0), is->second};
    }
    if (ip->second != is->second) {
      return MethodDiscrepancy{ip->first, ip->second, is->second};
    }
    ++ip;
    ++is;
  }
  return std::nullopt;
}

MomentTable product_join(const MomentTable& a, const MomentTable& b, int max_order) {
  if (max_order < 0) throw std::invalid_argument("negative max order");
  if (max_order > a.max_order() || max_order > b.max_order()) {
    throw std::out_of_range("joint order exceeds an operand's max order");
  }
  std::vector<std::pair<MultiIndex, Rational>> values;
  for (const auto& [ia, va] : a.values()) {
    const int oa = total_order(ia);
    if (oa > max_order) continue;
    for (const auto& [ib, vb] : b.values()) {
      if (oa + total_order(ib) > max_order) continue;
      MultiIndex joint = ia;
      joint.insert(joint.end(), ib.begin(), ib.end());
      values.emplace_back(std::move(joint), va * vb);
    }
  }
  return MomentTable::make(a.num_types() + b.num_types(), max_order, values);
}

MixedCumulantReport mixed_cumulant_report(const MomentTable& joint, int group_a_types,
                                          int max_order) {
  if (group_a_types < 1 || group_a_types >= joint.num_types()) {
    throw std::invalid_argument("group split must leave both groups nonempty");
  }
  if (max_order > joint.max_order()) {
    throw std::out_of_range("audit order exceeds the joint table's max order");
  }
  MixedCumulantReport report;
  report.group_a_types = group_a_types;
  report.group_b_types = joint.num_types() - group_a_types;
  report.max_order = max_order;
  const CumulantTable cumulants = cumulants_from_moments_series(joint);
  for (const auto& [index, value] : cumulants.values()) {
    if (total_order(index) > max_order) continue;
    int in_a = 0;
    int in_b = 0;
    for (int j = 0; j < joint.num_types(); ++j) {
      if (index[static_cast<size_t>(j)] > 0) {
        (j < group_a_types ? in_a : in_b) += 1;
      }
    }
    if (in_a > 0 && in_b > 0) report.nonzero_mixed.emplace_back(index, value);
  }
  return report;
}

MixedCumulantReport between_group_cumulant_audit(const MomentTable& a, const MomentTable& b,
                                                 int max_order) {
  return mixed_cumulant_report(product_join(a, b, max_order), a.num_types(), max_order);
}

}  // namespace rpt
