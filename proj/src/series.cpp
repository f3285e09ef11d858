#include "rpt/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace rpt {

int total_order(const MultiIndex& index) {
  int sum = 0;
  for (int e : index) sum += e;
  return sum;
}

bool GradedLexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const int ta = total_order(a);
  const int tb = total_order(b);
  if (ta != tb) return ta < tb;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

void check_index(const MultiIndex& index, int num_vars) {
  if (static_cast<int>(index.size()) != num_vars) {
    throw std::invalid_argument("multi-index length does not match variable count");
  }
  for (int e : index) {
    if (e < 0) throw std::invalid_argument("negative exponent in multi-index");
  }
}

}  // namespace

Series::Series(int num_vars, int truncation_order)
    : num_vars_(num_vars), truncation_order_(truncation_order) {
  if (num_vars < 1) throw std::invalid_argument("series needs at least one variable");
  if (truncation_order < 0) throw std::invalid_argument("negative truncation order");
}

void Series::insert(const MultiIndex& index, const Rational& value) {
  if (value == 0) return;
  Rational reduced = value;
  reduced.canonicalize();
  auto [it, inserted] = coeffs_.emplace(index, reduced);
  if (!inserted) {
    it->second += reduced;
    if (it->second == 0) coeffs_.erase(it);
  }
}

Series Series::make(int num_vars, int truncation_order,
                    const std::vector<std::pair<MultiIndex, Rational>>& coeffs) {
  Series s(num_vars, truncation_order);
  for (const auto& [index, value] : coeffs) {
    check_index(index, num_vars);
    if (total_order(index) > truncation_order) {
      throw std::out_of_range("coefficient index exceeds truncation order");
    }
    s.insert(index, value);
  }
  return s;
}

Series Series::constant(int num_vars, int truncation_order, const Rational& value) {
  return make(num_vars, truncation_order, {{MultiIndex(num_vars, 0), value}});
}

Series Series::variable(int num_vars, int var, int truncation_order) {
  if (var < 0 || var >= num_vars) throw std::invalid_argument("variable index out of range");
  MultiIndex index(num_vars, 0);
  index[var] = 1;
  return make(num_vars, truncation_order, {{index, Rational(1)}});
}

Rational Series::coefficient(const MultiIndex& index) const {
  check_index(index, num_vars_);
  if (total_order(index) > truncation_order_) {
    throw std::out_of_range("coefficient beyond truncation order is not determined");
  }
  auto it = coeffs_.find(index);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

Series Series::truncated(int new_order) const {
  if (new_order < 0) throw std::invalid_argument("negative truncation order");
  Series out(num_vars_, std::min(new_order, truncation_order_));
  for (const auto& [index, value] : coeffs_) {
    if (total_order(index) <= out.truncation_order_) out.coeffs_.emplace(index, value);
  }
  return out;
}

bool Series::operator==(const Series& other) const {
  return num_vars_ == other.num_vars_ && truncation_order_ == other.truncation_order_ &&
         coeffs_ == other.coeffs_;
}

namespace {

void check_compatible(const Series& a, const Series& b) {
  if (a.num_vars() != b.num_vars()) {
    throw std::invalid_argument("variable-count mismatch between series");
  }
}

}  // namespace

Series operator+(const Series& a, const Series& b) {
  check_compatible(a, b);
  Series out(a.num_vars(), std::min(a.truncation_order(), b.truncation_order()));
  for (const auto& [index, value] : a.coefficients()) {
    if (total_order(index) <= out.truncation_order_) out.insert(index, value);
  }
  for (const auto& [index, value] : b.coefficients()) {
    if (total_order(index) <= out.truncation_order_) out.insert(index, value);
  }
  return out;
}

Series operator-(const Series& a, const Series& b) { return a + Rational(-1) * b; }

Series operator*(const Series& a, const Series& b) {
  check_compatible(a, b);
  Series out(a.num_vars(), std::min(a.truncation_order(), b.truncation_order()));
  MultiIndex sum(a.num_vars());
  for (const auto& [ia, va] : a.coefficients()) {
    const int order_a = total_order(ia);
    if (order_a > out.truncation_order_) continue;
    for (const auto& [ib, vb] : b.coefficients()) {
      if (order_a + total_order(ib) > out.truncation_order_) continue;
      for (int k = 0; k < a.num_vars(); ++k) sum[k] = ia[k] + ib[k];
      out.insert(sum, va * vb);
    }
  }
  return out;
}

Series operator*(const Rational& scalar, const Series& s) {
  Series out(s.num_vars(), s.truncation_order());
  if (scalar == 0) return out;
  for (const auto& [index, value] : s.coefficients()) out.coeffs_.emplace(index, scalar * value);
  return out;
}

Series exp_series(const Series& s) {
  const MultiIndex zero(s.num_vars(), 0);
  if (s.coefficient(zero) != 0) {
    throw std::domain_error("exp_series requires a vanishing constant term");
  }
  const int order = s.truncation_order();
  Series result = Series::constant(s.num_vars(), order, Rational(1));
  Series power = result;
  Rational inv_factorial(1);
  for (int k = 1; k <= order; ++k) {
    power = power * s;
    if (power.coefficients().empty()) break;
    inv_factorial /= k;
    result = result + inv_factorial * power;
  }
  return result;
}

Series log_series(const Series& s) {
  const MultiIndex zero(s.num_vars(), 0);
  if (s.coefficient(zero) != 1) {
    throw std::domain_error("log_series requires constant term 1");
  }
  const int order = s.truncation_order();
  const Series u = s - Series::constant(s.num_vars(), order, Rational(1));
  Series result(s.num_vars(), order);
  Series power = Series::constant(s.num_vars(), order, Rational(1));
  for (int k = 1; k <= order; ++k) {
    power = power * u;
    if (power.coefficients().empty()) break;
    Rational coeff(k % 2 == 1 ? 1 : -1, k);
    coeff.canonicalize();
    result = result + coeff * power;
  }
  return result;
}

Series pow_series(const Series& s, int exponent) {
  if (exponent < 0) throw std::invalid_argument("negative series power");
  Series result = Series::constant(s.num_vars(), s.truncation_order(), Rational(1));
  for (int k = 0; k < exponent; ++k) result = result * s;
  return result;
}

std::optional<SeriesMismatch> first_mismatch(const Series& a, const Series& b) {
  check_compatible(a, b);
  const int order = std::min(a.truncation_order(), b.truncation_order());
  const GradedLexLess less;
  auto ia = a.coefficients().begin();
  auto ib = b.coefficients().begin();
  const auto ea = a.coefficients().end();
  const auto eb = b.coefficients().end();
  while (ia != ea || ib != eb) {
    // Skip entries beyond the comparable order.
    if (ia != ea && total_order(ia->first) > order) {
      ++ia;
      continue;
    }
    if (ib != eb && total_order(ib->first) > order) {
      ++ib;
      continue;
    }
    if (ia == ea && ib == eb) break;
    if (ib == eb || (ia != ea && less(ia->first, ib->first))) {
      return SeriesMismatch{ia->first, ia->second, Rational(0)};
    }
    if (ia == ea || less(ib->first, ia->first)) {
      return SeriesMismatch{ib->first, Rational(0), ib->second};
    }
    if (ia->second != ib->second) {
      return SeriesMismatch{ia->first, ia->second, ib->second};
    }
    ++ia;
    ++ib;
  }
  return std::nullopt;
}

}  // namespace rpt
