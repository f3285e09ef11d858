#include "rpt/combinatorics.hpp"

#include <mpfr.h>

#include <algorithm>
#include <stdexcept>

namespace rpt {

SetPartitionGenerator::SetPartitionGenerator(int n, int cap) : n_(n), done_(false) {
  if (n < 0) throw std::invalid_argument("negative partition ground-set size");
  if (n > cap) {
    throw std::domain_error("set-partition enumeration above the cap of " + std::to_string(cap) +
                            " elements; raise the cap explicitly if intended");
  }
  rgs_.assign(static_cast<size_t>(n), 0);
  prefix_max_.assign(static_cast<size_t>(n), 0);
}

bool SetPartitionGenerator::next(SetPartition& out) {
  if (done_) return false;
  out.blocks.clear();
  for (int i = 0; i < n_; ++i) {
    const int block = rgs_[static_cast<size_t>(i)];
    if (block == static_cast<int>(out.blocks.size())) out.blocks.emplace_back();
    out.blocks[static_cast<size_t>(block)].push_back(i + 1);
  }
  // Advance the restricted-growth string: rightmost position that can be
  // incremented, suffix reset to zero.
  int i = n_ - 1;
  while (i >= 1 && rgs_[static_cast<size_t>(i)] > prefix_max_[static_cast<size_t>(i - 1)]) --i;
  if (i < 1) {
    done_ = true;
    return true;
  }
  rgs_[static_cast<size_t>(i)] += 1;
  prefix_max_[static_cast<size_t>(i)] =
      std::max(prefix_max_[static_cast<size_t>(i - 1)], rgs_[static_cast<size_t>(i)]);
  for (int j = i + 1; j < n_; ++j) {
    rgs_[static_cast<size_t>(j)] = 0;
    prefix_max_[static_cast<size_t>(j)] = prefix_max_[static_cast<size_t>(j - 1)];
  }
  return true;
}

void for_each_set_partition(int n, const std::function<void(const SetPartition&)>& visit,
                            int cap) {
  SetPartitionGenerator gen(n, cap);
  SetPartition p;
  while (gen.next(p)) visit(p);
}

std::vector<BigInt> bell_table(int max_n) {
  if (max_n < 0) throw std::invalid_argument("negative Bell index");
  std::vector<BigInt> bells;
  bells.reserve(static_cast<size_t>(max_n) + 1);
  bells.push_back(1);
  std::vector<BigInt> row{1};
  for (int n = 1; n <= max_n; ++n) {
    std::vector<BigInt> next_row;
    next_row.reserve(row.size() + 1);
    next_row.push_back(row.back());
    for (const BigInt& entry : row) next_row.push_back(next_row.back() + entry);
    row = std::move(next_row);
    bells.push_back(row.front());
  }
  return bells;
}

BigInt bell(int n) { return bell_table(n).back(); }

BigInt double_factorial(int n) {
  if (n < -1) throw std::invalid_argument("double factorial below -1");
  BigInt result = 1;
  for (int k = n; k >= 2; k -= 2) result *= k;
  return result;
}

BigInt multinomial(const std::vector<int>& counts) {
  int sum = 0;
  for (int c : counts) {
    if (c < 0) throw std::invalid_argument("negative multinomial count");
    sum += c;
  }
  BigInt result = factorial(sum);
  for (int c : counts) {
    BigInt f = factorial(c);
    mpz_divexact(result.get_mpz_t(), result.get_mpz_t(), f.get_mpz_t());
  }
  return result;
}

namespace {

// Minimal RAII for a set of mpfr variables at one precision.
class MpfrVar {
 public:
  explicit MpfrVar(mpfr_prec_t prec) { mpfr_init2(value_, prec); }
  ~MpfrVar() { mpfr_clear(value_); }
  MpfrVar(const MpfrVar&) = delete;
  MpfrVar& operator=(const MpfrVar&) = delete;
  mpfr_ptr get() { return value_; }

 private:
  mpfr_t value_;
};

Rational to_rational(mpfr_ptr x) {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), x);
  return q;
}

}  // namespace

DobinskiApproximation dobinski_partial(int n, int terms, int precision_bits) {
  if (n < 0) throw std::invalid_argument("negative Bell index");
  if (terms < 1) throw std::invalid_argument("dobinski_partial needs at least one term");
  if (precision_bits < 64) throw std::invalid_argument("precision below 64 bits");
  if (terms < 2 * n || terms < 2) {
    throw std::domain_error(
        "truncation too short to certify the tail bound (needs terms >= max(2n, 2))");
  }
  const auto prec = static_cast<mpfr_prec_t>(precision_bits);
  MpfrVar sum_lo(prec), sum_hi(prec);
  MpfrVar fact_lo(prec), fact_hi(prec);
  MpfrVar power_lo(prec), power_hi(prec);
  MpfrVar term(prec), scratch(prec);
  mpfr_set_ui(sum_lo.get(), 0, MPFR_RNDD);
  mpfr_set_ui(sum_hi.get(), 0, MPFR_RNDU);
  mpfr_set_ui(fact_lo.get(), 1, MPFR_RNDD);
  mpfr_set_ui(fact_hi.get(), 1, MPFR_RNDU);
  for (int j = 0; j <= terms; ++j) {
    if (j > 0) {
      mpfr_mul_ui(fact_lo.get(), fact_lo.get(), static_cast<unsigned long>(j), MPFR_RNDD);
      mpfr_mul_ui(fact_hi.get(), fact_hi.get(), static_cast<unsigned long>(j), MPFR_RNDU);
    }
    // j^n / j!, rounded down (num down / den up) and up (num up / den down).
    mpfr_ui_pow_ui(power_lo.get(), static_cast<unsigned long>(j), static_cast<unsigned long>(n),
                   MPFR_RNDD);
    mpfr_ui_pow_ui(power_hi.get(), static_cast<unsigned long>(j), static_cast<unsigned long>(n),
                   MPFR_RNDU);
    mpfr_div(term.get(), power_lo.get(), fact_hi.get(), MPFR_RNDD);
    mpfr_add(sum_lo.get(), sum_lo.get(), term.get(), MPFR_RNDD);
    mpfr_div(term.get(), power_hi.get(), fact_lo.get(), MPFR_RNDU);
    mpfr_add(sum_hi.get(), sum_hi.get(), term.get(), MPFR_RNDU);
  }
  // Enclosure of e^-1.
  MpfrVar einv_lo(prec), einv_hi(prec);
  mpfr_set_ui(scratch.get(), 1, MPFR_RNDU);
  mpfr_exp(scratch.get(), scratch.get(), MPFR_RNDU);
  mpfr_ui_div(einv_lo.get(), 1, scratch.get(), MPFR_RNDD);
  mpfr_set_ui(scratch.get(), 1, MPFR_RNDD);
  mpfr_exp(scratch.get(), scratch.get(), MPFR_RNDD);
  mpfr_ui_div(einv_hi.get(), 1, scratch.get(), MPFR_RNDU);

  MpfrVar lo(prec), hi(prec);
  mpfr_mul(lo.get(), sum_lo.get(), einv_lo.get(), MPFR_RNDD);
  mpfr_mul(hi.get(), sum_hi.get(), einv_hi.get(), MPFR_RNDU);

  // Tail of the full Dobinski series: sum_{j>terms} j^n/j! <= 2 terms^n/terms!
  // once terms >= max(2n, 2), since successive ratios stay below 1/2.
  MpfrVar tail(prec);
  mpfr_ui_pow_ui(tail.get(), static_cast<unsigned long>(terms), static_cast<unsigned long>(n),
                 MPFR_RNDU);
  mpfr_div(tail.get(), tail.get(), fact_lo.get(), MPFR_RNDU);
  mpfr_mul_ui(tail.get(), tail.get(), 2, MPFR_RNDU);
  mpfr_mul(tail.get(), tail.get(), einv_hi.get(), MPFR_RNDU);
  mpfr_add(hi.get(), hi.get(), tail.get(), MPFR_RNDU);

  const Rational lower = to_rational(lo.get());
  const Rational upper = to_rational(hi.get());
  DobinskiApproximation out;
  out.value = (lower + upper) / 2;
  out.error_bound = (upper - lower) / 2;
  return out;
}

}  // namespace rpt
