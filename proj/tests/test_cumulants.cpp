#include <doctest.h>

#include "oracles.hpp"
#include "rpt/combinatorics.hpp"
#include "rpt/cumulants.hpp"

using rpt::CumulantTable;
using rpt::MomentTable;
using rpt::MultiIndex;
using rpt::Rational;

namespace {

MomentTable gaussian_table() {
  // mu_1 = 0, mu_2 = 1, mu_3 = 0, mu_4 = 3.
  return MomentTable::make(1, 4,
                           {{{0}, Rational(1)}, {{2}, Rational(1)}, {{4}, Rational(3)}});
}

}  // namespace

TEST_CASE("table invariants") {
  CHECK_THROWS_AS(MomentTable::make(1, 2, {{{1}, Rational(1)}}), std::domain_error);
  CHECK_THROWS_AS(MomentTable::make(1, 2, {{{0}, Rational(2)}}), std::domain_error);
  CHECK_THROWS_AS(MomentTable::make(1, 2, {{{0}, Rational(1)}, {{3}, Rational(1)}}),
                  std::out_of_range);
  CHECK_THROWS_AS(CumulantTable::make(1, 2, {{{0}, Rational(1)}}), std::invalid_argument);

  const MomentTable t = gaussian_table();
  CHECK(t.moment({2}) == 1);
  CHECK(t.moment({3}) == 0);
  CHECK_THROWS_AS(t.moment({5}), std::out_of_range);
}

TEST_CASE("series conversion on fixtures") {
  const CumulantTable gaussian = cumulants_from_moments_series(gaussian_table());
  CHECK(gaussian.cumulant({2}) == 1);
  CHECK(gaussian.cumulant({3}) == 0);
  CHECK(gaussian.cumulant({4}) == 0);

  const MomentTable trivial = MomentTable::make(1, 4, {{{0}, Rational(1)}});
  CHECK(cumulants_from_moments_series(trivial).values().empty());

  // mu_n = 1 for all n: M = e^xi, so K = xi.
  const MomentTable ones = MomentTable::make(
      1, 4,
      {{{0}, Rational(1)}, {{1}, Rational(1)}, {{2}, Rational(1)}, {{3}, Rational(1)},
       {{4}, Rational(1)}});
  const CumulantTable linear = cumulants_from_moments_series(ones);
  CHECK(linear.cumulant({1}) == 1);
  CHECK(linear.cumulant({2}) == 0);
  CHECK(linear.cumulant({3}) == 0);
  CHECK(linear.cumulant({4}) == 0);
}

TEST_CASE("partition conversion on fixtures") {
  // kappa(1) = mu(1).
  const MomentTable first = MomentTable::make(1, 1, {{{0}, Rational(1)}, {{1}, Rational(7)}});
  CHECK(cumulants_from_moments_partition(first).cumulant({1}) == 7);

  // kappa(2) = mu(2) - mu(1)^2.
  const MomentTable second =
      MomentTable::make(1, 2, {{{0}, Rational(1)}, {{1}, Rational(3)}, {{2}, Rational(11)}});
  CHECK(cumulants_from_moments_partition(second).cumulant({2}) == 11 - 9);

  // Bivariate kappa(1,1) = mu(1,1) - mu(1,0) mu(0,1).
  const MomentTable pair = MomentTable::make(2, 2,
                                             {{{0, 0}, Rational(1)},
                                              {{1, 0}, Rational(2)},
                                              {{0, 1}, Rational(5)},
                                              {{1, 1}, Rational(13)}});
  CHECK(cumulants_from_moments_partition(pair).cumulant({1, 1}) == 13 - 10);
  CHECK(cumulants_from_moments_series(pair).cumulant({1, 1}) == 13 - 10);
}

TEST_CASE("moments from cumulants on fixtures") {
  // kappa_2 = 1 alone gives the Gaussian moments.
  const CumulantTable gaussian = CumulantTable::make(1, 4, {{{2}, Rational(1)}});
  const MomentTable moments = moments_from_cumulants(gaussian);
  CHECK(moments.moment({1}) == 0);
  CHECK(moments.moment({2}) == 1);
  CHECK(moments.moment({3}) == 0);
  CHECK(moments.moment({4}) == 3);

  const CumulantTable none = CumulantTable::make(2, 3, {});
  const MomentTable trivial = moments_from_cumulants(none);
  CHECK(trivial.values().size() == 1);  // just mu(0) = 1

  // kappa_n = 1 for all n <= 4: mu_n = B_n.
  const CumulantTable all_ones = CumulantTable::make(
      1, 4, {{{1}, Rational(1)}, {{2}, Rational(1)}, {{3}, Rational(1)}, {{4}, Rational(1)}});
  const MomentTable bells = moments_from_cumulants(all_ones);
  for (int n = 1; n <= 4; ++n) {
    CHECK(bells.moment({n}) == Rational(rpt::bell(n)));
  }
}

TEST_CASE("round trip and method agreement on random tables") {
  for (unsigned seed = 0; seed < 40; ++seed) {
    const int dim = 1 + static_cast<int>(seed % 3);
    const int order = dim == 3 ? 4 : 5;
    const MomentTable table = oracles::random_moment_table(dim, order, 500 + seed);
    CHECK(moments_from_cumulants(cumulants_from_moments_series(table)) == table);
    CHECK_FALSE(compare_cumulant_methods(table).has_value());
  }
}

TEST_CASE("type relabeling commutes with the conversions") {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const MomentTable table = oracles::random_moment_table(2, 4, 900 + seed);
    // Swap the two types.
    std::vector<std::pair<MultiIndex, Rational>> swapped;
    for (const auto& [index, value] : table.values()) {
      swapped.push_back({{index[1], index[0]}, value});
    }
    const MomentTable table_swapped = MomentTable::make(2, 4, swapped);
    const CumulantTable direct = cumulants_from_moments_series(table_swapped);
    const CumulantTable original = cumulants_from_moments_series(table);
    for (const auto& [index, value] : original.values()) {
      CHECK(direct.cumulant({index[1], index[0]}) == value);
    }
    CHECK(direct.values().size() == original.values().size());
  }
}

TEST_CASE("discrepancy probe distinguishes contract errors from mismatches") {
  CHECK_FALSE(compare_cumulant_methods(gaussian_table()).has_value());
  CHECK_THROWS_AS(MomentTable::make(1, 2, {{{0}, Rational(2)}, {{1}, Rational(1)}}),
                  std::domain_error);
}

TEST_CASE("independent unions have vanishing mixed cumulants") {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const MomentTable a = oracles::random_moment_table(1, 4, 1300 + seed);
    const MomentTable b = oracles::random_moment_table(1, 4, 1400 + seed);
    const auto report = between_group_cumulant_audit(a, b, 4);
    CHECK(report.empty());
  }

  const MomentTable a = oracles::random_moment_table(1, 4, 77);
  const MomentTable trivial = MomentTable::make(1, 4, {{{0}, Rational(1)}});
  CHECK(between_group_cumulant_audit(a, trivial, 4).empty());
}

TEST_CASE("a correlated joint table is reported") {
  // mu(1,1) != mu(1,0) mu(0,1).
  const MomentTable correlated = MomentTable::make(2, 2,
                                                   {{{0, 0}, Rational(1)},
                                                    {{1, 0}, Rational(1)},
                                                    {{0, 1}, Rational(1)},
                                                    {{1, 1}, Rational(3)}});
  const auto report = mixed_cumulant_report(correlated, 1, 2);
  REQUIRE(report.nonzero_mixed.size() == 1);
  CHECK(report.nonzero_mixed[0].first == MultiIndex{1, 1});
  CHECK(report.nonzero_mixed[0].second == 2);
}

TEST_CASE("vanishing mixed cumulants force factorization") {
  // Build a joint cumulant table with no mixed entries, convert to
  // moments, and confirm the product structure.
  const CumulantTable joint = CumulantTable::make(2, 4,
                                                  {{{1, 0}, Rational(2)},
                                                   {{2, 0}, Rational(1)},
                                                   {{0, 1}, Rational(-1)},
                                                   {{0, 3}, Rational(5)}});
  const MomentTable moments = moments_from_cumulants(joint);
  for (const auto& [index, value] : moments.values()) {
    const MultiIndex a{index[0], 0};
    const MultiIndex b{0, index[1]};
    CHECK(value == moments.moment(a) * moments.moment(b));
  }
}

TEST_CASE("product join validates orders") {
  const MomentTable a = oracles::random_moment_table(1, 3, 5);
  const MomentTable b = oracles::random_moment_table(1, 4, 6);
  CHECK_THROWS_AS(product_join(a, b, 4), std::out_of_range);
  CHECK_NOTHROW(product_join(a, b, 3));
}
