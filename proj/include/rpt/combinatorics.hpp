#ifndef RPT_COMBINATORICS_HPP
#define RPT_COMBINATORICS_HPP

#include <functional>
#include <vector>

#include "rpt/rational.hpp"

namespace rpt {

/// Partition of {1,...,n} in canonical form: blocks sorted internally and
/// ordered by their smallest element, so each partition has exactly one
/// representation.
struct SetPartition {
  std::vector<std::vector<int>> blocks;
};

/// B_15 is already ~1.4e9 partitions; enumeration above this needs an
/// explicit override.
inline constexpr int kDefaultPartitionCap = 14;

/// Streams all partitions of {1,...,n} in lexicographic restricted-growth
/// order without materializing them. n = 0 yields the single empty
/// partition.
class SetPartitionGenerator {
 public:
  explicit SetPartitionGenerator(int n, int cap = kDefaultPartitionCap);

  /// Fills `out` and returns true, or returns false when exhausted.
  bool next(SetPartition& out);

 private:
  int n_;
  bool done_;
  std::vector<int> rgs_;         // rgs_[i] = block of element i+1
  std::vector<int> prefix_max_;  // running max of rgs_[0..i]
};

void for_each_set_partition(int n, const std::function<void(const SetPartition&)>& visit,
                            int cap = kDefaultPartitionCap);

/// Exact Bell number from the Bell-triangle recurrence.
BigInt bell(int n);

/// B_0 ... B_max_n.
std::vector<BigInt> bell_table(int max_n);

/// n!! with (-1)!! = 0!! = 1. Throws below -1.
BigInt double_factorial(int n);

/// (sum counts)! / prod counts!.
BigInt multinomial(const std::vector<int>& counts);

/// Exact transcript of a directed-rounding float computation: the true
/// Bell number satisfies |B_n - value| <= error_bound.
struct DobinskiApproximation {
  Rational value;
  Rational error_bound;
};

/// Partial Dobinski sum e^-1 sum_{j<=terms} j^n/j! evaluated in
/// arbitrary-precision binary floats with outward rounding, plus the
/// certified tail bound 2 j^n/j! (valid once terms >= max(2n, 2); smaller
/// truncations cannot be certified and are rejected).
DobinskiApproximation dobinski_partial(int n, int terms, int precision_bits);

}  // namespace rpt

#endif
