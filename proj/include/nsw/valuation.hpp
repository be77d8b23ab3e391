#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nsw/itemset.hpp"

namespace nsw {

enum class ValuationKind { Additive, Coverage, Table, PartitionSystem };

// Parameters of the partition-system valuations used by the submodular gap
// family. The ground set is the product space [k]^h with h = k*lambda; a set
// item (p,q,o) covers the slice of points whose coordinate (p-1)*lambda+q
// equals o. Heavy agent p values the union of its own slices, plus a bonus of
// t*r (r = k^h) if it holds any large item; light agent (p,q,o) has value 1
// iff any set item of block (p,q) is present.
struct PartitionSystemSpec {
  long long k = 0;
  long long lambda = 0;
  double t = 0.0;  // large-item bonus as a multiple of r
  bool heavy = true;
  long long p = 1;  // 1-based group index
  long long q = 1;  // 1-based coordinate within the group (light only)
  long long o = 1;  // 1-based slice index naming the light agent (light only)
};

// Item layout of the partition-system instances: set items first, grouped by
// (p,q) block with o fastest, then the k-lambda large items.
inline long long ps_set_item_index(long long k, long long lambda, long long p, long long q,
                                   long long o) {
  return ((p - 1) * lambda + (q - 1)) * k + (o - 1);
}
inline long long ps_large_item_index(long long k, long long lambda, long long j) {
  return k * k * lambda + j;  // j in [0, k-lambda)
}
inline long long ps_num_items(long long k, long long lambda) {
  return k * k * lambda + (k - lambda);
}

// Monotone submodular valuation, one of four concrete shapes.
class Valuation {
 public:
  static Valuation additive(std::vector<double> values);
  static Valuation coverage(int ground_size, std::vector<std::vector<int>> item_sets);
  static Valuation table(int num_items, std::vector<double> values);
  static Valuation partition_system(const PartitionSystemSpec& spec);

  ValuationKind kind() const { return kind_; }
  int num_items() const { return num_items_; }

  double eval(const ItemSet& s) const;
  double eval_mask(std::uint32_t mask) const;  // num_items <= 20 convenience

  const std::vector<double>& additive_values() const { return values_; }
  int coverage_ground_size() const { return ground_size_; }
  const std::vector<std::vector<int>>& coverage_item_sets() const { return item_sets_; }
  const std::vector<double>& table_values() const { return values_; }
  const PartitionSystemSpec& ps_spec() const { return ps_; }

 private:
  Valuation() = default;

  ValuationKind kind_ = ValuationKind::Additive;
  int num_items_ = 0;
  std::vector<double> values_;                 // additive values or table entries
  int ground_size_ = 0;                        // coverage
  std::vector<std::vector<int>> item_sets_;    // coverage: per-item covered subset
  PartitionSystemSpec ps_;
};

// Explicit value table over all 2^m subsets, indexed by bitmask.
// Requires num_items <= 20.
std::vector<double> tabulate_valuation(const Valuation& v);

}  // namespace nsw
