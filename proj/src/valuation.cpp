#include "nsw/valuation.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace nsw {

Valuation Valuation::additive(std::vector<double> values) {
  Valuation v;
  v.kind_ = ValuationKind::Additive;
  v.num_items_ = static_cast<int>(values.size());
  for (double x : values) {
    if (!(x >= 0.0)) throw std::invalid_argument("additive valuation: negative item value");
  }
  v.values_ = std::move(values);
  return v;
}

Valuation Valuation::coverage(int ground_size, std::vector<std::vector<int>> item_sets) {
  if (ground_size < 0) throw std::invalid_argument("coverage valuation: negative ground size");
  Valuation v;
  v.kind_ = ValuationKind::Coverage;
  v.num_items_ = static_cast<int>(item_sets.size());
  v.ground_size_ = ground_size;
  for (auto& s : item_sets) {
    for (int g : s) {
      if (g < 0 || g >= ground_size)
        throw std::invalid_argument("coverage valuation: ground element out of range");
    }
  }
  v.item_sets_ = std::move(item_sets);
  return v;
}

Valuation Valuation::table(int num_items, std::vector<double> values) {
  if (num_items < 0 || num_items > 20)
    throw std::invalid_argument("table valuation: num_items must be in [0, 20]");
  if (values.size() != (std::size_t{1} << num_items))
    throw std::invalid_argument("table valuation: expected 2^num_items entries");
  Valuation v;
  v.kind_ = ValuationKind::Table;
  v.num_items_ = num_items;
  v.values_ = std::move(values);
  return v;
}

Valuation Valuation::partition_system(const PartitionSystemSpec& spec) {
  if (spec.k < 2 || spec.lambda < 1 || spec.lambda >= spec.k)
    throw std::invalid_argument("partition system: need k >= 2 and 1 <= lambda < k");
  if (!(spec.t >= 0.0)) throw std::invalid_argument("partition system: negative bonus");
  long long n = ps_num_items(spec.k, spec.lambda);
  if (n > (1LL << 31)) throw std::invalid_argument("partition system: too many items");
  Valuation v;
  v.kind_ = ValuationKind::PartitionSystem;
  v.num_items_ = static_cast<int>(n);
  v.ps_ = spec;
  return v;
}

namespace {

double eval_partition_system(const PartitionSystemSpec& ps, const ItemSet& s) {
  long long k = ps.k, lambda = ps.lambda;
  double h = static_cast<double>(k) * static_cast<double>(lambda);
  double log_r = h * std::log(static_cast<double>(k));
  if (log_r > 700.0)
    throw std::domain_error("partition system: value exceeds double range, use log-space formulas");
  double r = std::exp(log_r);
  if (ps.heavy) {
    // Inclusion-exclusion over independent coordinates: the union of n_q
    // slices in coordinate q misses a fraction prod_q (1 - n_q/k) of [k]^h.
    double miss = 1.0;
    for (long long q = 1; q <= lambda; ++q) {
      long long n_q = 0;
      for (long long o = 1; o <= k; ++o) {
        if (s.contains(static_cast<int>(ps_set_item_index(k, lambda, ps.p, q, o)))) ++n_q;
      }
      miss *= 1.0 - static_cast<double>(n_q) / static_cast<double>(k);
    }
    double value = r * (1.0 - miss);
    for (long long j = 0; j < k - lambda; ++j) {
      if (s.contains(static_cast<int>(ps_large_item_index(k, lambda, j)))) {
        value += ps.t * r;
        break;
      }
    }
    return value;
  }
  for (long long o = 1; o <= k; ++o) {
    if (s.contains(static_cast<int>(ps_set_item_index(k, lambda, ps.p, ps.q, o)))) return 1.0;
  }
  return 0.0;
}

}  // namespace

double Valuation::eval(const ItemSet& s) const {
  switch (kind_) {
    case ValuationKind::Additive: {
      double total = 0.0;
      for (int j : s) {
        if (j < 0 || j >= num_items_) throw std::out_of_range("valuation eval: item out of range");
        total += values_[static_cast<std::size_t>(j)];
      }
      return total;
    }
    case ValuationKind::Coverage: {
      std::vector<char> hit(static_cast<std::size_t>(ground_size_), 0);
      int covered = 0;
      for (int j : s) {
        if (j < 0 || j >= num_items_) throw std::out_of_range("valuation eval: item out of range");
        for (int g : item_sets_[static_cast<std::size_t>(j)]) {
          if (!hit[static_cast<std::size_t>(g)]) {
            hit[static_cast<std::size_t>(g)] = 1;
            ++covered;
          }
        }
      }
      return static_cast<double>(covered);
    }
    case ValuationKind::Table:
      return values_[s.to_mask()];
    case ValuationKind::PartitionSystem:
      return eval_partition_system(ps_, s);
  }
  throw std::logic_error("valuation eval: unknown kind");
}

double Valuation::eval_mask(std::uint32_t mask) const {
  if (kind_ == ValuationKind::Table) return values_[mask];
  return eval(ItemSet::from_mask(mask));
}

std::vector<double> tabulate_valuation(const Valuation& v) {
  int m = v.num_items();
  if (m > 20) throw std::invalid_argument("tabulate_valuation: num_items must be <= 20");
  std::size_t size = std::size_t{1} << m;
  std::vector<double> table(size, 0.0);
  switch (v.kind()) {
    case ValuationKind::Additive: {
      const auto& vals = v.additive_values();
      for (std::size_t mask = 1; mask < size; ++mask) {
        std::size_t low = mask & (~mask + 1);
        int j = std::countr_zero(static_cast<std::uint32_t>(mask));
        table[mask] = table[mask ^ low] + vals[static_cast<std::size_t>(j)];
      }
      return table;
    }
    case ValuationKind::Coverage: {
      int g = v.coverage_ground_size();
      if (g <= 64) {
        std::vector<std::uint64_t> item_bits(static_cast<std::size_t>(m), 0);
        for (int j = 0; j < m; ++j) {
          for (int e : v.coverage_item_sets()[static_cast<std::size_t>(j)])
            item_bits[static_cast<std::size_t>(j)] |= std::uint64_t{1} << e;
        }
        std::vector<std::uint64_t> cover(size, 0);
        for (std::size_t mask = 1; mask < size; ++mask) {
          std::size_t low = mask & (~mask + 1);
          int j = std::countr_zero(static_cast<std::uint32_t>(mask));
          cover[mask] = cover[mask ^ low] | item_bits[static_cast<std::size_t>(j)];
          table[mask] = static_cast<double>(std::popcount(cover[mask]));
        }
        return table;
      }
      for (std::size_t mask = 0; mask < size; ++mask) {
        table[mask] = v.eval(ItemSet::from_mask(static_cast<std::uint32_t>(mask)));
      }
      return table;
    }
    case ValuationKind::Table:
      return v.table_values();
    case ValuationKind::PartitionSystem: {
      for (std::size_t mask = 0; mask < size; ++mask) {
        table[mask] = v.eval(ItemSet::from_mask(static_cast<std::uint32_t>(mask)));
      }
      return table;
    }
  }
  throw std::logic_error("tabulate_valuation: unknown kind");
}

}  // namespace nsw
