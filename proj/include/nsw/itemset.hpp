#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace nsw {

// A set of item indices, kept sorted and duplicate-free. Item universes in the
// gap generators reach ~10^6 items, so sets are index vectors rather than
// bitmasks; the m <= 20 hot paths convert to masks explicitly.
class ItemSet {
 public:
  ItemSet() = default;
  ItemSet(std::initializer_list<int> items) : items_(items) { normalize(); }
  explicit ItemSet(std::vector<int> items) : items_(std::move(items)) { normalize(); }

  static ItemSet from_mask(std::uint32_t mask) {
    ItemSet s;
    for (int j = 0; mask != 0; ++j, mask >>= 1)
      if (mask & 1u) s.items_.push_back(j);
    return s;
  }

  static ItemSet full(int m) {
    ItemSet s;
    s.items_.resize(m);
    for (int j = 0; j < m; ++j) s.items_[j] = j;
    return s;
  }

  std::uint32_t to_mask() const {
    std::uint32_t mask = 0;
    for (int j : items_) {
      if (j < 0 || j >= 32) throw std::out_of_range("ItemSet::to_mask: index beyond mask range");
      mask |= (1u << j);
    }
    return mask;
  }

  bool contains(int j) const { return std::binary_search(items_.begin(), items_.end(), j); }
  int size() const { return static_cast<int>(items_.size()); }
  bool empty() const { return items_.empty(); }

  void add(int j) {
    auto it = std::lower_bound(items_.begin(), items_.end(), j);
    if (it == items_.end() || *it != j) items_.insert(it, j);
  }

  void remove(int j) {
    auto it = std::lower_bound(items_.begin(), items_.end(), j);
    if (it != items_.end() && *it == j) items_.erase(it);
  }

  ItemSet set_union(const ItemSet& o) const {
    ItemSet r;
    std::set_union(items_.begin(), items_.end(), o.items_.begin(), o.items_.end(),
                   std::back_inserter(r.items_));
    return r;
  }

  ItemSet set_intersect(const ItemSet& o) const {
    ItemSet r;
    std::set_intersection(items_.begin(), items_.end(), o.items_.begin(), o.items_.end(),
                          std::back_inserter(r.items_));
    return r;
  }

  ItemSet set_minus(const ItemSet& o) const {
    ItemSet r;
    std::set_difference(items_.begin(), items_.end(), o.items_.begin(), o.items_.end(),
                        std::back_inserter(r.items_));
    return r;
  }

  bool subset_of(const ItemSet& o) const {
    return std::includes(o.items_.begin(), o.items_.end(), items_.begin(), items_.end());
  }

  const std::vector<int>& items() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  bool operator==(const ItemSet& o) const { return items_ == o.items_; }
  bool operator<(const ItemSet& o) const { return items_ < o.items_; }

 private:
  void normalize() {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  }

  std::vector<int> items_;
};

}  // namespace nsw
