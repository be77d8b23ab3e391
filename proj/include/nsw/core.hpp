#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "nsw/valuation.hpp"

namespace nsw {

struct Agent {
  double weight = 0.0;
  Valuation valuation = Valuation::additive({});
};

struct Instance {
  int num_items = 0;
  std::vector<Agent> agents;

  int num_agents() const { return static_cast<int>(agents.size()); }
};

// Allocation[i] is the bundle of agent i; bundles must be disjoint and their
// union must be all items for a complete allocation.
using Allocation = std::vector<ItemSet>;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Weighted log geometric mean sum_i w_i * ln v_i(S_i); -inf if any bundle has
// value <= 0.
double log_nsw(const Instance& inst, const Allocation& alloc);

// Exhaustive optimum over all n^m complete allocations. Requires n^m <= 1e7.
// Ties resolve to the lexicographically smallest item-to-agent map.
std::pair<Allocation, double> brute_force_opt(const Instance& inst);

// Structural checks: weights in (0,1) summing to 1 within 1e-9, valuations
// normalized (empty set -> 0), monotone, and submodular. Exhaustive up to
// num_items <= 12, spot-checked with a fixed-seed sample otherwise. Returns
// human-readable violation messages; empty means valid.
std::vector<std::string> validate_instance(const Instance& inst);

}  // namespace nsw
