#pragma once

#include <string>
#include <vector>

#include "nsw/core.hpp"

namespace nsw {

struct FractionalEntry {
  int agent = 0;
  ItemSet config;
  double y = 0.0;
};

// Fractional assignment of one configuration distribution per agent:
// per agent the y's sum to 1, and per item the y-mass of configurations
// containing it sums to 1.
struct FractionalSolution {
  double lp_value = 0.0;
  std::vector<FractionalEntry> entries;
};

// Returns violation messages (empty when valid) for the FractionalSolution
// invariants at the given tolerance.
std::vector<std::string> check_fractional_solution(const Instance& inst,
                                                   const FractionalSolution& sol,
                                                   double tol = 1e-7);

// Full-enumeration solve of max sum_i w_i y_{i,S} ln v_i(S) over one variable
// per nonempty configuration; requires num_items <= 16. Zero-value
// configurations are dropped; an agent whose valuation is identically zero is
// an error.
FractionalSolution solve_conflp_exact(const Instance& inst);

// Budgeted submodular maximization: enumerate every seed set of size at most
// enum_size within budget, extend each greedily by marginal gain per cost
// among still-affordable items, return the best completed set.
ItemSet modified_greedy_knapsack(const Valuation& v, const std::vector<double>& costs,
                                 double budget, int enum_size);

struct ColumnGenStats {
  int rounds = 0;
  bool converged = false;
};

// Restricted-master column generation for instances too large to enumerate:
// the pool starts with all singletons and the full set per agent; pricing per
// agent scans a geometric grid of value levels (ratio 1 + 1/enum_size) and
// runs modified_greedy_knapsack against the item duals. On rounds where the
// grid finds nothing and the valuations are tabulable, an exact scan over all
// configurations either supplies the missed column or certifies convergence.
// The result always satisfies the FractionalSolution invariants; hitting
// max_rounds is reported through stats, not an error.
FractionalSolution column_generation_solve(const Instance& inst, int enum_size, int max_rounds,
                                           ColumnGenStats* stats = nullptr);

// Split of a configuration into the first min(|s|, enum_size) items of its
// greedy order and the rest.
struct ConfigSplit {
  ItemSet enumerated;
  ItemSet rest;
};

ConfigSplit split_config(const Valuation& v, const ItemSet& s, int enum_size);

// sum_i w_i y ln(v_i(S^enu) + e/(e-1) * (v_i(S) - v_i(S^enu))); -inf when a
// configuration argument is nonpositive.
double adjusted_lp_objective(const Instance& inst, const FractionalSolution& sol, int enum_size);

}  // namespace nsw
