#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "nsw/valuation.hpp"

namespace nsw {

// Throws unless x has the expected size and every entry lies in [0,1].
void check_fractional_vector(const Eigen::VectorXd& x, int num_items);

// Ordering of a set by repeatedly taking the item of maximum marginal gain;
// phi[t] is the gain of order[t] when added after order[0..t-1]. Ties go to
// the smallest item index.
struct GreedyOrder {
  std::vector<int> order;
  std::vector<double> phi;
};

GreedyOrder greedy_order(const Valuation& v, const ItemSet& s);

// Submodular lower bound of a valuation built from a partition of the items
// into blocks: each item's phi is its marginal gain in its block's greedy
// order, and the function value is min over T <= S of v(T) + phi(S \ T).
// It is monotone submodular, never exceeds v, and is additive within a block.
struct ProxyFunction {
  Valuation base;
  std::vector<ItemSet> blocks;
  std::vector<double> phi;      // per item
  std::vector<int> block_of;    // per item
};

ProxyFunction make_proxy(const Valuation& v, std::vector<ItemSet> blocks);

// Brute-force minimization over subsets of s; requires |s| <= 22.
double proxy_eval(const ProxyFunction& p, const ItemSet& s);

// All 2^m proxy values by subset DP; cross-checked against proxy_eval in
// tests. Requires num_items <= 20.
std::vector<double> proxy_table(const ProxyFunction& p);

// Expected value under independent per-item inclusion with probabilities x.
// Exact subset-sum evaluation; requires num_items <= 20.
double multilinear_exact(const Valuation& v, const Eigen::VectorXd& x);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// Monte Carlo estimate of the multilinear extension; deterministic given the
// seed regardless of how callers shard trials.
McEstimate multilinear_mc(const Valuation& v, const Eigen::VectorXd& x, long trials,
                          std::uint64_t seed);

// Maximum expected value over distributions on sets with marginals x, solved
// as an LP over all 2^m indicator columns; requires num_items <= 16. The
// support lists the optimal distribution.
struct ConcaveExtension {
  double value = 0.0;
  std::vector<std::pair<ItemSet, double>> support;
};

ConcaveExtension concave_extension(const Valuation& v, const Eigen::VectorXd& x);

}  // namespace nsw
