#include "nsw/submodular.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "nsw/common.hpp"
#include "nsw/lp.hpp"

namespace nsw {

void check_fractional_vector(const Eigen::VectorXd& x, int num_items) {
  if (x.size() != num_items)
    throw std::invalid_argument("fractional vector: wrong length");
  for (int j = 0; j < num_items; ++j) {
    if (!(x(j) >= 0.0 && x(j) <= 1.0))
      throw std::invalid_argument("fractional vector: entry outside [0,1]");
  }
}

GreedyOrder greedy_order(const Valuation& v, const ItemSet& s) {
  for (int j : s) {
    if (j < 0 || j >= v.num_items()) throw std::out_of_range("greedy_order: item out of range");
  }
  GreedyOrder g;
  ItemSet cur;
  std::vector<int> remaining(s.items());
  double cur_val = 0.0;
  while (!remaining.empty()) {
    int best = -1;
    double best_gain = 0.0;
    for (int j : remaining) {
      ItemSet with = cur;
      with.add(j);
      double gain = v.eval(with) - cur_val;
      if (best < 0 || gain > best_gain + 1e-15) {
        best = j;
        best_gain = gain;
      }
    }
    g.order.push_back(best);
    g.phi.push_back(std::max(best_gain, 0.0));
    cur.add(best);
    cur_val += best_gain;
    remaining.erase(std::find(remaining.begin(), remaining.end(), best));
  }
  return g;
}

ProxyFunction make_proxy(const Valuation& v, std::vector<ItemSet> blocks) {
  int m = v.num_items();
  ProxyFunction p{v, std::move(blocks), std::vector<double>(static_cast<std::size_t>(m), 0.0),
                  std::vector<int>(static_cast<std::size_t>(m), -1)};
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    GreedyOrder g = greedy_order(v, p.blocks[b]);
    for (std::size_t t = 0; t < g.order.size(); ++t) {
      int j = g.order[t];
      if (p.block_of[static_cast<std::size_t>(j)] != -1)
        throw std::invalid_argument("make_proxy: blocks overlap");
      p.block_of[static_cast<std::size_t>(j)] = static_cast<int>(b);
      p.phi[static_cast<std::size_t>(j)] = g.phi[t];
    }
  }
  for (int j = 0; j < m; ++j) {
    if (p.block_of[static_cast<std::size_t>(j)] == -1)
      throw std::invalid_argument("make_proxy: blocks do not cover every item");
  }
  return p;
}

double proxy_eval(const ProxyFunction& p, const ItemSet& s) {
  std::vector<int> items(s.items());
  int k = static_cast<int>(items.size());
  if (k > 22) throw std::invalid_argument("proxy_eval: set larger than 22 items");
  double phi_total = 0.0;
  for (int j : items) phi_total += p.phi[static_cast<std::size_t>(j)];
  double best = phi_total;  // T = empty
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << k); ++mask) {
    ItemSet t;
    double phi_rest = phi_total;
    for (int b = 0; b < k; ++b) {
      if (mask & (std::uint32_t{1} << b)) {
        t.add(items[static_cast<std::size_t>(b)]);
        phi_rest -= p.phi[static_cast<std::size_t>(items[static_cast<std::size_t>(b)])];
      }
    }
    best = std::min(best, p.base.eval(t) + phi_rest);
  }
  return best;
}

std::vector<double> proxy_table(const ProxyFunction& p) {
  int m = p.base.num_items();
  if (m > 20) throw std::invalid_argument("proxy_table: num_items must be <= 20");
  std::vector<double> v = tabulate_valuation(p.base);
  std::size_t size = std::size_t{1} << m;
  // g[S] = min(v(S), min_j g[S \ j] + phi_j): peeling items off S one at a
  // time reaches every T <= S with the phi mass of S \ T accumulated.
  std::vector<double> g(size);
  g[0] = 0.0;
  for (std::size_t mask = 1; mask < size; ++mask) {
    double best = v[mask];
    std::size_t rest = mask;
    while (rest) {
      int j = std::countr_zero(rest);
      best = std::min(best, g[mask ^ (std::size_t{1} << j)] + p.phi[static_cast<std::size_t>(j)]);
      rest &= rest - 1;
    }
    g[mask] = best;
  }
  return g;
}

double multilinear_exact(const Valuation& v, const Eigen::VectorXd& x) {
  int m = v.num_items();
  if (m > 20) throw std::invalid_argument("multilinear_exact: num_items must be <= 20");
  check_fractional_vector(x, m);
  std::vector<double> table = tabulate_valuation(v);
  std::size_t size = std::size_t{1} << m;
  std::vector<double> weight(size, 0.0);
  weight[0] = 1.0;
  for (int j = 0; j < m; ++j) {
    std::size_t bit = std::size_t{1} << j;
    for (std::size_t mask = bit; mask-- > 0;) {
      weight[mask | bit] = weight[mask] * x(j);
      weight[mask] *= 1.0 - x(j);
    }
  }
  double total = 0.0;
  for (std::size_t mask = 0; mask < size; ++mask) total += weight[mask] * table[mask];
  return total;
}

McEstimate multilinear_mc(const Valuation& v, const Eigen::VectorXd& x, long trials,
                          std::uint64_t seed) {
  int m = v.num_items();
  check_fractional_vector(x, m);
  if (trials < 1) throw std::invalid_argument("multilinear_mc: trials must be >= 1");
  Rng rng(seed);
  double sum = 0.0, sumsq = 0.0;
  ItemSet s;
  for (long t = 0; t < trials; ++t) {
    s = ItemSet{};
    for (int j = 0; j < m; ++j) {
      if (rng.uniform01() < x(j)) s.add(j);
    }
    double val = v.eval(s);
    sum += val;
    sumsq += val * val;
  }
  McEstimate e;
  double n = static_cast<double>(trials);
  e.value = sum / n;
  double var = std::max(0.0, sumsq / n - e.value * e.value);
  e.std_error = std::sqrt(var / n);
  return e;
}

ConcaveExtension concave_extension(const Valuation& v, const Eigen::VectorXd& x) {
  int m = v.num_items();
  if (m > 16) throw std::invalid_argument("concave_extension: num_items must be <= 16");
  check_fractional_vector(x, m);
  std::vector<double> table = tabulate_valuation(v);
  int ncols = 1 << m;

  LinearProgram lp;
  lp.c.resize(ncols);
  lp.A.setZero(m + 1, ncols);
  lp.b.resize(m + 1);
  lp.rel.assign(static_cast<std::size_t>(m + 1), LpRelation::Eq);
  for (int mask = 0; mask < ncols; ++mask) {
    lp.c(mask) = table[static_cast<std::size_t>(mask)];
    lp.A(0, mask) = 1.0;
    for (int j = 0; j < m; ++j)
      if (mask & (1 << j)) lp.A(j + 1, mask) = 1.0;
  }
  lp.b(0) = 1.0;
  for (int j = 0; j < m; ++j) lp.b(j + 1) = x(j);

  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal)
    throw std::runtime_error("concave_extension: distribution LP did not solve");

  ConcaveExtension out;
  out.value = sol.objective;
  for (int mask = 0; mask < ncols; ++mask) {
    if (sol.x(mask) > 1e-12)
      out.support.emplace_back(ItemSet::from_mask(static_cast<std::uint32_t>(mask)), sol.x(mask));
  }
  return out;
}

}  // namespace nsw
