#include "nsw/conflp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>

#include "nsw/common.hpp"
#include "nsw/lp.hpp"
#include "nsw/submodular.hpp"

namespace nsw {

std::vector<std::string> check_fractional_solution(const Instance& inst,
                                                   const FractionalSolution& sol, double tol) {
  std::vector<std::string> out;
  std::vector<double> agent_sum(static_cast<std::size_t>(inst.num_agents()), 0.0);
  std::vector<double> item_sum(static_cast<std::size_t>(inst.num_items), 0.0);
  double value = 0.0;
  for (std::size_t e = 0; e < sol.entries.size(); ++e) {
    const FractionalEntry& fe = sol.entries[e];
    if (fe.agent < 0 || fe.agent >= inst.num_agents()) {
      out.push_back("entry " + std::to_string(e) + ": agent index out of range");
      continue;
    }
    if (fe.y <= 0.0) out.push_back("entry " + std::to_string(e) + ": nonpositive y");
    if (fe.config.empty()) out.push_back("entry " + std::to_string(e) + ": empty configuration");
    agent_sum[static_cast<std::size_t>(fe.agent)] += fe.y;
    bool items_ok = true;
    for (int j : fe.config) {
      if (j < 0 || j >= inst.num_items) {
        out.push_back("entry " + std::to_string(e) + ": item out of range");
        items_ok = false;
        break;
      }
      item_sum[static_cast<std::size_t>(j)] += fe.y;
    }
    if (!items_ok || fe.config.empty()) continue;
    const Agent& a = inst.agents[static_cast<std::size_t>(fe.agent)];
    double v = a.valuation.eval(fe.config);
    if (v <= 0.0) {
      out.push_back("entry " + std::to_string(e) + ": zero-value configuration");
      continue;
    }
    value += a.weight * fe.y * std::log(v);
  }
  if (std::abs(value - sol.lp_value) > tol * (1.0 + std::abs(sol.lp_value))) {
    std::ostringstream os;
    os << "lp_value " << sol.lp_value << " does not match entries (" << value << ")";
    out.push_back(os.str());
  }
  for (int i = 0; i < inst.num_agents(); ++i) {
    if (std::abs(agent_sum[static_cast<std::size_t>(i)] - 1.0) > tol) {
      std::ostringstream os;
      os << "agent " << i << ": configuration mass " << agent_sum[static_cast<std::size_t>(i)];
      out.push_back(os.str());
    }
  }
  for (int j = 0; j < inst.num_items; ++j) {
    if (std::abs(item_sum[static_cast<std::size_t>(j)] - 1.0) > tol) {
      std::ostringstream os;
      os << "item " << j << ": coverage mass " << item_sum[static_cast<std::size_t>(j)];
      out.push_back(os.str());
    }
  }
  return out;
}

namespace {

double recompute_lp_value(const Instance& inst, const std::vector<FractionalEntry>& entries) {
  double total = 0.0;
  for (const FractionalEntry& fe : entries) {
    const Agent& a = inst.agents[static_cast<std::size_t>(fe.agent)];
    total += a.weight * fe.y * std::log(a.valuation.eval(fe.config));
  }
  return total;
}

}  // namespace

FractionalSolution solve_conflp_exact(const Instance& inst) {
  int n = inst.num_agents();
  int m = inst.num_items;
  if (m < 1 || n < 1) throw std::invalid_argument("solve_conflp_exact: empty instance");
  if (m > 16) throw std::invalid_argument("solve_conflp_exact: num_items must be <= 16");

  std::vector<std::vector<double>> tables;
  for (const Agent& a : inst.agents) {
    tables.push_back(tabulate_valuation(a.valuation));
    if (tables.back()[(std::size_t{1} << m) - 1] <= 0.0)
      throw std::invalid_argument("solve_conflp_exact: agent with identically zero valuation");
  }

  // One column per (agent, nonempty configuration of positive value).
  std::vector<std::pair<int, std::uint32_t>> cols;
  for (int i = 0; i < n; ++i) {
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask) {
      if (tables[static_cast<std::size_t>(i)][mask] > 0.0) cols.emplace_back(i, mask);
    }
  }

  LinearProgram lp;
  int ncols = static_cast<int>(cols.size());
  lp.c.resize(ncols);
  lp.A.setZero(m + n, ncols);
  lp.b = Eigen::VectorXd::Ones(m + n);
  lp.rel.assign(static_cast<std::size_t>(m + n), LpRelation::Eq);
  for (int cidx = 0; cidx < ncols; ++cidx) {
    auto [i, mask] = cols[static_cast<std::size_t>(cidx)];
    const Agent& a = inst.agents[static_cast<std::size_t>(i)];
    lp.c(cidx) = a.weight * std::log(tables[static_cast<std::size_t>(i)][mask]);
    for (int j = 0; j < m; ++j)
      if (mask & (std::uint32_t{1} << j)) lp.A(j, cidx) = 1.0;
    lp.A(m + i, cidx) = 1.0;
  }

  LpSolution s = solve_lp(lp);
  if (s.status != LpStatus::Optimal)
    throw std::runtime_error("solve_conflp_exact: LP solve failed");

  FractionalSolution out;
  for (int cidx = 0; cidx < ncols; ++cidx) {
    if (s.x(cidx) > 1e-12) {
      auto [i, mask] = cols[static_cast<std::size_t>(cidx)];
      out.entries.push_back({i, ItemSet::from_mask(mask), s.x(cidx)});
    }
  }
  out.lp_value = recompute_lp_value(inst, out.entries);
  return out;
}

ItemSet modified_greedy_knapsack(const Valuation& v, const std::vector<double>& costs,
                                 double budget, int enum_size) {
  int m = v.num_items();
  if (static_cast<int>(costs.size()) != m)
    throw std::invalid_argument("modified_greedy_knapsack: cost vector length mismatch");
  if (enum_size < 1) throw std::invalid_argument("modified_greedy_knapsack: enum_size must be >= 1");
  if (budget < 0.0) throw std::invalid_argument("modified_greedy_knapsack: negative budget");
  for (double c : costs) {
    if (!(c >= 0.0)) throw std::invalid_argument("modified_greedy_knapsack: negative cost");
  }

  ItemSet best;
  double best_val = 0.0;

  auto extend = [&](ItemSet seed, double spent) {
    ItemSet cur = std::move(seed);
    double cur_val = v.eval(cur);
    while (true) {
      int pick = -1;
      double pick_ratio = 0.0, pick_gain = 0.0;
      for (int j = 0; j < m; ++j) {
        if (cur.contains(j)) continue;
        double cj = costs[static_cast<std::size_t>(j)];
        if (spent + cj > budget + 1e-12) continue;
        ItemSet with = cur;
        with.add(j);
        double gain = v.eval(with) - cur_val;
        if (gain <= 1e-15) continue;
        // Free items rank above every paid one; among paid, gain per cost.
        double ratio = cj <= 1e-15 ? kInfRatio : gain / cj;
        if (pick < 0 || ratio > pick_ratio + 1e-15 ||
            (cj <= 1e-15 && pick_ratio == kInfRatio && gain > pick_gain + 1e-15)) {
          pick = j;
          pick_ratio = ratio;
          pick_gain = gain;
        }
      }
      if (pick < 0) break;
      cur.add(pick);
      cur_val += pick_gain;
      spent += costs[static_cast<std::size_t>(pick)];
    }
    if (cur_val > best_val + 1e-15) {
      best_val = cur_val;
      best = cur;
    }
  };

  // Seeds in lexicographic order of their sorted item lists, sizes 0..enum_size.
  std::vector<int> stack;
  auto rec = [&](auto&& self, int next, double spent) -> void {
    ItemSet seed;
    for (int j : stack) seed.add(j);
    extend(std::move(seed), spent);
    if (static_cast<int>(stack.size()) == enum_size) return;
    for (int j = next; j < m; ++j) {
      double cj = costs[static_cast<std::size_t>(j)];
      if (spent + cj > budget + 1e-12) continue;
      stack.push_back(j);
      self(self, j + 1, spent + cj);
      stack.pop_back();
    }
  };
  rec(rec, 0, 0.0);
  return best;
}

ConfigSplit split_config(const Valuation& v, const ItemSet& s, int enum_size) {
  if (enum_size < 0) throw std::invalid_argument("split_config: negative enum_size");
  GreedyOrder g = greedy_order(v, s);
  ConfigSplit out;
  int take = std::min<int>(enum_size, static_cast<int>(g.order.size()));
  for (int t = 0; t < take; ++t) out.enumerated.add(g.order[static_cast<std::size_t>(t)]);
  out.rest = s.set_minus(out.enumerated);
  return out;
}

double adjusted_lp_objective(const Instance& inst, const FractionalSolution& sol, int enum_size) {
  double total = 0.0;
  for (const FractionalEntry& fe : sol.entries) {
    const Agent& a = inst.agents[static_cast<std::size_t>(fe.agent)];
    ConfigSplit cs = split_config(a.valuation, fe.config, enum_size);
    double v_enu = a.valuation.eval(cs.enumerated);
    double v_all = a.valuation.eval(fe.config);
    double adjusted = v_enu + kERatio * (v_all - v_enu);
    if (adjusted <= 0.0) return kNegInf;
    total += a.weight * fe.y * std::log(adjusted);
  }
  return total;
}

FractionalSolution column_generation_solve(const Instance& inst, int enum_size, int max_rounds,
                                           ColumnGenStats* stats) {
  int n = inst.num_agents();
  int m = inst.num_items;
  if (m < 1 || n < 1) throw std::invalid_argument("column_generation_solve: empty instance");
  if (enum_size < 1) throw std::invalid_argument("column_generation_solve: enum_size must be >= 1");
  if (max_rounds < 1) throw std::invalid_argument("column_generation_solve: max_rounds must be >= 1");

  ItemSet full = ItemSet::full(m);
  std::vector<double> v_full(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    v_full[static_cast<std::size_t>(i)] =
        inst.agents[static_cast<std::size_t>(i)].valuation.eval(full);
    if (v_full[static_cast<std::size_t>(i)] <= 0.0)
      throw std::invalid_argument("column_generation_solve: agent with identically zero valuation");
  }

  // (agent, config) -> value; map keeps pool order deterministic.
  std::map<std::pair<int, ItemSet>, double> pool;
  auto add_column = [&](int i, const ItemSet& s) {
    double val = inst.agents[static_cast<std::size_t>(i)].valuation.eval(s);
    if (val <= 0.0 || s.empty()) return false;
    return pool.emplace(std::make_pair(i, s), val).second;
  };
  for (int i = 0; i < n; ++i) {
    add_column(i, full);
    for (int j = 0; j < m; ++j) {
      ItemSet sj;
      sj.add(j);
      add_column(i, sj);
    }
  }

  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(n);
  std::vector<FractionalEntry> entries;
  int round = 0;
  bool converged = false;

  // The level grid can stall with small violations left, so on stalled rounds
  // an exact scan over every configuration (when tabulation is affordable)
  // either finds the offender or certifies that none remains.
  bool exact_certify =
      m <= 20 && static_cast<double>(n) * std::ldexp(1.0, m) <= 8.0 * 1024.0 * 1024.0;
  std::vector<std::vector<double>> wlog(static_cast<std::size_t>(exact_certify ? n : 0));

  while (round < max_rounds) {
    ++round;
    // Restricted master: item coverage relaxed to <= 1 (repaired to equality
    // afterwards; with monotone valuations the optimum is unchanged and the
    // item duals stay nonnegative, which the pricing costs require).
    int ncols = static_cast<int>(pool.size());
    LinearProgram lp;
    lp.c.resize(ncols);
    lp.A.setZero(m + n, ncols);
    lp.b = Eigen::VectorXd::Ones(m + n);
    lp.rel.assign(static_cast<std::size_t>(m), LpRelation::Le);
    lp.rel.resize(static_cast<std::size_t>(m + n), LpRelation::Eq);
    int cidx = 0;
    for (const auto& [key, val] : pool) {
      lp.c(cidx) = inst.agents[static_cast<std::size_t>(key.first)].weight * std::log(val);
      for (int j : key.second) lp.A(j, cidx) = 1.0;
      lp.A(m + key.first, cidx) = 1.0;
      ++cidx;
    }
    LpSolution s = solve_lp(lp);
    if (s.status != LpStatus::Optimal)
      throw std::runtime_error("column_generation_solve: master LP solve failed");
    alpha = s.y.head(m).cwiseMax(0.0);
    beta = s.y.tail(n);

    entries.clear();
    cidx = 0;
    for (const auto& [key, val] : pool) {
      if (s.x(cidx) > 1e-12) entries.push_back({key.first, key.second, s.x(cidx)});
      ++cidx;
    }

    // Pricing: a column improves the master iff
    // w_i ln v_i(S) - sum_{j in S} alpha_j - beta_i > 0.
    std::vector<double> costs(alpha.data(), alpha.data() + m);
    bool any_added = false;
    for (int i = 0; i < n; ++i) {
      const Agent& a = inst.agents[static_cast<std::size_t>(i)];
      double vmin = kInfRatio;
      for (int j = 0; j < m; ++j) {
        ItemSet sj;
        sj.add(j);
        double sv = a.valuation.eval(sj);
        if (sv > 0.0) vmin = std::min(vmin, sv);
      }
      if (vmin == kInfRatio) vmin = v_full[static_cast<std::size_t>(i)];
      double grow = 1.0 + 1.0 / static_cast<double>(enum_size);
      ItemSet best_set;
      double best_violation = 1e-9;
      for (double level = vmin; level <= v_full[static_cast<std::size_t>(i)] * grow;
           level *= grow) {
        double cap = std::min(level, v_full[static_cast<std::size_t>(i)]);
        double budget = a.weight * std::log(cap) - beta(i);
        if (budget < 0.0) continue;
        ItemSet cand = modified_greedy_knapsack(a.valuation, costs, budget, enum_size);
        if (cand.empty()) continue;
        double cost = 0.0;
        for (int j : cand) cost += costs[static_cast<std::size_t>(j)];
        double val = a.valuation.eval(cand);
        if (val <= 0.0) continue;
        double violation = a.weight * std::log(val) - cost - beta(i);
        if (violation > best_violation) {
          best_violation = violation;
          best_set = cand;
        }
      }
      if (!best_set.empty() && add_column(i, best_set)) any_added = true;
    }
    if (!any_added && exact_certify) {
      std::size_t nmask = std::size_t{1} << m;
      std::vector<double> cost(nmask, 0.0);
      for (std::size_t mask = 1; mask < nmask; ++mask) {
        int j = std::countr_zero(mask);
        cost[mask] = cost[mask & (mask - 1)] + costs[static_cast<std::size_t>(j)];
      }
      for (int i = 0; i < n; ++i) {
        std::vector<double>& lt = wlog[static_cast<std::size_t>(i)];
        if (lt.empty()) {
          const Agent& a = inst.agents[static_cast<std::size_t>(i)];
          lt = tabulate_valuation(a.valuation);
          for (double& lv : lt) lv = lv > 0.0 ? a.weight * std::log(lv) : -kInfRatio;
        }
        double best_violation = 1e-9;
        std::size_t best_mask = 0;
        for (std::size_t mask = 1; mask < nmask; ++mask) {
          double violation = lt[mask] - cost[mask] - beta(i);
          if (violation > best_violation) {
            best_violation = violation;
            best_mask = mask;
          }
        }
        if (best_mask != 0 &&
            add_column(i, ItemSet::from_mask(static_cast<std::uint32_t>(best_mask))))
          any_added = true;
      }
    }
    if (!any_added) {
      converged = true;
      break;
    }
  }

  // Repair item slack to exact coverage: push leftover item mass into
  // existing entries that miss the item; monotonicity means the objective
  // never drops.
  std::vector<double> covered(static_cast<std::size_t>(m), 0.0);
  for (const FractionalEntry& fe : entries)
    for (int j : fe.config) covered[static_cast<std::size_t>(j)] += fe.y;
  for (int j = 0; j < m; ++j) {
    double need = 1.0 - covered[static_cast<std::size_t>(j)];
    for (std::size_t e = 0; e < entries.size() && need > 1e-12; ++e) {
      if (entries[e].config.contains(j) || entries[e].y <= 0.0) continue;
      double move = std::min(need, entries[e].y);
      ItemSet grown = entries[e].config;
      grown.add(j);
      entries[e].y -= move;
      entries.push_back({entries[e].agent, grown, move});
      need -= move;
    }
    if (need > 1e-9)
      throw std::runtime_error("column_generation_solve: could not repair item coverage");
  }

  // Merge duplicate (agent, config) rows and drop emptied ones.
  std::map<std::pair<int, ItemSet>, double> merged;
  for (const FractionalEntry& fe : entries) {
    if (fe.y > 0.0) merged[{fe.agent, fe.config}] += fe.y;
  }
  FractionalSolution out;
  for (const auto& [key, y] : merged) out.entries.push_back({key.first, key.second, y});
  out.lp_value = recompute_lp_value(inst, out.entries);
  if (stats) {
    stats->rounds = round;
    stats->converged = converged;
  }
  return out;
}

}  // namespace nsw
