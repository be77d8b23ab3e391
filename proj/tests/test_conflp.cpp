#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "nsw/common.hpp"
#include "nsw/conflp.hpp"
#include "nsw/gapgen.hpp"

using namespace nsw;

namespace {

Valuation random_coverage(Rng& rng, int m, int ground) {
  std::vector<std::vector<int>> sets(static_cast<std::size_t>(m));
  for (auto& s : sets) {
    s.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(ground))));
    for (int g = 0; g < ground; ++g)
      if (rng.bernoulli(0.3)) s.push_back(g);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return Valuation::coverage(ground, std::move(sets));
}

Instance random_instance(Rng& rng, int n, int m) {
  Instance inst;
  inst.num_items = m;
  std::vector<double> w(static_cast<std::size_t>(n), 1.0);
  if (n > 1) {
    double s = 0.0;
    for (double& x : w) {
      x = 0.2 + rng.uniform01();
      s += x;
    }
    for (double& x : w) x /= s;
  }
  for (int i = 0; i < n; ++i) {
    Valuation v = rng.bernoulli(0.5) ? random_coverage(rng, m, 8) : [&] {
      std::vector<double> vals(static_cast<std::size_t>(m));
      for (double& x : vals) x = 0.2 + 1.8 * rng.uniform01();
      return Valuation::additive(std::move(vals));
    }();
    inst.agents.push_back(Agent{w[static_cast<std::size_t>(i)], std::move(v)});
  }
  return inst;
}

}  // namespace

TEST_CASE("single agent takes the full bundle with mass one") {
  Instance inst;
  inst.num_items = 3;
  inst.agents.push_back(Agent{1.0, Valuation::additive({1.0, 2.0, 3.0})});
  FractionalSolution sol = solve_conflp_exact(inst);
  CHECK(sol.lp_value == doctest::Approx(std::log(6.0)).epsilon(1e-9));
  CHECK(check_fractional_solution(inst, sol).empty());
  double full_mass = 0.0;
  for (const FractionalEntry& e : sol.entries)
    if (e.agent == 0 && e.config == ItemSet::full(3)) full_mass += e.y;
  CHECK(full_mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("two identical additive agents split to equal value") {
  Instance inst;
  inst.num_items = 2;
  inst.agents.push_back(Agent{0.5, Valuation::additive({1.0, 1.0})});
  inst.agents.push_back(Agent{0.5, Valuation::additive({1.0, 1.0})});
  FractionalSolution sol = solve_conflp_exact(inst);
  CHECK(sol.lp_value == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(check_fractional_solution(inst, sol).empty());
}

TEST_CASE("an agent that must end up empty makes the program infeasible") {
  Instance inst;
  inst.num_items = 1;
  inst.agents.push_back(Agent{0.5, Valuation::additive({1.0})});
  inst.agents.push_back(Agent{0.5, Valuation::additive({1.0})});
  CHECK_THROWS(solve_conflp_exact(inst));
}

TEST_CASE("exact LP value upper-bounds the exhaustive optimum") {
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng(derive_seed(31, 0x636c70, static_cast<std::uint64_t>(trial)));
    int n = 2 + static_cast<int>(rng.below(2));
    int m = n + static_cast<int>(rng.below(static_cast<std::uint64_t>(7 - n)));
    Instance inst = random_instance(rng, n, m);
    FractionalSolution sol = solve_conflp_exact(inst);
    CHECK(check_fractional_solution(inst, sol).empty());
    double opt = brute_force_opt(inst).second;
    CHECK(sol.lp_value >= opt - 1e-9);
  }
}

TEST_CASE("fractional-solution checker flags tampered solutions") {
  Instance inst;
  inst.num_items = 3;
  inst.agents.push_back(Agent{0.5, Valuation::additive({1.0, 2.0, 3.0})});
  inst.agents.push_back(Agent{0.5, Valuation::additive({3.0, 2.0, 1.0})});
  FractionalSolution sol = solve_conflp_exact(inst);
  REQUIRE(check_fractional_solution(inst, sol).empty());

  FractionalSolution scaled = sol;
  scaled.entries.front().y += 0.25;
  CHECK(!check_fractional_solution(inst, scaled).empty());

  FractionalSolution wrong_value = sol;
  wrong_value.lp_value += 0.5;
  CHECK(!check_fractional_solution(inst, wrong_value).empty());

  FractionalSolution negative = sol;
  negative.entries.front().y = -0.1;
  CHECK(!check_fractional_solution(inst, negative).empty());
}

TEST_CASE("modified greedy knapsack stays within budget and near the optimum") {
  for (int trial = 0; trial < 30; ++trial) {
    Rng rng(derive_seed(31, 0x6b6e70, static_cast<std::uint64_t>(trial)));
    int m = 3 + static_cast<int>(rng.below(6));
    Valuation v = random_coverage(rng, m, 10);
    std::vector<double> costs(static_cast<std::size_t>(m));
    for (double& c : costs) c = 0.1 + 0.9 * rng.uniform01();
    double budget = 0.5 + 1.5 * rng.uniform01();

    ItemSet got = modified_greedy_knapsack(v, costs, budget, 3);
    double got_cost = 0.0;
    for (int j : got) got_cost += costs[static_cast<std::size_t>(j)];
    CHECK(got_cost <= budget + 1e-9);

    double opt = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      double cost = 0.0;
      for (int j = 0; j < m; ++j)
        if (mask & (1u << j)) cost += costs[static_cast<std::size_t>(j)];
      if (cost <= budget) opt = std::max(opt, v.eval_mask(mask));
    }
    CHECK(v.eval(got) >= (1.0 - std::exp(-1.0)) * opt - 1e-9);
  }
}

TEST_CASE("column generation matches the exact solve on small instances") {
  for (int trial = 0; trial < 8; ++trial) {
    Rng rng(derive_seed(31, 0x636772, static_cast<std::uint64_t>(trial)));
    int n = 2 + static_cast<int>(rng.below(2));
    int m = 4 + static_cast<int>(rng.below(5));
    Instance inst = random_instance(rng, n, m);
    FractionalSolution exact = solve_conflp_exact(inst);
    ColumnGenStats stats;
    FractionalSolution cg = column_generation_solve(inst, 3, 200, &stats);
    CHECK(check_fractional_solution(inst, cg).empty());
    CHECK(stats.converged);
    CHECK(cg.lp_value == doctest::Approx(exact.lp_value).epsilon(1e-4));
    CHECK(cg.lp_value <= exact.lp_value + 1e-7);
  }
}

TEST_CASE("column generation handles an instance beyond the enumeration cap") {
  AdditiveGapParams p{4, 2, 10.0, 0.01};
  Instance inst = gen_additive_gap(p);
  REQUIRE(inst.num_items > 16);
  GapReport gap = eval_additive_gap(p);
  ColumnGenStats stats;
  FractionalSolution sol = column_generation_solve(inst, 3, 200, &stats);
  CHECK(check_fractional_solution(inst, sol).empty());
  CHECK(sol.lp_value >= gap.log_fopt - 1e-7);
}

TEST_CASE("split_config takes the greedy prefix") {
  Valuation v = Valuation::additive({3.0, 1.0, 2.0});
  ConfigSplit sp = split_config(v, ItemSet::full(3), 2);
  CHECK(sp.enumerated == ItemSet{0, 2});
  CHECK(sp.rest == ItemSet{1});

  ConfigSplit all = split_config(v, ItemSet::full(3), 5);
  CHECK(all.enumerated == ItemSet::full(3));
  CHECK(all.rest.empty());
}

TEST_CASE("adjusted objective dominates the plain objective") {
  for (int trial = 0; trial < 10; ++trial) {
    Rng rng(derive_seed(31, 0x61646a, static_cast<std::uint64_t>(trial)));
    Instance inst = random_instance(rng, 2, 5);
    FractionalSolution sol = solve_conflp_exact(inst);
    double adj = adjusted_lp_objective(inst, sol, 2);
    CHECK(adj >= sol.lp_value - 1e-9);
    double adj_all = adjusted_lp_objective(inst, sol, 5);
    CHECK(adj_all == doctest::Approx(sol.lp_value).epsilon(1e-9));
  }
}
