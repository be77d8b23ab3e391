#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "nsw/conflp.hpp"
#include "nsw/core.hpp"
#include "nsw/gapgen.hpp"
#include "nsw/valuation.hpp"

using namespace nsw;

TEST_CASE("square instance at t=5 matches the exhaustive optimum") {
  GapReport rep = eval_square(5.0);
  CHECK(rep.family == "square");
  CHECK(rep.log_iopt == doctest::Approx(std::log(60.0) / 4.0).epsilon(1e-12));
  CHECK(rep.log_fopt == doctest::Approx(0.5 * std::log(10.0)).epsilon(1e-12));
  CHECK(rep.ratio == doctest::Approx(std::pow(10.0 / 6.0, 0.25)).epsilon(1e-12));
  CHECK(rep.feasibility_max_residual <= 1e-9);

  Instance inst = gen_square_instance(5.0);
  CHECK(validate_instance(inst).empty());
  REQUIRE(inst.num_agents() == 4);
  REQUIRE(inst.num_items == 6);
  for (const Agent& a : inst.agents) CHECK(a.weight == 0.25);

  auto [alloc, log_opt] = brute_force_opt(inst);
  CHECK(log_opt == doctest::Approx(rep.log_iopt).epsilon(1e-9));

  FractionalSolution lp = solve_conflp_exact(inst);
  CHECK(lp.lp_value >= rep.log_fopt - 1e-9);
}

TEST_CASE("square ratio follows the closed form and climbs toward the fourth root of two") {
  double t = 1e6;
  GapReport rep = eval_square(t);
  double expected = std::exp(0.25 * (std::log(2.0) + std::log(t) - std::log1p(t)));
  CHECK(rep.ratio == doctest::Approx(expected).epsilon(1e-12));
  CHECK(std::abs(rep.ratio - 1.18920) <= 1e-4);

  double r5 = eval_square(5.0).ratio;
  double r12 = eval_square(1e12).ratio;
  CHECK(r5 < rep.ratio);
  CHECK(rep.ratio < r12);
  CHECK(r12 < std::pow(2.0, 0.25));
}

TEST_CASE("restricted assignment gap reaches its stated bound below the limit") {
  AdditiveGapParams p{1000, 632, 1e9, 1e-6};
  GapReport rep = eval_additive_gap(p);
  CHECK(rep.family == "additive");
  CHECK(rep.ratio >= 1.4445);
  CHECK(rep.ratio < std::exp(std::exp(-1.0)));
  CHECK(rep.feasibility_max_residual <= 1e-9);

  double h = p.h, k = p.k;
  double expected_fopt =
      (1.0 - p.eps) * ((1.0 - k / h) * std::log(h) + (k / h) * std::log(p.t));
  CHECK(rep.log_fopt == doctest::Approx(expected_fopt).epsilon(1e-12));

  AdditiveGapParams flat = p;
  flat.eps = 0.999999;
  CHECK(std::abs(eval_additive_gap(flat).ratio - 1.0) <= 1e-4);
}

TEST_CASE("small restricted assignment instance agrees with brute force and the exact program") {
  AdditiveGapParams p{2, 1, 3.0, 0.25};
  Instance inst = gen_additive_gap(p);
  CHECK(validate_instance(inst).empty());
  REQUIRE(inst.num_agents() == 4);
  REQUIRE(inst.num_items == 5);
  CHECK(inst.agents[0].weight == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(inst.agents[1].weight == doctest::Approx(0.125).epsilon(1e-12));

  GapReport rep = eval_additive_gap(p);
  auto [alloc, log_opt] = brute_force_opt(inst);
  CHECK(log_opt == doctest::Approx(rep.log_iopt).epsilon(1e-9));

  FractionalSolution lp = solve_conflp_exact(inst);
  CHECK(lp.lp_value >= rep.log_fopt - 1e-9);

  // Restricted assignment: every item has one nonzero value shared by all
  // agents that can use it.
  for (int j = 0; j < inst.num_items; ++j) {
    double seen = 0.0;
    for (const Agent& a : inst.agents) {
      double v = a.valuation.eval(ItemSet({j}));
      if (v == 0.0) continue;
      if (seen == 0.0)
        seen = v;
      else
        CHECK(v == seen);
    }
    CHECK(seen > 0.0);
  }
}

TEST_CASE("partition system instance carries the closed-form heavy values") {
  SubmodularGapParams p{3, 2, 2.5, 0.5};
  Instance inst = gen_submodular_gap(p);
  REQUIRE(inst.num_agents() == 15);
  REQUIRE(inst.num_items == 19);
  CHECK(validate_instance(inst).empty());

  double wsum = 0.0;
  for (const Agent& a : inst.agents) wsum += a.weight;
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(inst.agents[0].weight == doctest::Approx(0.5 / 3.0).epsilon(1e-12));
  CHECK(inst.agents[1].weight == doctest::Approx(0.5 / 12.0).epsilon(1e-12));

  const double r = 729.0;
  const Valuation& heavy = inst.agents[0].valuation;

  ItemSet all_own;
  for (long long q = 1; q <= 2; ++q)
    for (long long o = 1; o <= 3; ++o)
      all_own.add(static_cast<int>(ps_set_item_index(3, 2, 1, q, o)));
  CHECK(heavy.eval(all_own) == doctest::Approx(r).epsilon(1e-12));

  ItemSet one_per_coordinate;
  for (long long q = 1; q <= 2; ++q)
    one_per_coordinate.add(static_cast<int>(ps_set_item_index(3, 2, 1, q, 3)));
  CHECK(heavy.eval(one_per_coordinate) ==
        doctest::Approx(r * (1.0 - std::pow(2.0 / 3.0, 2.0))).epsilon(1e-12));

  ItemSet with_large = one_per_coordinate;
  with_large.add(static_cast<int>(ps_large_item_index(3, 2, 0)));
  CHECK(heavy.eval(with_large) ==
        doctest::Approx(r * (1.0 - std::pow(2.0 / 3.0, 2.0)) + 2.5 * r).epsilon(1e-12));

  ItemSet full_plus = all_own;
  full_plus.add(static_cast<int>(ps_large_item_index(3, 2, 0)));
  CHECK(heavy.eval(full_plus) == doctest::Approx(r * 3.5).epsilon(1e-12));

  // Foreign blocks add nothing for the heavy agent.
  ItemSet foreign = all_own;
  foreign.add(static_cast<int>(ps_set_item_index(3, 2, 2, 1, 1)));
  CHECK(heavy.eval(foreign) == doctest::Approx(r).epsilon(1e-12));

  const Valuation& light = inst.agents[1].valuation;  // block (1,1)
  CHECK(light.eval(ItemSet({static_cast<int>(ps_set_item_index(3, 2, 1, 1, 2))})) == 1.0);
  CHECK(light.eval(ItemSet({static_cast<int>(ps_set_item_index(3, 2, 1, 2, 2))})) == 0.0);
  CHECK(light.eval(ItemSet({static_cast<int>(ps_large_item_index(3, 2, 0))})) == 0.0);
}

TEST_CASE("submodular gap report meets the published bound and grows with k and t") {
  GapReport big = eval_submodular_gap({1000, 693, 1e12, 1e-6});
  CHECK(big.family == "submodular");
  CHECK(big.ratio >= 1.61);
  CHECK(big.ratio <= 1.617);
  CHECK(big.feasibility_max_residual <= 1e-9);

  GapReport r10 = eval_submodular_gap({10, 6, 1e12, 1e-6});
  GapReport r100 = eval_submodular_gap({100, 69, 1e12, 1e-6});
  CHECK(r10.feasibility_max_residual <= 1e-9);
  CHECK(r100.feasibility_max_residual <= 1e-9);
  CHECK(r10.ratio < r100.ratio);
  CHECK(r100.ratio < big.ratio);

  GapReport small_t = eval_submodular_gap({100, 69, 1.0, 1e-6});
  CHECK(small_t.ratio < r100.ratio);
}

TEST_CASE("generator guards reject bad parameters and astronomical ground sets") {
  CHECK_THROWS_AS(gen_submodular_gap({2, 2, 1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(gen_submodular_gap({3, 2, -1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(gen_submodular_gap({3, 2, 1.0, 1.5}), std::invalid_argument);
  CHECK_THROWS_AS(gen_submodular_gap({20, 19, 1.0, 0.5}), std::invalid_argument);
  CHECK_NOTHROW(eval_submodular_gap({20, 19, 1.0, 0.5}));
  CHECK_NOTHROW(eval_submodular_gap({1000, 693, 1e12, 1e-6}));

  CHECK_THROWS_AS(gen_additive_gap({2, 2, 1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(gen_additive_gap({2, 1, 0.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(gen_additive_gap({10000, 1, 1.0, 0.5}), std::invalid_argument);
  CHECK_NOTHROW(eval_additive_gap({10000, 1, 1.0, 0.5}));

  CHECK_THROWS_AS(gen_square_instance(0.0), std::invalid_argument);
  CHECK_THROWS_AS(gen_square_instance(-2.0), std::invalid_argument);
}
