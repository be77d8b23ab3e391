#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "nsw/common.hpp"
#include "nsw/lp.hpp"
#include "nsw/mpverify.hpp"

using namespace nsw;

namespace {

Mp3Box make_box(double mu_lo, double mu_hi, double k_lo, double k_hi,
                double a_lo, double a_hi, int l_t = 64) {
  Mp3Box b;
  b.mu_lo = mu_lo;
  b.mu_hi = mu_hi;
  b.k_lo = k_lo;
  b.k_hi = k_hi;
  b.alpha_lo = a_lo;
  b.alpha_hi = a_hi;
  b.l_t = l_t;
  return b;
}

}  // namespace

TEST_CASE("discretized program matches hand arithmetic on a two-bucket box") {
  Mp3Box box = make_box(2.0, 2.0, 4.0, 4.0, 0.5, 0.5, 2);
  box.l_lambda = 1;

  LinearProgram lp = build_mp32_lp(box);
  REQUIRE(lp.c.size() == 2);
  REQUIRE(lp.A.rows() == 3);
  REQUIRE(lp.A.cols() == 2);
  for (LpRelation r : lp.rel) CHECK(r == LpRelation::Le);

  CHECK(lp.c(0) == doctest::Approx(1.3862943611198906).epsilon(1e-14));
  CHECK(lp.c(1) == doctest::Approx(0.4700036292457356).epsilon(1e-14));
  CHECK(lp.A(0, 0) == 1.0);
  CHECK(lp.A(0, 1) == 1.0);
  CHECK(lp.b(0) == 1.0);
  CHECK(lp.A(1, 0) == doctest::Approx(0.5828527072141990).epsilon(1e-13));
  CHECK(lp.A(1, 1) == doctest::Approx(0.2060695508520487).epsilon(1e-13));
  CHECK(lp.b(1) == 1.0);
  CHECK(lp.A(2, 0) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(lp.A(2, 1) == 0.0);
  CHECK(lp.b(2) == doctest::Approx(4.0846270079464452).epsilon(1e-13));

  LinearProgram lp5 = build_mp5_lp(box);
  CHECK(lp5.c(0) == lp.c(0));
  CHECK(lp5.A(1, 0) == doctest::Approx(0.4805288785198896).epsilon(1e-13));
  CHECK(lp5.A(1, 1) == doctest::Approx(0.1698926142786903).epsilon(1e-13));
  CHECK(lp5.b(2) == doctest::Approx(3.1639534137386528).epsilon(1e-13));
}

TEST_CASE("objective vanishes when k cannot exceed one") {
  Mp3Box box = make_box(0.0, 1.0, 1.0, 1.0, 0.0, 1.0, 2);
  LinearProgram lp = build_mp32_lp(box);
  for (int i = 0; i < lp.c.size(); ++i) CHECK(lp.c(i) == 0.0);
  CHECK(solve_lp(lp).objective == doctest::Approx(0.0).epsilon(1e-12));
  double cub = certified_upper_bound(lp);
  CHECK(cub >= 0.0);
  CHECK(cub < 1e-6);
}

TEST_CASE("huge concentration coefficients are clamped") {
  Mp3Box box = make_box(1e4, 1e4, 2.0, 2.0, 1.0, 1.0, 2);
  LinearProgram lp = build_mp32_lp(box);
  double biggest = 0.0;
  for (int j = 1; j <= box.l_lambda; ++j)
    for (int i = 0; i < lp.A.cols(); ++i) biggest = std::max(biggest, lp.A(j, i));
  CHECK(biggest == 10000.0);
}

TEST_CASE("analytic prune follows its closed forms") {
  auto p = analytic_prune(MpMode::Mp3, 0.5, 7.0);
  REQUIRE(p.has_value());
  CHECK(*p == doctest::Approx(1.2535199108214055).epsilon(1e-14));
  CHECK(*analytic_prune(MpMode::Mp3, 1.0, 100.0) == *p);

  CHECK(*analytic_prune(MpMode::Mp3, 3.6e5, 1.0) ==
        doctest::Approx(1.2695019108214055).epsilon(1e-14));
  CHECK(*analytic_prune(MpMode::Mp3, 3.0, std::exp(1.0)) ==
        doctest::Approx(4.3694525419991696).epsilon(1e-13));
  CHECK(*analytic_prune(MpMode::Mp3, 2.0, 10.0) ==
        doctest::Approx(1.2805700613860520).epsilon(1e-13));
  CHECK_FALSE(analytic_prune(MpMode::Mp3, 2.0, 2.0).has_value());
  CHECK_FALSE(analytic_prune(MpMode::Mp3, 2.0, 2.7).has_value());

  CHECK(*analytic_prune(MpMode::Mp5, 0.3, 5.0) ==
        doctest::Approx(0.9485552710318319).epsilon(1e-14));
  CHECK(*analytic_prune(MpMode::Mp5, 1000.0, 1.0) ==
        doctest::Approx(1.2289642710318319).epsilon(1e-14));
  CHECK(*analytic_prune(MpMode::Mp5, 2.0, 10.0) ==
        doctest::Approx(0.8094746628224716).epsilon(1e-13));
  CHECK_FALSE(analytic_prune(MpMode::Mp5, 2.0, 2.0).has_value());
}

TEST_CASE("the k prune never undercuts the known feasible point") {
  FeasiblePointReport rep = check_feasible_point();
  auto p = analytic_prune(MpMode::Mp3, 0.21 + 1.0, rep.k);
  REQUIRE(p.has_value());
  CHECK(*p == doctest::Approx(1.3791353806890380).epsilon(1e-12));
  CHECK(*p >= rep.objective);
}

TEST_CASE("tail bounds match the frozen arithmetic") {
  TailBound t3 = tail_bound_eval(3.6e5, 0.0079, MpMode::Mp3);
  CHECK(t3.y == doctest::Approx(1.8125853028280759e-4).epsilon(1e-12));
  CHECK(t3.combined == doctest::Approx(1.2695011693516883).epsilon(1e-13));
  CHECK(t3.y < 0.000182);
  CHECK(std::exp(t3.combined) < 3.55908);

  TailBound t5 = tail_bound_eval(1000.0, 0.14, MpMode::Mp5);
  CHECK(t5.y == doctest::Approx(4.0851539015923562e-4).epsilon(1e-12));
  CHECK(t5.combined == doctest::Approx(1.2289637864219911).epsilon(1e-13));
  CHECK(t5.y < 0.000409);
  CHECK(std::exp(t5.combined) < 3.418);

  CHECK_THROWS_AS(tail_bound_eval(0.0, 0.1, MpMode::Mp3), std::invalid_argument);
  CHECK_THROWS_AS(tail_bound_eval(1.0, 0.0, MpMode::Mp3), std::invalid_argument);
  CHECK_THROWS_AS(tail_bound_eval(1.0, 0.5, MpMode::Mp5), std::invalid_argument);
}

TEST_CASE("the reference point recovers k near 4.096 and value above 1.2588") {
  FeasiblePointReport rep = check_feasible_point();
  CHECK(rep.objective == doctest::Approx(1.2588070894936208).epsilon(1e-12));
  CHECK(rep.k == doctest::Approx(4.0960023605979458).epsilon(1e-12));
  CHECK(std::abs(rep.k - 4.096) < 0.01);
  CHECK(std::exp(rep.objective) > 3.521);
  CHECK(rep.max_violation <= 1e-12);
}

TEST_CASE("the equality walk pins k inside the right segment") {
  Mp3Point pt;
  pt.dist = {{1.0, 0.5}, {2.0, 0.3}, {8.0, 0.2}};
  pt.mu_unmarked = 1.0;
  pt.mu_small = 0.5;
  FeasiblePointReport rep = check_mp3_point(pt);
  CHECK(rep.k == doctest::Approx(4.9166273217598572).epsilon(1e-12));
  CHECK(rep.objective == doctest::Approx(1.0661540792174346).epsilon(1e-12));
  double recovered = 0.5 * (rep.k - 1.0) + 0.3 * (rep.k - 2.0);
  CHECK(recovered ==
        doctest::Approx(kERatio * 1.0 + kERatio * kERatio * 0.5).epsilon(1e-12));
}

TEST_CASE("infeasible points name the violated row") {
  CHECK_THROWS_AS(check_mp3_point({}), std::invalid_argument);

  Mp3Point neg;
  neg.dist = {{2.0, -0.1}, {3.0, 1.1}};
  CHECK_THROWS_AS(check_mp3_point(neg), std::invalid_argument);

  Mp3Point negmass;
  negmass.dist = {{2.0, 1.0}};
  negmass.mu_small = -0.5;
  CHECK_THROWS_AS(check_mp3_point(negmass), std::invalid_argument);

  Mp3Point low;
  low.dist = {{0.5, 1.0}};
  CHECK_THROWS_AS(check_mp3_point(low), std::runtime_error);

  Mp3Point sum;
  sum.dist = {{2.0, 0.9}};
  CHECK_THROWS_AS(check_mp3_point(sum), std::runtime_error);

  Mp3Point lean;
  lean.dist = {{1.0, 1.0}};
  lean.mu_unmarked = 2.0;
  CHECK_THROWS_AS(check_mp3_point(lean), std::runtime_error);

  Mp3Point spread;
  spread.dist = {{1.0, 0.9}, {100.0, 0.1}};
  spread.mu_unmarked = 10.0;
  try {
    check_mp3_point(spread);
    FAIL("concentration violation not detected");
  } catch (const std::runtime_error& ex) {
    CHECK(std::string(ex.what()).find("lambda_") != std::string::npos);
  }
}

TEST_CASE("the bucketed relaxation dominates every feasible point") {
  Rng rng(20260817);
  int feasible = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Mp3Point pt;
    double t1 = 1.0 + 0.5 * rng.uniform01();
    double t2 = 5.0 + 55.0 * rng.uniform01();
    double p2 = 0.1 * rng.uniform01();
    pt.dist = {{t1, 1.0 - p2}, {t2, p2}};
    pt.mu_unmarked = 0.1 + 0.4 * rng.uniform01();
    pt.mu_small = 0.5 + 0.7 * rng.uniform01();

    FeasiblePointReport rep;
    try {
      rep = check_mp3_point(pt);
    } catch (const std::runtime_error&) {
      continue;
    }
    ++feasible;
    double mubar = pt.mu_unmarked + pt.mu_small;
    Mp3Box box =
        make_box(mubar, mubar, rep.k, rep.k, pt.mu_small / mubar, pt.mu_small / mubar, 128);
    double cub = certified_upper_bound(build_mp32_lp(box));
    CHECK(cub >= rep.objective - 1e-9);
  }
  CHECK(feasible >= 10);
}

TEST_CASE("the reference box admits the reference value and certifies below 3.56") {
  Mp3Box box = make_box(1.2, 1.22, 4.0, 4.2, 0.82, 0.83, 64);
  LpSolution sol = solve_lp(build_mp32_lp(box));
  CHECK(sol.objective >= 1.2588);
  double cub = certified_upper_bound(build_mp32_lp(box));
  CHECK(cub >= sol.objective - 1e-9);

  VerifyOptions opt;
  opt.max_depth = 12;
  VerifyReport rep = verify_region(MpMode::Mp3, box, 3.56, opt);
  CHECK(rep.ok());
  CHECK(rep.max_certified_lp_bound >= 1.2588);
  CHECK(rep.max_certified_lp_bound <= std::log(3.56));
  CHECK(rep.lp_solve_count >= 1);
  CHECK(rep.mode == "mp3");
}

TEST_CASE("prune-only regions certify without simplex calls") {
  VerifyReport small = verify_region(MpMode::Mp3, make_box(0.5, 1.0, 1.0, 2.0, 0.0, 1.0), 3.56);
  CHECK(small.ok());
  CHECK(small.boxes_certified == 1);
  CHECK(small.lp_solve_count == 0);
  CHECK(small.max_depth_reached == 0);

  VerifyReport bigk = verify_region(MpMode::Mp3, make_box(1.0, 1.5, 10.0, 12.0, 0.0, 1.0), 3.56);
  CHECK(bigk.ok());
  CHECK(bigk.lp_solve_count == 0);

  VerifyReport bigmu =
      verify_region(MpMode::Mp3, make_box(3.6e5, 1e6, 1.0, 5.0, 0.0, 1.0), 3.56);
  CHECK(bigmu.ok());
  CHECK(bigmu.lp_solve_count == 0);

  VerifyReport m5 = verify_region(MpMode::Mp5, make_box(1.0, 2.0, 10.0, 12.0, 0.0, 1.0), 3.45);
  CHECK(m5.ok());
  CHECK(m5.lp_solve_count == 0);
  CHECK(m5.mode == "mp5");
}

TEST_CASE("a region containing the reference point never certifies below its value") {
  Mp3Box box = make_box(1.2, 1.22, 4.0, 4.2, 0.82, 0.83, 64);
  VerifyOptions opt;
  opt.max_depth = 4;
  VerifyReport rep = verify_region(MpMode::Mp3, box, 3.45, opt);
  CHECK_FALSE(rep.ok());
  REQUIRE(!rep.failures.empty());
  for (const BoxFailure& f : rep.failures) {
    CHECK(f.bound > std::log(3.45));
    CHECK(f.box.mu_lo >= box.mu_lo - 1e-12);
    CHECK(f.box.mu_hi <= box.mu_hi + 1e-12);
  }
}

TEST_CASE("bad arguments are rejected") {
  CHECK_THROWS_AS(verify_region(MpMode::Mp3, make_box(1.0, 2.0, 1.0, 2.0, 0.0, 1.0), 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(verify_region(MpMode::Mp3, make_box(2.0, 1.0, 1.0, 2.0, 0.0, 1.0), 3.56),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_mp32_lp(make_box(1.0, 2.0, 0.5, 2.0, 0.0, 1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_mp32_lp(make_box(1.0, 2.0, 1.0, 2.0, 0.0, 1.5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_mp32_lp(make_box(1.0, 2.0, 1.0, 2.0, 0.0, 1.0, 1)),
                  std::invalid_argument);
  Mp3Box bad = make_box(1.0, 2.0, 1.0, 2.0, 0.0, 1.0);
  bad.l_lambda = 0;
  CHECK_THROWS_AS(build_mp5_lp(bad), std::invalid_argument);
}
