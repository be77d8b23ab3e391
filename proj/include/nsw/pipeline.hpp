#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nsw/conflp.hpp"
#include "nsw/core.hpp"
#include "nsw/json_io.hpp"

namespace nsw {

struct SolveOptions {
  std::uint64_t seed = 1;
  long trials = 1000;
  int enum_size = 3;
  double eps1 = 1e-4;
  int m_max = 14;        // exact Conf-LP up to this many items
  int max_rounds = 200;  // column-generation round cap beyond m_max
  int threads = 1;       // caps workers, never changes results
};

struct AgentOutcome {
  double adjusted_lp_contrib = 0.0;  // sum_S y ln(v(S_enu) + e/(e-1)(v(S) - v(S_enu)))
  double mean_log_value = 0.0;       // average ln v(T) over trials
  double stderr_log = 0.0;
};

// End-to-end result: Conf-LP value, its adjusted objective, and Monte Carlo
// averages over rounded assignments. ratio is finite whenever every trial
// gives every agent a positive bundle. wall_seconds stays out of the
// serialized report so identical configurations serialize identically.
struct SolveReport {
  double lp_value = 0.0;
  double adjusted_lp_value = 0.0;
  std::vector<AgentOutcome> agents;
  double log_welfare_mean = 0.0;  // average over trials of sum_i w_i ln v_i(T_i)
  double log_welfare_stderr = 0.0;
  double ratio = 0.0;  // exp(adjusted_lp_value - log_welfare_mean)
  long trials = 0;
  double wall_seconds = 0.0;
};

// Conf-LP (exact when num_items <= m_max, column generation otherwise),
// multigraph construction, then `trials` independent roundings with seeds
// derived from opt.seed. Deterministic given the options.
SolveReport run_solve(const Instance& inst, const SolveOptions& opt = {});

Json solve_report_to_json(const SolveReport& rep);

// ---------------------------------------------------------------------------
// Property suites. Each is deterministic given its seed and returns per-case
// failure counts; detail carries the first failure, info carries measurements
// worth reporting even on success.
// ---------------------------------------------------------------------------

struct CheckResult {
  std::string suite;
  long cases = 0;
  long failures = 0;
  std::string detail;
  std::string info;
  double seconds = 0.0;

  bool ok() const { return failures == 0; }
};

// Greedy-proxy laws on random coverage universes (ground size <= 10) with
// random partitions, checked exhaustively over all subsets: nonnegative
// monotone submodular, never exceeds the base valuation, singleton values
// equal greedy gains, additive within a block.
CheckResult check_proxy_properties(int cases, std::uint64_t seed);

// Concave/multilinear sandwich on random valuations with m <= 12:
// (1-1/e) f+(x) - 1e-7 <= F(x) <= f+(x) + 1e-7.
CheckResult check_extension_sandwich(int cases, std::uint64_t seed);

// Multigraph rounding invariants on random instances (n <= 4, m <= 10), over
// `trials` roundings each: one integral marked edge per agent every trial,
// per-edge marginals within 4 sqrt(x(1-x)/trials), pipage mean dominance
// E[val(U)] >= F(x^nlg) - 4 stderr, and both MGF concentration forms at
// lambda in {-0.25, -1, -2} within 4 stderr.
CheckResult check_rounding_invariants(int instances, long trials, std::uint64_t seed);

// Empirical E[e^{lambda sum Y_i}] <= prod_i E[e^{lambda Y_i}] on product
// distributions of scaled Bernoullis, lambda in {-0.25, -1, -2}.
CheckResult check_mgf_product(int cases, std::uint64_t seed);

// End-to-end welfare suite: on the square instance, gap instances, single
// agents, and random small instances, exp(adjusted_lp - sum_i w_i E[ln v_i])
// <= 3.56 + 5 stderr; per-agent realized value dominates the adjusted
// contribution minus ln(3.56); and on m <= 12 instances the LP value is at
// least the exhaustive optimum (recorded in info).
CheckResult check_solve_ratio(int instances, long trials, std::uint64_t seed);

struct CheckOptions {
  std::uint64_t seed = 1;
  int proxy_cases = 200;
  int sandwich_cases = 100;
  int rounding_instances = 50;
  long rounding_trials = 100000;
  int product_cases = 50;
  int solve_instances = 6;
  long solve_trials = 2000;
};

std::vector<CheckResult> run_checks(const CheckOptions& opt = {});

Json check_report_to_json(const std::vector<CheckResult>& results);

}  // namespace nsw
