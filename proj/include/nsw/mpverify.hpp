#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nsw/lp.hpp"

namespace nsw {

enum class MpMode { Mp3, Mp5 };

// Parameter box of the bound-verification programs. mu is the mean parameter
// (mubar for Mp3, mu for Mp5); alpha is the small-mass share and is ignored
// in Mp5 mode. l_lambda is fixed to 60 by the verified statement.
struct Mp3Box {
  double mu_lo = 0.0, mu_hi = 0.0;
  double k_lo = 1.0, k_hi = 1.0;
  double alpha_lo = 0.0, alpha_hi = 1.0;
  int l_t = 64;
  int l_lambda = 60;
};

// Discretized relaxation over the box, maximization form:
//   max sum_i (ln k_hi - ln t_i)^+ x_i   over x >= 0
//   (b) sum_i x_i <= 1
//   (c) for j in [60], lambda_j = ln(1 - j/61):
//       sum_i min{10000, exp(lambda_j t_{i+1} - E_j)} x_i <= 1,
//       E_j = (e^{lambda_j}-1)(1-alpha_lo) mu_lo + (lambda_j+0.0001) alpha_lo mu_lo
//   (e) sum_i (k_lo - t_{i+1})^+ x_i <= C (1-alpha_hi) mu_hi + C^2 alpha_hi mu_hi,
//       C = e/(e-1)
// with t_1 = 1, ..., t_{l_t+1} = k_hi evenly spaced. Objective coefficients
// use bucket left endpoints, constraint coefficients right endpoints, so any
// distribution on [1, k_hi] with parameters in the box buckets into a
// feasible x whose true objective is at most the LP objective.
LinearProgram build_mp32_lp(const Mp3Box& box);

// Same skeleton with E_j = (e^{lambda_j}-1) mu_lo and row (e) right-hand side
// C * mu_hi; alpha plays no role.
LinearProgram build_mp5_lp(const Mp3Box& box);

// Closed-form bounds that avoid the LP: the small-mean constant ln(1+C2)
// (C2 = (e/(e-1))^2 for Mp3, e/(e-1) for Mp5) when mu <= 1; that constant
// plus 0.015982 (Mp3, mu >= 3.6e5) or 0.280409 (Mp5, mu >= 1000); the
// k-pruning value C2 * mu * ln(k)/(k-1) when k >= e; nullopt otherwise.
// The k rule is the chord slope of ln at t = 1 times the row-(e) bound; the
// known feasible point (see check_feasible_point) rules out any k/(k-1)
// sharpening.
std::optional<double> analytic_prune(MpMode mode, double mu, double k);

struct TailBound {
  double y = 0.0;         // ln(1 + C*mu) / exp(delta^2 mu / 2)
  double combined = 0.0;  // ln(1 + C) + 2*delta + y
};

// Chernoff-split tail evaluation behind the large-mean constants; requires
// mu > 0 and delta in (0, 1/2).
TailBound tail_bound_eval(double mu, double delta, MpMode mode);

struct VerifyOptions {
  int max_depth = 40;
  int l_t_cap = 1024;  // l_t doubles per subdivision level up to this cap
};

struct BoxFailure {
  Mp3Box box;
  double bound = 0.0;  // best upper bound obtained for the box
};

struct VerifyReport {
  std::string mode;  // "mp3" or "mp5"
  double target = 0.0;  // exp-space, e.g. 3.56
  long boxes_certified = 0;
  double max_certified_lp_bound = 0.0;  // largest LP bound among certified leaves
  int max_depth_reached = 0;
  long lp_solve_count = 0;
  std::vector<BoxFailure> failures;  // nonempty means the run failed

  bool ok() const { return failures.empty(); }
};

// Depth-first certification that the mode's program value is at most
// ln(target) everywhere in the box: each leaf is closed by analytic pruning
// or by certified_upper_bound of the discretized LP (with a 1e-12 log-space
// margin); otherwise the widest interval by relative width (ties mu > k >
// alpha) splits at its midpoint and both halves recurse with doubled l_t.
// Boxes still open at max_depth are reported as failures. Deterministic.
VerifyReport verify_region(MpMode mode, const Mp3Box& box, double target,
                           const VerifyOptions& opt = {});

// A candidate solution to the continuous Mp3 program: a finite distribution
// for t, and the unmarked/small mean masses (1-alpha)*mubar and alpha*mubar.
struct Mp3Point {
  std::vector<std::pair<double, double>> dist;  // (t, probability)
  double mu_unmarked = 0.0;
  double mu_small = 0.0;
};

struct FeasiblePointReport {
  double objective = 0.0;
  double k = 0.0;              // recovered from row (e) at equality
  double max_violation = 0.0;  // over rows (b)-(d) and the probability sum
};

// Verifies the point against rows (b)-(d) on the lambda grid, recovers k
// from row (e) at equality, and evaluates the objective. Throws with the
// violated row (naming the lambda_j) when infeasible.
FeasiblePointReport check_mp3_point(const Mp3Point& pt);

// The witness distribution {1.0673 w.p. 0.936, 50 w.p. 0.064} with
// (1-alpha)*mubar = 0.21 and alpha*mubar = 1; demonstrates the program's
// value exceeds 1.2588 (so exp exceeds 3.521) and k lands near 4.096.
FeasiblePointReport check_feasible_point();

}  // namespace nsw
