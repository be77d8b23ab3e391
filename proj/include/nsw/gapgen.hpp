#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nsw/core.hpp"

namespace nsw {

// Partition-system family. t is the large-item bonus measured in units of
// r = k^(k*lambda), the ground-set size of the partition system.
struct SubmodularGapParams {
  int k = 3;
  int lambda = 2;  // 2 <= lambda < k
  double t = 1.0;
  double eps = 0.5;  // in (0,1)
};

// Restricted-assignment family: h^2 unit-value small items in h groups plus
// k large items of value t.
struct AdditiveGapParams {
  int h = 2;  // h > k >= 1
  int k = 1;
  double t = 1.0;
  double eps = 0.5;  // in (0,1)
};

struct GapReport {
  std::string family;
  std::vector<std::pair<std::string, double>> params;
  double log_iopt = 0.0;
  double log_fopt = 0.0;  // lower bound from the constructed fractional solution
  double ratio = 0.0;     // exp(log_fopt - log_iopt)
  double feasibility_max_residual = 0.0;
};

// Materializes the partition-system instance: per group p a heavy agent of
// weight (1-eps)/k valuing the union size of its set items plus t*r for any
// large item, and lambda*(k-1) light agents of weight eps/(k*lambda*(k-1))
// valuing their (p,q) block 0/1. Agents are emitted group by group, heavy
// first, then lights in (q,o) order. Throws when r overflows double range.
Instance gen_submodular_gap(const SubmodularGapParams& p);

// Log-space closed forms for both bounds; the fractional solution is summed
// numerically over one representative of each symmetry class and the largest
// constraint residual reported.
GapReport eval_submodular_gap(const SubmodularGapParams& p);

// Materializes the restricted-assignment instance: per group p a heavy agent
// of weight (1-eps)/h valuing its h private small items at 1 and every large
// item at t, and k light agents of weight eps/(k*h) valuing the same small
// items at 1. Group-by-group emission as above. Throws when the additive
// tables would be unreasonably large.
Instance gen_additive_gap(const AdditiveGapParams& p);

GapReport eval_additive_gap(const AdditiveGapParams& p);

// Four unit-weight agents on a square: four side items of value 1 and two
// diagonal items of value t, each item valued by its two endpoint agents.
Instance gen_square_instance(double t);

// log_iopt from exhaustive search (checked against (2t(t+1))^(1/4)), log_fopt
// from the half-half fractional solution with residuals from
// check_fractional_solution arithmetic.
GapReport eval_square(double t);

}  // namespace nsw
