#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nsw/common.hpp"
#include "nsw/conflp.hpp"
#include "nsw/core.hpp"

namespace nsw {

struct MultiEdge {
  int agent = 0;
  int item = 0;
  double x = 0.0;       // fractional assigned mass, in (0,1]
  bool marked = false;  // carries the agent's top unit of configuration mass
  int config_id = 0;    // index into the originating solution's entries
  double phi = 0.0;     // greedy marginal gain of (config, item)
};

// Agent-item multigraph built from a fractional solution. Parallel edges are
// kept separate. Per agent the marked x-mass is 1; per item the total x-mass
// is 1; within an agent every marked phi dominates every unmarked phi.
struct BipartiteMultigraph {
  int num_agents = 0;
  int num_items = 0;
  std::vector<MultiEdge> edges;
  std::vector<std::vector<int>> agent_edges;
  std::vector<std::vector<int>> item_edges;
};

BipartiteMultigraph build_multigraph(const Instance& inst, const FractionalSolution& sol);

// Invariant check; returns violation messages, empty when valid.
std::vector<std::string> check_multigraph(const BipartiteMultigraph& g, double tol = 1e-7);

// A rotation target: either a simple cycle of fractional marked edges, or a
// path of fractional marked edges between two items extended by one
// fractional unmarked edge at each end (the marked segment may be empty, in
// which case the two unmarked edges meet at one item). Edges are listed so
// that consecutive edges share an endpoint; cycles close back to the start.
struct RoundingStructure {
  enum class Kind { Cycle, Path, Done };
  Kind kind = Kind::Done;
  std::vector<int> edges;
};

// Deterministic lowest-edge-index DFS search for the next rotation target;
// Done iff no fractional edge remains.
RoundingStructure find_rounding_structure(const BipartiteMultigraph& g);

// Alternately 2-colors the structure's edges, then with probability
// delta2/(delta1+delta2) moves every + edge down and - edge up by delta1,
// otherwise the opposite by delta2, where delta1 = min(min+ x, min- (1-x))
// and delta2 = min(min+ (1-x), min- x). Mean-preserving; at least one edge
// becomes integral; per-item totals and per-agent marked totals are
// unchanged.
void rotate(BipartiteMultigraph& g, const RoundingStructure& s, Rng& rng);

struct RoundingOutcome {
  std::uint64_t seed = 0;
  std::vector<ItemSet> assignment;       // per agent
  std::vector<int> large_item;           // per agent: the item of its one marked x=1 edge
  std::vector<std::uint8_t> edge_final;  // per edge: 1 iff rounded to x=1
};

// Repeats find_rounding_structure/rotate until integral; deterministic given
// the seed. Throws if more than 10 * |edges| rotations occur (each rotation
// must fix at least one edge).
RoundingOutcome round(const BipartiteMultigraph& g, std::uint64_t seed);

// Mean-preserving randomized rounding of x to an integral vector. The
// schedule picks the coordinate pair per step (second index -1 for a
// single-coordinate step); the default takes the first two fractional
// coordinates, then finishes single coordinates.
using PipageSchedule = std::function<std::pair<int, int>(const Eigen::VectorXd&)>;

Eigen::VectorXd pipage_round(Eigen::VectorXd x, Rng& rng, const PipageSchedule& schedule = {});

enum class EdgeClass { Large, Medium, Small };

// Per-edge size classes for one agent: large = marked; medium = unmarked with
// phi >= sqrt(eps1) * norm; small otherwise, where norm is the agent's
// smallest marked phi. When norm is 0 every unmarked edge is small and the
// normalized statistics are reported as 0.
struct ItemClassification {
  double norm = 0.0;
  std::vector<int> agent_edge_ids;
  std::vector<EdgeClass> edge_class;  // parallel to agent_edge_ids
};

// Normalized statistics of one agent, all in units of norm:
//   mu_sm   expected proxy value of the independently-sampled small edges;
//   mu_nlg  the same over all unmarked edges;
//   mubar_md, mubar_sm  (1-1/e) times the exact configuration-distribution
//           expectation of the medium / small proxy mass in the
//           non-enumerated part;
//   p_star  configuration mass where the non-enumerated part contains
//           anything other than small items.
struct AgentStats {
  double mu_sm = 0.0;
  double mu_nlg = 0.0;
  double mubar_md = 0.0;
  double mubar_sm = 0.0;
  double p_star = 0.0;
};

struct ClassifyOptions {
  double eps1 = 1e-4;
  int enum_size = 3;
  int exact_edge_cap = 16;  // exact multilinear up to this many agent edges
  long mc_trials = 100000;
  std::uint64_t seed = 1;
};

std::pair<ItemClassification, AgentStats> classify_and_stats(const Instance& inst,
                                                             const FractionalSolution& sol,
                                                             const BipartiteMultigraph& g,
                                                             int agent,
                                                             const ClassifyOptions& opt = {});

// Value table of the greedy proxy over one agent's edges; masks index
// positions of g.agent_edges[agent]. Requires edge count <= 22 and
// num_items <= 20.
std::vector<double> proxy_edge_table(const Instance& inst, const BipartiteMultigraph& g,
                                     int agent);

// Greedy-proxy evaluator over one agent's edges, with the agent's
// configurations as blocks. Edge subsets with up to 22 distinct items are
// supported; the valuation is tabulated once when num_items <= 20.
class AgentEdgeProxy {
 public:
  AgentEdgeProxy(const Instance& inst, const BipartiteMultigraph& g, int agent);

  // edge_ids must belong to this agent.
  double eval(const std::vector<int>& edge_ids) const;
  double phi(int edge_id) const;
  int agent() const { return agent_; }

 private:
  const Valuation* valuation_;
  const BipartiteMultigraph* g_;
  int agent_ = 0;
  std::vector<double> table_;  // item-space value table when available
};

}  // namespace nsw
