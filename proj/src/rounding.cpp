#include "nsw/rounding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include "nsw/submodular.hpp"

namespace nsw {

namespace {

bool is_fractional(double x) { return x > kTol && x < 1.0 - kTol; }

}  // namespace

BipartiteMultigraph build_multigraph(const Instance& inst, const FractionalSolution& sol) {
  auto errs = check_fractional_solution(inst, sol);
  if (!errs.empty()) throw std::invalid_argument("build_multigraph: " + errs[0]);

  BipartiteMultigraph g;
  g.num_agents = inst.num_agents();
  g.num_items = inst.num_items;
  g.agent_edges.resize(static_cast<std::size_t>(g.num_agents));
  g.item_edges.resize(static_cast<std::size_t>(g.num_items));

  struct Pair {
    double phi;
    int entry;
    int item;
  };
  for (int i = 0; i < g.num_agents; ++i) {
    std::vector<Pair> pairs;
    for (std::size_t e = 0; e < sol.entries.size(); ++e) {
      const FractionalEntry& fe = sol.entries[e];
      if (fe.agent != i) continue;
      GreedyOrder go = greedy_order(inst.agents[static_cast<std::size_t>(i)].valuation, fe.config);
      for (std::size_t t = 0; t < go.order.size(); ++t)
        pairs.push_back({go.phi[t], static_cast<int>(e), go.order[t]});
    }
    // Largest marginals first; stable so ties keep (entry, greedy position)
    // order and the construction is reproducible.
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const Pair& a, const Pair& b) { return a.phi > b.phi; });

    double cum = 0.0;
    for (const Pair& p : pairs) {
      double y = sol.entries[static_cast<std::size_t>(p.entry)].y;
      double marked_part, unmarked_part;
      if (cum >= 1.0 - 1e-12) {
        marked_part = 0.0;
        unmarked_part = y;
      } else if (cum + y <= 1.0 + 1e-12) {
        marked_part = y;
        unmarked_part = 0.0;
      } else {
        marked_part = 1.0 - cum;
        unmarked_part = y - marked_part;
      }
      cum += y;
      if (marked_part > 1e-12)
        g.edges.push_back({i, p.item, std::min(marked_part, 1.0), true, p.entry, p.phi});
      if (unmarked_part > 1e-12)
        g.edges.push_back({i, p.item, std::min(unmarked_part, 1.0), false, p.entry, p.phi});
    }
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    g.agent_edges[static_cast<std::size_t>(g.edges[e].agent)].push_back(static_cast<int>(e));
    g.item_edges[static_cast<std::size_t>(g.edges[e].item)].push_back(static_cast<int>(e));
  }
  return g;
}

std::vector<std::string> check_multigraph(const BipartiteMultigraph& g, double tol) {
  std::vector<std::string> out;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const MultiEdge& me = g.edges[e];
    if (!(me.x > 0.0 && me.x <= 1.0) && me.x != 0.0)
      out.push_back("edge " + std::to_string(e) + ": x outside (0,1]");
    if (me.phi < 0.0) out.push_back("edge " + std::to_string(e) + ": negative phi");
  }
  for (int i = 0; i < g.num_agents; ++i) {
    double marked_sum = 0.0;
    double min_marked_phi = kInfRatio, max_unmarked_phi = 0.0;
    bool has_unmarked = false;
    for (int e : g.agent_edges[static_cast<std::size_t>(i)]) {
      const MultiEdge& me = g.edges[static_cast<std::size_t>(e)];
      if (me.marked) {
        marked_sum += me.x;
        min_marked_phi = std::min(min_marked_phi, me.phi);
      } else if (me.x > 0.0) {
        has_unmarked = true;
        max_unmarked_phi = std::max(max_unmarked_phi, me.phi);
      }
    }
    if (std::abs(marked_sum - 1.0) > tol)
      out.push_back("agent " + std::to_string(i) + ": marked mass " + std::to_string(marked_sum));
    if (has_unmarked && min_marked_phi < max_unmarked_phi - 1e-9)
      out.push_back("agent " + std::to_string(i) + ": unmarked phi exceeds marked phi");
  }
  for (int j = 0; j < g.num_items; ++j) {
    double total = 0.0;
    for (int e : g.item_edges[static_cast<std::size_t>(j)])
      total += g.edges[static_cast<std::size_t>(e)].x;
    if (std::abs(total - 1.0) > tol)
      out.push_back("item " + std::to_string(j) + ": mass " + std::to_string(total));
  }
  return out;
}

namespace {

// Vertex ids: agents first, then items.
int other_vertex(const BipartiteMultigraph& g, int edge, int vid) {
  const MultiEdge& me = g.edges[static_cast<std::size_t>(edge)];
  int av = me.agent;
  int jv = g.num_agents + me.item;
  return vid == av ? jv : av;
}

}  // namespace

RoundingStructure find_rounding_structure(const BipartiteMultigraph& g) {
  int nv = g.num_agents + g.num_items;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(nv));
  bool any_marked_frac = false;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const MultiEdge& me = g.edges[e];
    if (!me.marked || !is_fractional(me.x)) continue;
    any_marked_frac = true;
    adj[static_cast<std::size_t>(me.agent)].push_back(static_cast<int>(e));
    adj[static_cast<std::size_t>(g.num_agents + me.item)].push_back(static_cast<int>(e));
  }

  auto smallest_unmarked_at = [&](int item) {
    for (int e : g.item_edges[static_cast<std::size_t>(item)]) {
      const MultiEdge& me = g.edges[static_cast<std::size_t>(e)];
      if (!me.marked && is_fractional(me.x)) return e;
    }
    return -1;
  };

  if (any_marked_frac) {
    // DFS over the fractional marked subgraph: a back edge closes a cycle;
    // otherwise walk leaf-to-leaf in the forest. Adjacency is in edge-id
    // order, so the walk is deterministic.
    std::vector<int> state(static_cast<std::size_t>(nv), 0);
    std::vector<int> parent_edge(static_cast<std::size_t>(nv), -1);
    std::vector<int> parent_vertex(static_cast<std::size_t>(nv), -1);
    for (int root = 0; root < nv; ++root) {
      if (state[static_cast<std::size_t>(root)] != 0 ||
          adj[static_cast<std::size_t>(root)].empty())
        continue;
      std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
      state[static_cast<std::size_t>(root)] = 1;
      while (!stack.empty()) {
        auto& [u, it] = stack.back();
        if (it >= adj[static_cast<std::size_t>(u)].size()) {
          state[static_cast<std::size_t>(u)] = 2;
          stack.pop_back();
          continue;
        }
        int e = adj[static_cast<std::size_t>(u)][it++];
        if (e == parent_edge[static_cast<std::size_t>(u)]) continue;
        int w = other_vertex(g, e, u);
        if (state[static_cast<std::size_t>(w)] == 1) {
          std::vector<int> chain;
          int cur = u;
          while (cur != w) {
            chain.push_back(parent_edge[static_cast<std::size_t>(cur)]);
            cur = parent_vertex[static_cast<std::size_t>(cur)];
          }
          std::reverse(chain.begin(), chain.end());
          chain.push_back(e);
          return RoundingStructure{RoundingStructure::Kind::Cycle, std::move(chain)};
        }
        if (state[static_cast<std::size_t>(w)] == 0) {
          state[static_cast<std::size_t>(w)] = 1;
          parent_edge[static_cast<std::size_t>(w)] = e;
          parent_vertex[static_cast<std::size_t>(w)] = u;
          stack.emplace_back(w, 0);
        }
      }
    }

    // Acyclic: agents incident to a fractional marked edge have two or more
    // of them, so every leaf of the forest is an item carrying a fractional
    // unmarked edge.
    auto is_leaf_item = [&](int vid) {
      return vid >= g.num_agents && adj[static_cast<std::size_t>(vid)].size() == 1;
    };
    for (int start = g.num_agents; start < nv; ++start) {
      if (!is_leaf_item(start)) continue;
      std::fill(state.begin(), state.end(), 0);
      std::fill(parent_edge.begin(), parent_edge.end(), -1);
      std::fill(parent_vertex.begin(), parent_vertex.end(), -1);
      std::vector<std::pair<int, std::size_t>> stack{{start, 0}};
      state[static_cast<std::size_t>(start)] = 1;
      int found = -1;
      while (!stack.empty() && found < 0) {
        auto& [u, it] = stack.back();
        if (it >= adj[static_cast<std::size_t>(u)].size()) {
          stack.pop_back();
          continue;
        }
        int e = adj[static_cast<std::size_t>(u)][it++];
        if (e == parent_edge[static_cast<std::size_t>(u)]) continue;
        int w = other_vertex(g, e, u);
        if (state[static_cast<std::size_t>(w)] != 0) continue;
        state[static_cast<std::size_t>(w)] = 1;
        parent_edge[static_cast<std::size_t>(w)] = e;
        parent_vertex[static_cast<std::size_t>(w)] = u;
        if (is_leaf_item(w)) {
          found = w;
          break;
        }
        stack.emplace_back(w, 0);
      }
      if (found < 0)
        throw std::runtime_error("find_rounding_structure: leaf-to-leaf walk failed");
      std::vector<int> chain;
      int cur = found;
      while (cur != start) {
        chain.push_back(parent_edge[static_cast<std::size_t>(cur)]);
        cur = parent_vertex[static_cast<std::size_t>(cur)];
      }
      std::reverse(chain.begin(), chain.end());
      int u0 = smallest_unmarked_at(start - g.num_agents);
      int u1 = smallest_unmarked_at(found - g.num_agents);
      if (u0 < 0 || u1 < 0)
        throw std::runtime_error(
            "find_rounding_structure: leaf item lacks a fractional unmarked edge");
      std::vector<int> seq;
      seq.push_back(u0);
      seq.insert(seq.end(), chain.begin(), chain.end());
      seq.push_back(u1);
      return RoundingStructure{RoundingStructure::Kind::Path, std::move(seq)};
    }
    throw std::runtime_error("find_rounding_structure: fractional marked forest has no item leaf");
  }

  for (int j = 0; j < g.num_items; ++j) {
    std::vector<int> frac;
    for (int e : g.item_edges[static_cast<std::size_t>(j)]) {
      if (is_fractional(g.edges[static_cast<std::size_t>(e)].x)) frac.push_back(e);
    }
    if (frac.empty()) continue;
    if (frac.size() < 2)
      throw std::runtime_error(
          "find_rounding_structure: item with a single fractional edge");
    return RoundingStructure{RoundingStructure::Kind::Path, {frac[0], frac[1]}};
  }
  return RoundingStructure{RoundingStructure::Kind::Done, {}};
}

void rotate(BipartiteMultigraph& g, const RoundingStructure& s, Rng& rng) {
  if (s.kind == RoundingStructure::Kind::Done || s.edges.empty())
    throw std::invalid_argument("rotate: nothing to rotate");
  if (s.kind == RoundingStructure::Kind::Cycle && s.edges.size() % 2 != 0)
    throw std::runtime_error("rotate: odd cycle in a bipartite graph");

  double delta1 = kInfRatio, delta2 = kInfRatio;
  for (std::size_t i = 0; i < s.edges.size(); ++i) {
    double x = g.edges[static_cast<std::size_t>(s.edges[i])].x;
    if (i % 2 == 0) {
      delta1 = std::min(delta1, x);
      delta2 = std::min(delta2, 1.0 - x);
    } else {
      delta1 = std::min(delta1, 1.0 - x);
      delta2 = std::min(delta2, x);
    }
  }
  if (delta1 + delta2 <= 0.0) throw std::runtime_error("rotate: degenerate structure");

  double step = rng.uniform01() < delta2 / (delta1 + delta2) ? -delta1 : delta2;
  for (std::size_t i = 0; i < s.edges.size(); ++i) {
    double sign = i % 2 == 0 ? 1.0 : -1.0;
    double& x = g.edges[static_cast<std::size_t>(s.edges[i])].x;
    x += sign * step;
    if (x < 1e-12) x = 0.0;
    if (x > 1.0 - 1e-12) x = 1.0;
  }
}

RoundingOutcome round(const BipartiteMultigraph& g, std::uint64_t seed) {
  BipartiteMultigraph work = g;
  Rng rng(seed);
  std::size_t cap = 10 * work.edges.size() + 10;
  for (std::size_t iter = 0;; ++iter) {
    if (iter > cap) throw std::runtime_error("round: rotation cap exceeded");
    RoundingStructure s = find_rounding_structure(work);
    if (s.kind == RoundingStructure::Kind::Done) break;
    rotate(work, s, rng);
  }

  RoundingOutcome out;
  out.seed = seed;
  out.assignment.assign(static_cast<std::size_t>(work.num_agents), ItemSet{});
  out.large_item.assign(static_cast<std::size_t>(work.num_agents), -1);
  out.edge_final.assign(work.edges.size(), 0);
  std::vector<int> item_owner(static_cast<std::size_t>(work.num_items), -1);
  for (std::size_t e = 0; e < work.edges.size(); ++e) {
    const MultiEdge& me = work.edges[e];
    if (me.x < 1.0 - kTol) continue;
    out.edge_final[e] = 1;
    if (item_owner[static_cast<std::size_t>(me.item)] != -1)
      throw std::runtime_error("round: item assigned twice");
    item_owner[static_cast<std::size_t>(me.item)] = me.agent;
    out.assignment[static_cast<std::size_t>(me.agent)].add(me.item);
    if (me.marked) {
      if (out.large_item[static_cast<std::size_t>(me.agent)] != -1)
        throw std::runtime_error("round: agent with two integral marked edges");
      out.large_item[static_cast<std::size_t>(me.agent)] = me.item;
    }
  }
  for (int i = 0; i < work.num_agents; ++i) {
    if (out.large_item[static_cast<std::size_t>(i)] == -1)
      throw std::runtime_error("round: agent without an integral marked edge");
  }
  for (int j = 0; j < work.num_items; ++j) {
    if (item_owner[static_cast<std::size_t>(j)] == -1)
      throw std::runtime_error("round: unassigned item");
  }
  return out;
}

Eigen::VectorXd pipage_round(Eigen::VectorXd x, Rng& rng, const PipageSchedule& schedule) {
  int n = static_cast<int>(x.size());
  check_fractional_vector(x, n);
  long cap = 50L * n + 50;
  for (long iter = 0; iter <= cap; ++iter) {
    int j = -1, k = -1;
    if (schedule) {
      std::tie(j, k) = schedule(x);
      if (j < 0) break;
    } else {
      for (int t = 0; t < n && k < 0; ++t) {
        if (!is_fractional(x(t))) continue;
        if (j < 0)
          j = t;
        else
          k = t;
      }
      if (j < 0) break;
    }
    if (k < 0) {
      double p_zero = 1.0 - x(j);
      x(j) = rng.uniform01() < p_zero ? 0.0 : 1.0;
      continue;
    }
    double delta1 = std::min(x(j), 1.0 - x(k));
    double delta2 = std::min(1.0 - x(j), x(k));
    if (delta1 + delta2 <= 0.0) continue;
    if (rng.uniform01() < delta2 / (delta1 + delta2)) {
      x(j) -= delta1;
      x(k) += delta1;
    } else {
      x(j) += delta2;
      x(k) -= delta2;
    }
    for (int t : {j, k}) {
      if (x(t) < 1e-12) x(t) = 0.0;
      if (x(t) > 1.0 - 1e-12) x(t) = 1.0;
    }
  }
  for (int t = 0; t < n; ++t) {
    if (is_fractional(x(t))) throw std::runtime_error("pipage_round: did not reach integrality");
    x(t) = x(t) < 0.5 ? 0.0 : 1.0;
  }
  return x;
}

AgentEdgeProxy::AgentEdgeProxy(const Instance& inst, const BipartiteMultigraph& g, int agent)
    : valuation_(&inst.agents.at(static_cast<std::size_t>(agent)).valuation),
      g_(&g),
      agent_(agent) {
  if (valuation_->num_items() <= 20) table_ = tabulate_valuation(*valuation_);
}

double AgentEdgeProxy::phi(int edge_id) const {
  return g_->edges.at(static_cast<std::size_t>(edge_id)).phi;
}

double AgentEdgeProxy::eval(const std::vector<int>& edge_ids) const {
  // min_{T <= R} v(items(T)) + phi(R \ T): an optimal T absorbs every edge of
  // R whose item it already covers, so it suffices to scan item subsets C of
  // items(R), scoring v(C) minus the phi mass that lands in C.
  double phi_total = 0.0;
  std::vector<int> items;
  std::vector<double> phi_sum;
  for (int e : edge_ids) {
    const MultiEdge& me = g_->edges.at(static_cast<std::size_t>(e));
    if (me.agent != agent_) throw std::invalid_argument("AgentEdgeProxy: foreign edge");
    phi_total += me.phi;
    auto it = std::find(items.begin(), items.end(), me.item);
    if (it == items.end()) {
      items.push_back(me.item);
      phi_sum.push_back(me.phi);
    } else {
      phi_sum[static_cast<std::size_t>(it - items.begin())] += me.phi;
    }
  }
  int k = static_cast<int>(items.size());
  if (k > 22) throw std::invalid_argument("AgentEdgeProxy: more than 22 distinct items");
  double best = 0.0;  // C empty
  std::vector<double> phi_acc(std::size_t{1} << k, 0.0);
  std::vector<std::uint32_t> mask_acc(std::size_t{1} << k, 0);
  for (std::uint32_t c = 1; c < (std::uint32_t{1} << k); ++c) {
    std::uint32_t low = c & (~c + 1);
    int b = std::countr_zero(c);
    phi_acc[c] = phi_acc[c ^ low] + phi_sum[static_cast<std::size_t>(b)];
    double v;
    if (!table_.empty()) {
      mask_acc[c] =
          mask_acc[c ^ low] | (std::uint32_t{1} << items[static_cast<std::size_t>(b)]);
      v = table_[mask_acc[c]];
    } else {
      ItemSet s;
      for (int b2 = 0; b2 < k; ++b2)
        if (c & (std::uint32_t{1} << b2)) s.add(items[static_cast<std::size_t>(b2)]);
      v = valuation_->eval(s);
    }
    best = std::min(best, v - phi_acc[c]);
  }
  return phi_total + best;
}

std::vector<double> proxy_edge_table(const Instance& inst, const BipartiteMultigraph& g,
                                     int agent) {
  if (agent < 0 || agent >= g.num_agents)
    throw std::out_of_range("proxy_edge_table: agent out of range");
  const std::vector<int>& eids = g.agent_edges[static_cast<std::size_t>(agent)];
  int ecount = static_cast<int>(eids.size());
  if (ecount > 22 || inst.num_items > 20)
    throw std::invalid_argument("proxy_edge_table: too many edges or items to tabulate");
  std::vector<double> vt = tabulate_valuation(inst.agents[static_cast<std::size_t>(agent)].valuation);
  // Peeling over edge masks, mirroring proxy_table: a set's value is the best
  // of the raw valuation on its items and dropping one edge at phi cost.
  std::size_t full = std::size_t{1} << ecount;
  std::vector<double> val(full, 0.0);
  std::vector<std::uint32_t> im(full, 0);
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    std::uint32_t low = mask & (~mask + 1);
    int b = std::countr_zero(mask);
    const MultiEdge& lowe = g.edges[static_cast<std::size_t>(eids[static_cast<std::size_t>(b)])];
    im[mask] = im[mask ^ low] | (std::uint32_t{1} << lowe.item);
    double best = vt[im[mask]];
    std::uint32_t rest = mask;
    while (rest) {
      std::uint32_t lb = rest & (~rest + 1);
      int t = std::countr_zero(rest);
      best = std::min(best,
                      val[mask ^ lb] +
                          g.edges[static_cast<std::size_t>(eids[static_cast<std::size_t>(t)])].phi);
      rest ^= lb;
    }
    val[mask] = best;
  }
  return val;
}

std::pair<ItemClassification, AgentStats> classify_and_stats(const Instance& inst,
                                                             const FractionalSolution& sol,
                                                             const BipartiteMultigraph& g,
                                                             int agent,
                                                             const ClassifyOptions& opt) {
  if (agent < 0 || agent >= g.num_agents)
    throw std::invalid_argument("classify_and_stats: agent out of range");
  const std::vector<int>& eids = g.agent_edges[static_cast<std::size_t>(agent)];
  double norm = kInfRatio;
  bool has_marked = false;
  for (int e : eids) {
    const MultiEdge& me = g.edges[static_cast<std::size_t>(e)];
    if (me.marked) {
      has_marked = true;
      norm = std::min(norm, me.phi);
    }
  }
  if (!has_marked) throw std::invalid_argument("classify_and_stats: agent has no marked edge");

  double threshold = std::sqrt(opt.eps1) * norm;
  ItemClassification cls;
  cls.norm = norm;
  cls.agent_edge_ids = eids;
  for (int e : eids) {
    const MultiEdge& me = g.edges[static_cast<std::size_t>(e)];
    if (me.marked)
      cls.edge_class.push_back(EdgeClass::Large);
    else if (norm > 0.0 && me.phi >= threshold)
      cls.edge_class.push_back(EdgeClass::Medium);
    else
      cls.edge_class.push_back(EdgeClass::Small);
  }

  AgentStats stats;
  const Agent& ag = inst.agents[static_cast<std::size_t>(agent)];

  // Configuration-side quantities: exact sums over the agent's distribution.
  std::map<std::pair<int, int>, bool> pair_marked;  // (entry, item) -> any marked edge
  for (int e : eids) {
    const MultiEdge& me = g.edges[static_cast<std::size_t>(e)];
    auto key = std::make_pair(me.config_id, me.item);
    pair_marked[key] = pair_marked[key] || me.marked;
  }
  for (std::size_t eidx = 0; eidx < sol.entries.size(); ++eidx) {
    const FractionalEntry& fe = sol.entries[eidx];
    if (fe.agent != agent) continue;
    GreedyOrder go = greedy_order(ag.valuation, fe.config);
    bool strict = false;
    double md_mass = 0.0, sm_mass = 0.0;
    for (std::size_t t = static_cast<std::size_t>(opt.enum_size); t < go.order.size(); ++t) {
      int j = go.order[t];
      double phi = go.phi[t];
      bool marked = pair_marked[{static_cast<int>(eidx), j}];
      if (marked) {
        strict = true;
      } else if (norm > 0.0 && phi >= threshold) {
        strict = true;
        md_mass += phi;
      } else {
        sm_mass += phi;
      }
    }
    if (strict) stats.p_star += fe.y;
    if (norm > 0.0) {
      stats.mubar_md += fe.y * md_mass;
      stats.mubar_sm += fe.y * sm_mass;
    }
  }
  if (norm > 0.0) {
    double scale = (1.0 - std::exp(-1.0)) / norm;
    stats.mubar_md *= scale;
    stats.mubar_sm *= scale;
  }

  if (norm <= 0.0) return {cls, stats};  // all proxy mass is zero

  // Edge-side quantities: multilinear of the edge proxy at the class-masked
  // x vectors, exact by tabulation when the edge count allows.
  int ecount = static_cast<int>(eids.size());
  Eigen::VectorXd x_sm = Eigen::VectorXd::Zero(ecount);
  Eigen::VectorXd x_nlg = Eigen::VectorXd::Zero(ecount);
  for (int t = 0; t < ecount; ++t) {
    const MultiEdge& me = g.edges[static_cast<std::size_t>(eids[static_cast<std::size_t>(t)])];
    if (me.marked) continue;
    x_nlg(t) = me.x;
    if (cls.edge_class[static_cast<std::size_t>(t)] == EdgeClass::Small) x_sm(t) = me.x;
  }

  if (ecount <= opt.exact_edge_cap && ecount <= 20 && inst.num_items <= 20) {
    Valuation edge_table = Valuation::table(ecount, proxy_edge_table(inst, g, agent));
    stats.mu_sm = multilinear_exact(edge_table, x_sm) / norm;
    stats.mu_nlg = multilinear_exact(edge_table, x_nlg) / norm;
  } else {
    AgentEdgeProxy proxy(inst, g, agent);
    auto mc = [&](const Eigen::VectorXd& x, std::uint64_t tag) {
      Rng rng(derive_seed(opt.seed, tag, static_cast<std::uint64_t>(agent)));
      double sum = 0.0;
      std::vector<int> sample;
      for (long trial = 0; trial < opt.mc_trials; ++trial) {
        sample.clear();
        for (int t = 0; t < ecount; ++t)
          if (rng.uniform01() < x(t)) sample.push_back(eids[static_cast<std::size_t>(t)]);
        sum += proxy.eval(sample);
      }
      return sum / static_cast<double>(opt.mc_trials) / norm;
    };
    stats.mu_sm = mc(x_sm, 0x736d);
    stats.mu_nlg = mc(x_nlg, 0x6e6c67);
  }
  return {cls, stats};
}

}  // namespace nsw
