#include "nsw/pipeline.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>
#include <utility>

#include "nsw/gapgen.hpp"
#include "nsw/rounding.hpp"
#include "nsw/submodular.hpp"

namespace nsw {

namespace {

constexpr std::uint64_t kTagSolveTrial = 0x74726961;
constexpr std::uint64_t kTagProxy = 0x70727879;
constexpr std::uint64_t kTagSandwich = 0x736e6477;
constexpr std::uint64_t kTagRoundInst = 0x726e6469;
constexpr std::uint64_t kTagRoundTrial = 0x726e6474;
constexpr std::uint64_t kTagClassify = 0x636c7366;
constexpr std::uint64_t kTagMuMc = 0x6d756d63;
constexpr std::uint64_t kTagPipage = 0x70697067;
constexpr std::uint64_t kTagProduct = 0x70726f64;
constexpr std::uint64_t kTagProductSamples = 0x70736d70;
constexpr std::uint64_t kTagSolveSuite = 0x736c7673;
constexpr std::uint64_t kTagSolveRun = 0x736c7672;

const double kLambdas[3] = {-0.25, -1.0, -2.0};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Acc {
  double sum = 0.0;
  double sumsq = 0.0;
  long n = 0;

  void add(double v) {
    sum += v;
    sumsq += v * v;
    ++n;
  }
  double mean() const { return n > 0 ? sum / static_cast<double>(n) : 0.0; }
  double std_error() const {
    if (n < 2) return 0.0;
    double m = mean();
    double var = (sumsq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
    return var > 0.0 ? std::sqrt(var / static_cast<double>(n)) : 0.0;
  }
};

struct MeanErr {
  double mean = 0.0;
  double se = 0.0;
};

MeanErr mean_and_stderr(const std::vector<double>& xs) {
  MeanErr r;
  if (xs.empty()) return r;
  for (double v : xs) {
    if (!std::isfinite(v)) {
      r.mean = kNegInf;
      r.se = std::numeric_limits<double>::infinity();
      return r;
    }
  }
  double sum = 0.0;
  for (double v : xs) sum += v;
  r.mean = sum / static_cast<double>(xs.size());
  if (xs.size() >= 2) {
    double ss = 0.0;
    for (double v : xs) {
      double d = v - r.mean;
      ss += d * d;
    }
    r.se = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  }
  return r;
}

void record_failure(CheckResult& res, const std::string& msg) {
  ++res.failures;
  if (res.detail.empty()) res.detail = msg;
}

// ---------------------------------------------------------------------------
// Random inputs for the suites.
// ---------------------------------------------------------------------------

Valuation random_coverage_valuation(Rng& rng, int m, int ground_cap) {
  int ground = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(ground_cap)));
  std::vector<std::vector<int>> sets(static_cast<std::size_t>(m));
  for (auto& s : sets) {
    s.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(ground))));
    for (int u = 0; u < ground; ++u)
      if (rng.bernoulli(0.35)) s.push_back(u);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return Valuation::coverage(ground, std::move(sets));
}

// small_tail gives the back half of the items values two orders of magnitude
// below the front half, so the small item class is populated.
Valuation random_additive_valuation(Rng& rng, int m, bool small_tail) {
  std::vector<double> vals(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) vals[static_cast<std::size_t>(j)] = 0.2 + 1.8 * rng.uniform01();
  if (small_tail) {
    for (int j = m / 2; j < m; ++j)
      vals[static_cast<std::size_t>(j)] = 0.001 + 0.007 * rng.uniform01();
  }
  return Valuation::additive(std::move(vals));
}

Valuation random_capped_table(Rng& rng, int m) {
  std::vector<double> a(static_cast<std::size_t>(m));
  double total = 0.0;
  for (double& v : a) {
    v = 0.1 + 0.9 * rng.uniform01();
    total += v;
  }
  double cap = total * (0.3 + 0.6 * rng.uniform01());
  std::size_t full = std::size_t{1} << m;
  std::vector<double> sums(full, 0.0), tab(full, 0.0);
  for (std::size_t mask = 1; mask < full; ++mask) {
    std::size_t low = mask & (~mask + 1);
    int j = std::countr_zero(mask);
    sums[mask] = sums[mask ^ low] + a[static_cast<std::size_t>(j)];
    tab[mask] = std::min(sums[mask], cap);
  }
  return Valuation::table(m, std::move(tab));
}

std::vector<ItemSet> random_partition(Rng& rng, int m) {
  int nblocks = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
  std::vector<std::vector<int>> raw(static_cast<std::size_t>(nblocks));
  for (int j = 0; j < m; ++j)
    raw[rng.below(static_cast<std::uint64_t>(nblocks))].push_back(j);
  std::vector<ItemSet> blocks;
  for (auto& b : raw)
    if (!b.empty()) blocks.push_back(ItemSet(std::move(b)));
  return blocks;
}

// n <= 4 agents, m <= 10 items; coverage and additive valuations mixed, with
// an occasional small-value tail.
Instance random_small_instance(Rng& rng) {
  int n = 1 + static_cast<int>(rng.below(4));
  int lo = std::max(n, 2);
  int m = lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(11 - lo)));
  Instance inst;
  inst.num_items = m;
  std::vector<double> w(static_cast<std::size_t>(n), 1.0);
  if (n > 1) {
    double s = 0.0;
    for (double& v : w) {
      v = 0.2 + rng.uniform01();
      s += v;
    }
    for (double& v : w) v /= s;
  }
  for (int i = 0; i < n; ++i) {
    std::uint64_t kind = rng.below(3);
    Valuation v = kind == 0 ? random_coverage_valuation(rng, m, 10)
                            : random_additive_valuation(rng, m, kind == 2);
    inst.agents.push_back(Agent{w[static_cast<std::size_t>(i)], std::move(v)});
  }
  return inst;
}

}  // namespace

// ---------------------------------------------------------------------------
// run_solve
// ---------------------------------------------------------------------------

SolveReport run_solve(const Instance& inst, const SolveOptions& opt) {
  Timer timer;
  if (opt.trials < 1) throw std::invalid_argument("run_solve: trials must be positive");
  if (opt.enum_size < 1) throw std::invalid_argument("run_solve: enum_size must be positive");
  std::vector<std::string> bad = validate_instance(inst);
  if (!bad.empty()) throw std::invalid_argument("run_solve: " + bad.front());

  FractionalSolution sol = inst.num_items <= opt.m_max
                               ? solve_conflp_exact(inst)
                               : column_generation_solve(inst, opt.enum_size, opt.max_rounds);

  SolveReport rep;
  rep.lp_value = sol.lp_value;
  rep.adjusted_lp_value = adjusted_lp_objective(inst, sol, opt.enum_size);
  rep.trials = opt.trials;

  int n = inst.num_agents();
  rep.agents.assign(static_cast<std::size_t>(n), AgentOutcome{});
  for (const FractionalEntry& e : sol.entries) {
    const Valuation& v = inst.agents[static_cast<std::size_t>(e.agent)].valuation;
    ConfigSplit split = split_config(v, e.config, opt.enum_size);
    double venu = v.eval(split.enumerated);
    double adj = venu + kERatio * (v.eval(e.config) - venu);
    AgentOutcome& ao = rep.agents[static_cast<std::size_t>(e.agent)];
    if (adj <= 0.0)
      ao.adjusted_lp_contrib = kNegInf;
    else
      ao.adjusted_lp_contrib += e.y * std::log(adj);
  }

  BipartiteMultigraph g = build_multigraph(inst, sol);

  std::size_t trials = static_cast<std::size_t>(opt.trials);
  std::vector<double> logs(trials * static_cast<std::size_t>(n));
  parallel_for(trials, opt.threads, [&](std::size_t tr) {
    RoundingOutcome out = round(g, derive_seed(opt.seed, kTagSolveTrial, tr));
    for (int i = 0; i < n; ++i) {
      double val =
          inst.agents[static_cast<std::size_t>(i)].valuation.eval(out.assignment[static_cast<std::size_t>(i)]);
      logs[tr * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] =
          val <= 0.0 ? kNegInf : std::log(val);
    }
  });

  std::vector<double> column(trials);
  for (int i = 0; i < n; ++i) {
    for (std::size_t tr = 0; tr < trials; ++tr)
      column[tr] = logs[tr * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)];
    MeanErr me = mean_and_stderr(column);
    rep.agents[static_cast<std::size_t>(i)].mean_log_value = me.mean;
    rep.agents[static_cast<std::size_t>(i)].stderr_log = me.se;
  }
  for (std::size_t tr = 0; tr < trials; ++tr) {
    double z = 0.0;
    for (int i = 0; i < n; ++i)
      z += inst.agents[static_cast<std::size_t>(i)].weight *
           logs[tr * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)];
    column[tr] = z;
  }
  MeanErr w = mean_and_stderr(column);
  rep.log_welfare_mean = w.mean;
  rep.log_welfare_stderr = w.se;
  rep.ratio = std::exp(rep.adjusted_lp_value - rep.log_welfare_mean);
  rep.wall_seconds = timer.seconds();
  return rep;
}

Json solve_report_to_json(const SolveReport& rep) {
  Json j;
  j["spec_version"] = kSpecVersion;
  j["lp_value"] = rep.lp_value;
  j["adjusted_lp_value"] = rep.adjusted_lp_value;
  j["agents"] = Json::array();
  for (std::size_t i = 0; i < rep.agents.size(); ++i) {
    Json ja;
    ja["agent"] = static_cast<int>(i);
    ja["adjusted_lp_contrib"] = rep.agents[i].adjusted_lp_contrib;
    ja["mean_log_value"] = rep.agents[i].mean_log_value;
    ja["stderr"] = rep.agents[i].stderr_log;
    j["agents"].push_back(std::move(ja));
  }
  j["log_welfare_mean"] = rep.log_welfare_mean;
  j["log_welfare_stderr"] = rep.log_welfare_stderr;
  j["ratio"] = rep.ratio;
  j["trials"] = rep.trials;
  return j;
}

// ---------------------------------------------------------------------------
// Suite 1: greedy-proxy laws.
// ---------------------------------------------------------------------------

namespace {

std::string proxy_law_violation(const Valuation& v, const ProxyFunction& p, int m) {
  std::vector<double> pt = proxy_table(p);
  std::vector<double> vt = tabulate_valuation(v);
  const double tol = 1e-9;
  std::uint32_t full = 1u << m;
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    if (pt[mask] < -tol) return "negative proxy value";
    if (pt[mask] > vt[mask] + tol) return "proxy value exceeds the base valuation";
    for (int i = 0; i < m; ++i) {
      std::uint32_t bi = 1u << i;
      if (mask & bi) {
        if (pt[mask] < pt[mask ^ bi] - tol) return "proxy not monotone";
        continue;
      }
      double gain_i = pt[mask | bi] - pt[mask];
      for (int jj = i + 1; jj < m; ++jj) {
        std::uint32_t bj = 1u << jj;
        if (mask & bj) continue;
        if (gain_i < pt[mask | bi | bj] - pt[mask | bj] - tol) return "proxy not submodular";
      }
    }
  }
  for (const ItemSet& block : p.blocks) {
    GreedyOrder go = greedy_order(v, block);
    for (std::size_t t = 0; t < go.order.size(); ++t) {
      double single = pt[1u << go.order[t]];
      if (std::abs(single - go.phi[t]) > tol)
        return "singleton proxy value differs from its greedy gain";
    }
    std::uint32_t bm = block.to_mask();
    std::uint32_t sub = bm;
    while (true) {
      double s = 0.0;
      std::uint32_t rest = sub;
      while (rest) {
        std::uint32_t lb = rest & (~rest + 1);
        s += pt[lb];
        rest ^= lb;
      }
      if (std::abs(pt[sub] - s) > tol) return "proxy not additive within a block";
      if (sub == 0) break;
      sub = (sub - 1) & bm;
    }
  }
  return "";
}

}  // namespace

CheckResult check_proxy_properties(int cases, std::uint64_t seed) {
  Timer timer;
  CheckResult res;
  res.suite = "proxy_properties";
  res.cases = cases;
  for (int c = 0; c < cases; ++c) {
    Rng rng(derive_seed(seed, kTagProxy, static_cast<std::uint64_t>(c)));
    int m = 2 + static_cast<int>(rng.below(7));
    Valuation v = random_coverage_valuation(rng, m, 10);
    ProxyFunction p = make_proxy(v, random_partition(rng, m));
    std::string err = proxy_law_violation(v, p, m);
    if (!err.empty()) record_failure(res, "case " + std::to_string(c) + ": " + err);
  }
  res.seconds = timer.seconds();
  return res;
}

// ---------------------------------------------------------------------------
// Suite 2: concave/multilinear sandwich.
// ---------------------------------------------------------------------------

CheckResult check_extension_sandwich(int cases, std::uint64_t seed) {
  Timer timer;
  CheckResult res;
  res.suite = "extension_sandwich";
  res.cases = cases;
  for (int c = 0; c < cases; ++c) {
    Rng rng(derive_seed(seed, kTagSandwich, static_cast<std::uint64_t>(c)));
    int m = 2 + static_cast<int>(rng.below(11));
    std::uint64_t kind = rng.below(3);
    Valuation v = kind == 0   ? random_coverage_valuation(rng, m, 10)
                  : kind == 1 ? random_additive_valuation(rng, m, false)
                              : random_capped_table(rng, m);
    Eigen::VectorXd x(m);
    for (int j = 0; j < m; ++j) {
      double u = rng.uniform01();
      if (rng.bernoulli(0.15)) u = rng.bernoulli(0.5) ? 0.0 : 1.0;
      x(j) = u;
    }
    double mult = multilinear_exact(v, x);
    double conc = concave_extension(v, x).value;
    if (mult > conc + 1e-7)
      record_failure(res, "case " + std::to_string(c) + ": multilinear " + fmt(mult) +
                              " exceeds concave extension " + fmt(conc));
    else if (mult < (1.0 - std::exp(-1.0)) * conc - 1e-7)
      record_failure(res, "case " + std::to_string(c) + ": multilinear " + fmt(mult) +
                              " below (1-1/e) of concave extension " + fmt(conc));
  }
  res.seconds = timer.seconds();
  return res;
}

// ---------------------------------------------------------------------------
// Suite 3: multigraph rounding invariants.
// ---------------------------------------------------------------------------

namespace {

struct AgentCheckCtx {
  std::vector<int> eids;
  double norm = 0.0;
  bool active = false;
  bool exact = false;
  std::vector<double> table;  // normalized lookup when exact
  std::unique_ptr<AgentEdgeProxy> proxy;
  std::map<std::vector<int>, double> memo;
  Eigen::VectorXd x_nlg, x_sm;
  double mu_nlg = 0.0, mu_sm = 0.0;
  double err_nlg = 0.0, err_sm = 0.0;  // MC standard errors, 0 when exact
  AgentStats stats;

  double eval_norm(const std::vector<int>& ids, std::uint32_t posmask) {
    if (exact) return table[posmask] / norm;
    auto it = memo.find(ids);
    if (it != memo.end()) return it->second;
    double v = proxy->eval(ids) / norm;
    memo.emplace(ids, v);
    return v;
  }
};

std::string rounding_case_violation(const Instance& inst, long trials, std::uint64_t iseed) {
  FractionalSolution sol = solve_conflp_exact(inst);
  {
    std::vector<std::string> bad = check_fractional_solution(inst, sol);
    if (!bad.empty()) return "fractional solution invalid: " + bad.front();
  }
  BipartiteMultigraph g = build_multigraph(inst, sol);
  {
    std::vector<std::string> bad = check_multigraph(g);
    if (!bad.empty()) return "multigraph invalid: " + bad.front();
  }

  int n = g.num_agents;
  ClassifyOptions copt;
  copt.seed = derive_seed(iseed, kTagClassify);
  copt.mc_trials = 2000;  // stats.mu_* is recomputed below, with stderr
  double tau = std::sqrt(copt.eps1);

  std::vector<AgentCheckCtx> ctx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto [cls, stats] = classify_and_stats(inst, sol, g, i, copt);
    AgentCheckCtx& c = ctx[static_cast<std::size_t>(i)];
    c.stats = stats;
    c.norm = cls.norm;
    c.eids = g.agent_edges[static_cast<std::size_t>(i)];
    if (c.norm <= 0.0) continue;
    c.active = true;
    int ecount = static_cast<int>(c.eids.size());
    c.x_nlg = Eigen::VectorXd::Zero(ecount);
    c.x_sm = Eigen::VectorXd::Zero(ecount);
    for (int t = 0; t < ecount; ++t) {
      const MultiEdge& me = g.edges[static_cast<std::size_t>(c.eids[static_cast<std::size_t>(t)])];
      if (me.marked) continue;
      c.x_nlg(t) = me.x;
      if (cls.edge_class[static_cast<std::size_t>(t)] == EdgeClass::Small) c.x_sm(t) = me.x;
    }
    if (ecount <= 16 && inst.num_items <= 20) {
      c.exact = true;
      c.table = proxy_edge_table(inst, g, i);
      Valuation tv = Valuation::table(ecount, c.table);
      c.mu_nlg = multilinear_exact(tv, c.x_nlg) / c.norm;
      c.mu_sm = multilinear_exact(tv, c.x_sm) / c.norm;
    } else {
      c.proxy = std::make_unique<AgentEdgeProxy>(inst, g, i);
      auto mc = [&](const Eigen::VectorXd& x, std::uint64_t sub) {
        Rng mrng(derive_seed(iseed, kTagMuMc, static_cast<std::uint64_t>(i) * 2 + sub));
        Acc acc;
        std::vector<int> sample;
        for (long t = 0; t < trials; ++t) {
          sample.clear();
          for (int e = 0; e < ecount; ++e)
            if (mrng.uniform01() < x(e)) sample.push_back(c.eids[static_cast<std::size_t>(e)]);
          acc.add(c.proxy->eval(sample) / c.norm);
        }
        return acc;
      };
      Acc nlg = mc(c.x_nlg, 0);
      Acc sm = mc(c.x_sm, 1);
      c.mu_nlg = nlg.mean();
      c.err_nlg = nlg.std_error();
      c.mu_sm = sm.mean();
      c.err_sm = sm.std_error();
    }
    if (c.mu_nlg + 4.0 * c.err_nlg < c.stats.mubar_md + c.stats.mubar_sm - 1e-9)
      return "agent " + std::to_string(i) + ": mu_nlg " + fmt(c.mu_nlg) +
             " below mubar_md + mubar_sm " + fmt(c.stats.mubar_md + c.stats.mubar_sm);
  }

  // Pass 1: full multigraph rounding.
  std::vector<long> ones(g.edges.size(), 0);
  std::vector<std::array<Acc, 3>> mgf_cfg(static_cast<std::size_t>(n));
  std::vector<int> ids;
  for (long tr = 0; tr < trials; ++tr) {
    RoundingOutcome out;
    try {
      out = round(g, derive_seed(iseed, kTagRoundTrial, static_cast<std::uint64_t>(tr)));
    } catch (const std::exception& e) {
      return "trial " + std::to_string(tr) + ": " + e.what();
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e) ones[e] += out.edge_final[e];
    for (int i = 0; i < n; ++i) {
      if (out.large_item[static_cast<std::size_t>(i)] < 0)
        return "trial " + std::to_string(tr) + ": agent " + std::to_string(i) + " has no large item";
      AgentCheckCtx& c = ctx[static_cast<std::size_t>(i)];
      if (!c.active) continue;
      ids.clear();
      std::uint32_t pm = 0;
      for (std::size_t t = 0; t < c.eids.size(); ++t) {
        int e = c.eids[t];
        if (out.edge_final[static_cast<std::size_t>(e)] && !g.edges[static_cast<std::size_t>(e)].marked) {
          ids.push_back(e);
          pm |= 1u << t;
        }
      }
      double tval = c.eval_norm(ids, pm);
      for (int l = 0; l < 3; ++l)
        mgf_cfg[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)].add(
            std::exp(kLambdas[l] * tval));
    }
  }

  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    double x = g.edges[e].x;
    double p = static_cast<double>(ones[e]) / static_cast<double>(trials);
    double bound = 4.0 * std::sqrt(x * (1.0 - x) / static_cast<double>(trials));
    if (std::abs(p - x) > bound + 1e-12)
      return "edge " + std::to_string(e) + ": empirical marginal " + fmt(p) + " vs x " + fmt(x);
  }

  for (int i = 0; i < n; ++i) {
    AgentCheckCtx& c = ctx[static_cast<std::size_t>(i)];
    if (!c.active) continue;
    for (int l = 0; l < 3; ++l) {
      double cl = std::expm1(kLambdas[l]);
      double cs = std::expm1(kLambdas[l] * tau) / tau;
      double rhs = std::exp(cl * c.stats.mubar_md + cs * c.stats.mubar_sm);
      const Acc& acc = mgf_cfg[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
      if (acc.mean() > rhs + 4.0 * acc.std_error() + 1e-12)
        return "agent " + std::to_string(i) + " lambda " + fmt(kLambdas[l]) +
               ": configuration-form MGF " + fmt(acc.mean()) + " above bound " + fmt(rhs);
    }
  }

  // Pass 2: pipage rounding of the unmarked x-vector.
  for (int i = 0; i < n; ++i) {
    AgentCheckCtx& c = ctx[static_cast<std::size_t>(i)];
    if (!c.active) continue;
    int ecount = static_cast<int>(c.eids.size());
    Acc tacc;
    std::array<Acc, 3> mgf_pip;
    for (long tr = 0; tr < trials; ++tr) {
      Rng prng(derive_seed(iseed, kTagPipage,
                           static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(trials) +
                               static_cast<std::uint64_t>(tr)));
      Eigen::VectorXd xr = pipage_round(c.x_nlg, prng);
      ids.clear();
      std::uint32_t pm = 0;
      for (int t = 0; t < ecount; ++t) {
        if (xr(t) > 0.5) {
          ids.push_back(c.eids[static_cast<std::size_t>(t)]);
          pm |= 1u << t;
        }
      }
      double tval = c.eval_norm(ids, pm);
      tacc.add(tval);
      for (int l = 0; l < 3; ++l)
        mgf_pip[static_cast<std::size_t>(l)].add(std::exp(kLambdas[l] * tval));
    }
    if (tacc.mean() <
        c.mu_nlg - 4.0 * (tacc.std_error() + c.err_nlg) - 1e-9 * (1.0 + std::abs(c.mu_nlg)))
      return "agent " + std::to_string(i) + ": pipage mean " + fmt(tacc.mean()) +
             " below multilinear " + fmt(c.mu_nlg);
    for (int l = 0; l < 3; ++l) {
      double cl = std::expm1(kLambdas[l]);
      double cs = std::expm1(kLambdas[l] * tau) / tau;
      double rhs = std::exp(cs * c.mu_sm + cl * (c.mu_nlg - c.mu_sm));
      double slack =
          rhs * std::expm1(std::abs(cs - cl) * 4.0 * c.err_sm + std::abs(cl) * 4.0 * c.err_nlg);
      const Acc& acc = mgf_pip[static_cast<std::size_t>(l)];
      if (acc.mean() > rhs + 4.0 * acc.std_error() + slack + 1e-12)
        return "agent " + std::to_string(i) + " lambda " + fmt(kLambdas[l]) +
               ": pipage-form MGF " + fmt(acc.mean()) + " above bound " + fmt(rhs);
    }
  }
  return "";
}

}  // namespace

CheckResult check_rounding_invariants(int instances, long trials, std::uint64_t seed) {
  Timer timer;
  CheckResult res;
  res.suite = "rounding_invariants";
  res.cases = instances;
  for (int idx = 0; idx < instances; ++idx) {
    std::uint64_t iseed = derive_seed(seed, kTagRoundInst, static_cast<std::uint64_t>(idx));
    Rng rng(iseed);
    Instance inst = random_small_instance(rng);
    std::string err;
    try {
      err = rounding_case_violation(inst, trials, iseed);
    } catch (const std::exception& e) {
      err = e.what();
    }
    if (!err.empty()) record_failure(res, "instance " + std::to_string(idx) + ": " + err);
  }
  res.seconds = timer.seconds();
  return res;
}

// ---------------------------------------------------------------------------
// Suite 4: MGF product bound on independent sums.
// ---------------------------------------------------------------------------

CheckResult check_mgf_product(int cases, std::uint64_t seed) {
  Timer timer;
  CheckResult res;
  res.suite = "mgf_product";
  res.cases = cases;
  const long trials = 20000;
  for (int c = 0; c < cases; ++c) {
    Rng rng(derive_seed(seed, kTagProduct, static_cast<std::uint64_t>(c)));
    int nbar = 2 + static_cast<int>(rng.below(5));
    std::vector<double> prob(static_cast<std::size_t>(nbar)), scale(static_cast<std::size_t>(nbar));
    for (int i = 0; i < nbar; ++i) {
      prob[static_cast<std::size_t>(i)] = 0.05 + 0.9 * rng.uniform01();
      scale[static_cast<std::size_t>(i)] = 0.05 + 0.95 * rng.uniform01();
    }
    Rng srng(derive_seed(seed, kTagProductSamples, static_cast<std::uint64_t>(c)));
    std::array<Acc, 3> acc;
    for (long t = 0; t < trials; ++t) {
      double y = 0.0;
      for (int i = 0; i < nbar; ++i)
        if (srng.uniform01() < prob[static_cast<std::size_t>(i)])
          y += scale[static_cast<std::size_t>(i)];
      for (int l = 0; l < 3; ++l)
        acc[static_cast<std::size_t>(l)].add(std::exp(kLambdas[l] * y));
    }
    for (int l = 0; l < 3; ++l) {
      double rhs = 1.0;
      for (int i = 0; i < nbar; ++i)
        rhs *= 1.0 - prob[static_cast<std::size_t>(i)] +
               prob[static_cast<std::size_t>(i)] *
                   std::exp(kLambdas[l] * scale[static_cast<std::size_t>(i)]);
      const Acc& a = acc[static_cast<std::size_t>(l)];
      if (a.mean() > rhs + 4.0 * a.std_error())
        record_failure(res, "case " + std::to_string(c) + " lambda " + fmt(kLambdas[l]) +
                                ": empirical MGF " + fmt(a.mean()) + " above product bound " +
                                fmt(rhs));
    }
  }
  res.seconds = timer.seconds();
  return res;
}

// ---------------------------------------------------------------------------
// Suite 5: end-to-end welfare ratio.
// ---------------------------------------------------------------------------

CheckResult check_solve_ratio(int instances, long trials, std::uint64_t seed) {
  Timer timer;
  CheckResult res;
  res.suite = "solve_ratio";

  struct Case {
    std::string name;
    Instance inst;
    bool unit_ratio = false;
    double lp_at_least = kNegInf;
  };
  std::vector<Case> cases;
  cases.push_back({"square t=5", gen_square_instance(5.0), false, kNegInf});
  {
    Instance one;
    one.num_items = 3;
    one.agents.push_back(Agent{1.0, Valuation::coverage(4, {{0}, {1, 2}, {2, 3}})});
    cases.push_back({"single agent", std::move(one), true, kNegInf});
  }
  {
    AdditiveGapParams ap{4, 2, 10.0, 0.01};
    GapReport gap = eval_additive_gap(ap);
    cases.push_back({"additive gap h=4 k=2 t=10", gen_additive_gap(ap), false, gap.log_fopt});
  }
  for (int c = 0; c < instances; ++c) {
    Rng rng(derive_seed(seed, kTagSolveSuite, static_cast<std::uint64_t>(c)));
    cases.push_back({"random " + std::to_string(c), random_small_instance(rng), false, kNegInf});
  }
  res.cases = static_cast<long>(cases.size());

  double min_lp_over_opt = std::numeric_limits<double>::infinity();
  bool recorded = false;
  for (std::size_t idx = 0; idx < cases.size(); ++idx) {
    const Case& cs = cases[idx];
    SolveOptions so;
    so.seed = derive_seed(seed, kTagSolveRun, idx);
    so.trials = trials;
    SolveReport rep;
    try {
      rep = run_solve(cs.inst, so);
    } catch (const std::exception& e) {
      record_failure(res, cs.name + ": " + e.what());
      continue;
    }
    if (!std::isfinite(rep.ratio)) {
      record_failure(res, cs.name + ": non-finite ratio");
      continue;
    }
    double ratio_se = rep.ratio * rep.log_welfare_stderr;
    if (rep.ratio > 3.56 + 5.0 * ratio_se)
      record_failure(res, cs.name + ": ratio " + fmt(rep.ratio) + " above 3.56 + 5 stderr");
    for (std::size_t i = 0; i < rep.agents.size(); ++i) {
      const AgentOutcome& ao = rep.agents[i];
      if (ao.mean_log_value < ao.adjusted_lp_contrib - std::log(3.56) - 5.0 * ao.stderr_log) {
        record_failure(res, cs.name + ": agent " + std::to_string(i) +
                                " realized value below its adjusted contribution bound");
        break;
      }
    }
    if (cs.unit_ratio && std::abs(rep.ratio - 1.0) > 1e-9)
      record_failure(res, cs.name + ": ratio " + fmt(rep.ratio) + " differs from 1");
    if (cs.lp_at_least > kNegInf && rep.lp_value < cs.lp_at_least - 1e-7)
      record_failure(res, cs.name + ": LP value " + fmt(rep.lp_value) +
                              " below constructed fractional value " + fmt(cs.lp_at_least));
    double log_allocs = static_cast<double>(cs.inst.num_items) *
                        std::log(std::max(1, cs.inst.num_agents()));
    if (cs.inst.num_items <= 12 && log_allocs <= std::log(1e7)) {
      double opt_log = brute_force_opt(cs.inst).second;
      double lp_over_opt = std::exp(rep.lp_value - opt_log);
      min_lp_over_opt = std::min(min_lp_over_opt, lp_over_opt);
      recorded = true;
      if (lp_over_opt < 1.0 - 1e-9)
        record_failure(res, cs.name + ": LP value below the exhaustive optimum, ratio " +
                                fmt(lp_over_opt));
    }
  }
  if (recorded) res.info = "min exp(lp - opt) over exhaustive instances: " + fmt(min_lp_over_opt);
  res.seconds = timer.seconds();
  return res;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> run_checks(const CheckOptions& opt) {
  std::vector<CheckResult> out;
  out.push_back(check_proxy_properties(opt.proxy_cases, opt.seed));
  out.push_back(check_extension_sandwich(opt.sandwich_cases, opt.seed));
  out.push_back(check_mgf_product(opt.product_cases, opt.seed));
  out.push_back(check_rounding_invariants(opt.rounding_instances, opt.rounding_trials, opt.seed));
  out.push_back(check_solve_ratio(opt.solve_instances, opt.solve_trials, opt.seed));
  return out;
}

Json check_report_to_json(const std::vector<CheckResult>& results) {
  Json j;
  j["spec_version"] = kSpecVersion;
  j["suites"] = Json::array();
  bool all_ok = true;
  for (const CheckResult& r : results) {
    Json jr;
    jr["suite"] = r.suite;
    jr["cases"] = r.cases;
    jr["failures"] = r.failures;
    jr["detail"] = r.detail;
    jr["info"] = r.info;
    j["suites"].push_back(std::move(jr));
    all_ok = all_ok && r.ok();
  }
  j["ok"] = all_ok;
  return j;
}

}  // namespace nsw
