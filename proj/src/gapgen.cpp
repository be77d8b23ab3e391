#include "nsw/gapgen.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nsw/conflp.hpp"

namespace nsw {

namespace {

void check_submodular_params(const SubmodularGapParams& p) {
  if (p.k < 2 || p.lambda < 2 || p.lambda >= p.k)
    throw std::invalid_argument("submodular gap: need 2 <= lambda < k");
  if (!(p.t > 0.0)) throw std::invalid_argument("submodular gap: t must be positive");
  if (!(p.eps > 0.0 && p.eps < 1.0))
    throw std::invalid_argument("submodular gap: eps must be in (0,1)");
}

void check_additive_params(const AdditiveGapParams& p) {
  if (p.k < 1 || p.h <= p.k) throw std::invalid_argument("additive gap: need h > k >= 1");
  if (!(p.t > 0.0)) throw std::invalid_argument("additive gap: t must be positive");
  if (!(p.eps > 0.0 && p.eps < 1.0))
    throw std::invalid_argument("additive gap: eps must be in (0,1)");
}

}  // namespace

Instance gen_submodular_gap(const SubmodularGapParams& p) {
  check_submodular_params(p);
  double log_r = static_cast<double>(p.k) * p.lambda * std::log(static_cast<double>(p.k));
  if (log_r > 700.0)
    throw std::invalid_argument(
        "gen_submodular_gap: k^(k*lambda) overflows double; use eval_submodular_gap");

  long long k = p.k, lambda = p.lambda;
  Instance inst;
  inst.num_items = static_cast<int>(ps_num_items(k, lambda));
  double w_heavy = (1.0 - p.eps) / static_cast<double>(k);
  double w_light = p.eps / (static_cast<double>(k) * lambda * (k - 1));
  for (long long gp = 1; gp <= k; ++gp) {
    PartitionSystemSpec hs{k, lambda, p.t, true, gp, 1, 1};
    inst.agents.push_back({w_heavy, Valuation::partition_system(hs)});
    for (long long q = 1; q <= lambda; ++q) {
      for (long long o = 1; o <= k - 1; ++o) {
        PartitionSystemSpec ls{k, lambda, p.t, false, gp, q, o};
        inst.agents.push_back({w_light, Valuation::partition_system(ls)});
      }
    }
  }
  return inst;
}

GapReport eval_submodular_gap(const SubmodularGapParams& p) {
  check_submodular_params(p);
  double k = p.k, lambda = p.lambda;
  double log_r = k * lambda * std::log(k);
  // miss = (1-1/k)^lambda, the fraction of the ground set outside the union
  // of one slice per coordinate.
  double log_union = std::log(-std::expm1(lambda * std::log1p(-1.0 / k)));

  double log_iopt =
      (1.0 - p.eps) *
      (log_r + (k - lambda) / k * std::log1p(p.t) + lambda / k * log_union);

  // Fractional construction, one representative per symmetry class:
  //   heavy agent p: 1/k of each full block {A^{p,q}_o : o in [k]} (value r)
  //     and 1/k of each large singleton (value t*r);
  //   light agent (p,q,o): 1/k of each singleton in block (p,q) (value 1).
  double heavy_mass = 0.0, heavy_logv = 0.0;
  for (int q = 0; q < p.lambda; ++q) {
    heavy_mass += 1.0 / k;
    heavy_logv += (1.0 / k) * log_r;
  }
  for (int j = 0; j < p.k - p.lambda; ++j) {
    heavy_mass += 1.0 / k;
    heavy_logv += (1.0 / k) * (std::log(p.t) + log_r);
  }
  double light_mass = 0.0;
  for (int o = 0; o < p.k; ++o) light_mass += 1.0 / k;  // value 1, log 0

  double set_item_mass = 1.0 / k;  // its block's heavy configuration
  for (int o = 0; o < p.k - 1; ++o) set_item_mass += 1.0 / k;
  double large_item_mass = 0.0;
  for (int gp = 0; gp < p.k; ++gp) large_item_mass += 1.0 / k;

  double residual = std::max(
      {std::abs(heavy_mass - 1.0), std::abs(light_mass - 1.0),
       std::abs(set_item_mass - 1.0), std::abs(large_item_mass - 1.0)});

  double w_heavy = (1.0 - p.eps) / k;
  double log_fopt = k * w_heavy * heavy_logv;  // light configurations contribute 0

  GapReport rep;
  rep.family = "submodular";
  rep.params = {{"k", k}, {"lambda", lambda}, {"t", p.t}, {"eps", p.eps}};
  rep.log_iopt = log_iopt;
  rep.log_fopt = log_fopt;
  rep.ratio = std::exp(log_fopt - log_iopt);
  rep.feasibility_max_residual = residual;
  return rep;
}

Instance gen_additive_gap(const AdditiveGapParams& p) {
  check_additive_params(p);
  long long h = p.h, k = p.k;
  long long num_items = h * h + k;
  long long num_agents = h * (1 + k);
  if (num_items * num_agents > 50'000'000)
    throw std::invalid_argument(
        "gen_additive_gap: additive tables too large; use eval_additive_gap");

  Instance inst;
  inst.num_items = static_cast<int>(num_items);
  double w_heavy = (1.0 - p.eps) / static_cast<double>(h);
  double w_light = p.eps / static_cast<double>(k * h);
  for (long long gp = 0; gp < h; ++gp) {
    std::vector<double> heavy_vals(static_cast<std::size_t>(num_items), 0.0);
    for (long long j = 0; j < h; ++j) heavy_vals[static_cast<std::size_t>(gp * h + j)] = 1.0;
    for (long long j = 0; j < k; ++j) heavy_vals[static_cast<std::size_t>(h * h + j)] = p.t;
    inst.agents.push_back({w_heavy, Valuation::additive(std::move(heavy_vals))});
    for (long long q = 0; q < k; ++q) {
      std::vector<double> light_vals(static_cast<std::size_t>(num_items), 0.0);
      for (long long j = 0; j < h; ++j) light_vals[static_cast<std::size_t>(gp * h + j)] = 1.0;
      inst.agents.push_back({w_light, Valuation::additive(std::move(light_vals))});
    }
  }
  return inst;
}

GapReport eval_additive_gap(const AdditiveGapParams& p) {
  check_additive_params(p);
  double h = p.h, k = p.k;

  double log_iopt =
      (1.0 - p.eps) * (k / h * std::log(p.t + (h - k)) + (h - k) / h * std::log(h - k));

  // Fractional construction per group: the heavy agent holds 1/h of each
  // large singleton (value t) and 1-k/h of its full small block; each light
  // agent holds 1/h of each small singleton of the block (value 1).
  double block_value = 0.0;
  for (int j = 0; j < p.h; ++j) block_value += 1.0;

  double heavy_mass = 1.0 - k / h, heavy_logv = (1.0 - k / h) * std::log(block_value);
  for (int j = 0; j < p.k; ++j) {
    heavy_mass += 1.0 / h;
    heavy_logv += (1.0 / h) * std::log(p.t);
  }
  double light_mass = 0.0;
  for (int j = 0; j < p.h; ++j) light_mass += 1.0 / h;
  double small_item_mass = 1.0 - k / h;
  for (int q = 0; q < p.k; ++q) small_item_mass += 1.0 / h;
  double large_item_mass = 0.0;
  for (int gp = 0; gp < p.h; ++gp) large_item_mass += 1.0 / h;

  double residual = std::max(
      {std::abs(heavy_mass - 1.0), std::abs(light_mass - 1.0),
       std::abs(small_item_mass - 1.0), std::abs(large_item_mass - 1.0)});

  double w_heavy = (1.0 - p.eps) / h;
  double log_fopt = h * w_heavy * heavy_logv;

  GapReport rep;
  rep.family = "additive";
  rep.params = {{"h", h}, {"k", k}, {"t", p.t}, {"eps", p.eps}};
  rep.log_iopt = log_iopt;
  rep.log_fopt = log_fopt;
  rep.ratio = std::exp(log_fopt - log_iopt);
  rep.feasibility_max_residual = residual;
  return rep;
}

Instance gen_square_instance(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("gen_square_instance: t must be positive");
  // Items: sides (0,1), (1,2), (2,3), (3,0) then diagonals (0,2), (1,3).
  constexpr int kSides[4][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  constexpr int kDiagonals[2][2] = {{0, 2}, {1, 3}};
  Instance inst;
  inst.num_items = 6;
  for (int i = 0; i < 4; ++i) {
    std::vector<double> vals(6, 0.0);
    for (int j = 0; j < 4; ++j)
      if (kSides[j][0] == i || kSides[j][1] == i) vals[static_cast<std::size_t>(j)] = 1.0;
    for (int j = 0; j < 2; ++j)
      if (kDiagonals[j][0] == i || kDiagonals[j][1] == i)
        vals[static_cast<std::size_t>(4 + j)] = t;
    inst.agents.push_back({0.25, Valuation::additive(std::move(vals))});
  }
  return inst;
}

GapReport eval_square(double t) {
  Instance inst = gen_square_instance(t);
  auto [alloc, log_iopt] = brute_force_opt(inst);
  double closed_form = 0.25 * (std::log(2.0) + std::log(t) + std::log1p(t));
  if (std::abs(log_iopt - closed_form) > 1e-9 * (1.0 + std::abs(closed_form)))
    throw std::runtime_error("eval_square: exhaustive optimum deviates from closed form");

  // Each agent: half a diagonal singleton, half its two sides.
  FractionalSolution sol;
  for (int i = 0; i < 4; ++i) {
    int diag = 4 + i % 2;
    sol.entries.push_back({i, ItemSet({diag}), 0.5});
    ItemSet sides;
    for (int j = 0; j < 4; ++j) {
      const ItemSet probe({j});
      if (inst.agents[static_cast<std::size_t>(i)].valuation.eval(probe) > 0.0) sides.add(j);
    }
    sol.entries.push_back({i, sides, 0.5});
  }
  double log_fopt = 0.0;
  for (const FractionalEntry& e : sol.entries)
    log_fopt += 0.25 * e.y *
                std::log(inst.agents[static_cast<std::size_t>(e.agent)].valuation.eval(e.config));
  sol.lp_value = log_fopt;

  double residual = 0.0;
  for (int i = 0; i < 4; ++i) {
    double mass = 0.0;
    for (const FractionalEntry& e : sol.entries)
      if (e.agent == i) mass += e.y;
    residual = std::max(residual, std::abs(mass - 1.0));
  }
  for (int j = 0; j < 6; ++j) {
    double mass = 0.0;
    for (const FractionalEntry& e : sol.entries)
      if (e.config.contains(j)) mass += e.y;
    residual = std::max(residual, std::abs(mass - 1.0));
  }
  if (!check_fractional_solution(inst, sol).empty())
    throw std::runtime_error("eval_square: constructed solution rejected");

  GapReport rep;
  rep.family = "square";
  rep.params = {{"t", t}};
  rep.log_iopt = log_iopt;
  rep.log_fopt = log_fopt;
  rep.ratio = std::exp(log_fopt - log_iopt);
  rep.feasibility_max_residual = residual;
  return rep;
}

}  // namespace nsw
