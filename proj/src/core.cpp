#include "nsw/core.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

#include "nsw/common.hpp"

namespace nsw {

double log_nsw(const Instance& inst, const Allocation& alloc) {
  if (alloc.size() != inst.agents.size())
    throw std::invalid_argument("log_nsw: allocation size mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < alloc.size(); ++i) {
    double v = inst.agents[i].valuation.eval(alloc[i]);
    if (v <= 0.0) return kNegInf;
    total += inst.agents[i].weight * std::log(v);
  }
  return total;
}

std::pair<Allocation, double> brute_force_opt(const Instance& inst) {
  int n = inst.num_agents();
  int m = inst.num_items;
  if (n <= 0) throw std::invalid_argument("brute_force_opt: no agents");
  double combos = std::pow(static_cast<double>(n), static_cast<double>(m));
  if (combos > 1e7) throw std::invalid_argument("brute_force_opt: n^m exceeds 1e7");

  bool tabulated = m <= 20;
  std::vector<std::vector<double>> tables;
  if (tabulated) {
    tables.reserve(static_cast<std::size_t>(n));
    for (const Agent& a : inst.agents) tables.push_back(tabulate_valuation(a.valuation));
  }

  std::vector<int> assign(static_cast<std::size_t>(m), 0);
  std::vector<int> best = assign;
  double best_val = kNegInf;
  bool first = true;
  while (true) {
    double val;
    if (tabulated) {
      std::vector<std::uint32_t> masks(static_cast<std::size_t>(n), 0);
      for (int j = 0; j < m; ++j)
        masks[static_cast<std::size_t>(assign[static_cast<std::size_t>(j)])] |= std::uint32_t{1}
                                                                                << j;
      val = 0.0;
      for (int i = 0; i < n && val > kNegInf; ++i) {
        double v = inst.agents[static_cast<std::size_t>(i)].valuation.eval_mask(
            masks[static_cast<std::size_t>(i)]);
        val = v <= 0.0 ? kNegInf : val + inst.agents[static_cast<std::size_t>(i)].weight * std::log(v);
      }
    } else {
      Allocation alloc(static_cast<std::size_t>(n));
      for (int j = 0; j < m; ++j) alloc[static_cast<std::size_t>(assign[static_cast<std::size_t>(j)])].add(j);
      val = log_nsw(inst, alloc);
    }
    if (first || val > best_val) {
      first = false;
      best_val = val;
      best = assign;
    }
    // Odometer with item 0 most significant: scans maps in lexicographic
    // order, so keeping strict improvements returns the smallest maximizer.
    int j = m - 1;
    while (j >= 0 && assign[static_cast<std::size_t>(j)] == n - 1) {
      assign[static_cast<std::size_t>(j)] = 0;
      --j;
    }
    if (j < 0) break;
    ++assign[static_cast<std::size_t>(j)];
  }

  Allocation alloc(static_cast<std::size_t>(n));
  for (int j = 0; j < m; ++j) alloc[static_cast<std::size_t>(best[static_cast<std::size_t>(j)])].add(j);
  return {alloc, best_val};
}

namespace {

void check_valuation(int agent, const Valuation& v, int m, std::vector<std::string>& out) {
  auto complain = [&](const std::string& msg) {
    std::ostringstream os;
    os << "agent " << agent << ": " << msg;
    out.push_back(os.str());
  };
  if (v.num_items() != m) {
    complain("valuation covers " + std::to_string(v.num_items()) + " items, instance has " +
             std::to_string(m));
    return;
  }
  if (m <= 12) {
    std::vector<double> t = tabulate_valuation(v);
    if (std::abs(t[0]) > 1e-12) complain("empty set has nonzero value");
    std::size_t size = std::size_t{1} << m;
    for (std::size_t mask = 0; mask < size; ++mask) {
      if (t[mask] < -1e-12) {
        complain("negative value");
        return;
      }
      for (int j = 0; j < m; ++j) {
        if (mask & (std::size_t{1} << j)) continue;
        std::size_t with_j = mask | (std::size_t{1} << j);
        if (t[with_j] < t[mask] - 1e-9) {
          complain("not monotone");
          return;
        }
        for (int k = j + 1; k < m; ++k) {
          if (mask & (std::size_t{1} << k)) continue;
          std::size_t with_k = mask | (std::size_t{1} << k);
          if (t[with_j] + t[with_k] < t[with_j | with_k] + t[mask] - 1e-9) {
            complain("not submodular");
            return;
          }
        }
      }
    }
    return;
  }
  // Spot checks on random subsets; seed fixed so validation is reproducible.
  Rng rng(derive_seed(0x76616c6964ULL, static_cast<std::uint64_t>(agent)));
  if (std::abs(v.eval(ItemSet{})) > 1e-12) complain("empty set has nonzero value");
  auto random_set = [&](double p) {
    ItemSet s;
    for (int j = 0; j < m; ++j)
      if (rng.uniform01() < p) s.add(j);
    return s;
  };
  for (int trial = 0; trial < 64; ++trial) {
    ItemSet s = random_set(0.3);
    ItemSet t = s;
    for (int j = 0; j < m; ++j)
      if (!t.contains(j) && rng.uniform01() < 0.3) t.add(j);
    double vs = v.eval(s);
    double vt = v.eval(t);
    if (vs < -1e-12) {
      complain("negative value");
      return;
    }
    if (vt < vs - 1e-9) {
      complain("not monotone");
      return;
    }
    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
    int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
    if (j == k || s.contains(j) || s.contains(k)) continue;
    ItemSet sj = s, sk = s, sjk = s;
    sj.add(j);
    sk.add(k);
    sjk.add(j);
    sjk.add(k);
    if (v.eval(sj) + v.eval(sk) < v.eval(sjk) + vs - 1e-9) {
      complain("not submodular");
      return;
    }
  }
}

}  // namespace

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> out;
  if (inst.num_items < 0) out.push_back("negative num_items");
  if (inst.agents.empty()) out.push_back("no agents");
  double weight_sum = 0.0;
  for (int i = 0; i < inst.num_agents(); ++i) {
    double w = inst.agents[static_cast<std::size_t>(i)].weight;
    weight_sum += w;
    if (!(w > 0.0 && w < 1.0) && !(w == 1.0 && inst.num_agents() == 1))
      out.push_back("agent " + std::to_string(i) + ": weight outside (0,1)");
  }
  if (!inst.agents.empty() && std::abs(weight_sum - 1.0) > 1e-9)
    out.push_back("weights sum to " + std::to_string(weight_sum) + ", expected 1");
  for (int i = 0; i < inst.num_agents(); ++i)
    check_valuation(i, inst.agents[static_cast<std::size_t>(i)].valuation, inst.num_items, out);
  return out;
}

}  // namespace nsw
