#include "nsw/json_io.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nsw {

namespace {

std::vector<int> int_list(const Json& j) {
  std::vector<int> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(e.get<int>());
  return out;
}

std::vector<double> double_list(const Json& j) {
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(e.get<double>());
  return out;
}

Json box_to_json(const Mp3Box& b) {
  Json j;
  j["mu_lo"] = b.mu_lo;
  j["mu_hi"] = b.mu_hi;
  j["k_lo"] = b.k_lo;
  j["k_hi"] = b.k_hi;
  j["alpha_lo"] = b.alpha_lo;
  j["alpha_hi"] = b.alpha_hi;
  j["l_t"] = b.l_t;
  return j;
}

}  // namespace

Json valuation_to_json(const Valuation& v) {
  Json j;
  switch (v.kind()) {
    case ValuationKind::Additive:
      j["type"] = "additive";
      j["values"] = v.additive_values();
      break;
    case ValuationKind::Coverage:
      j["type"] = "coverage";
      j["ground_size"] = v.coverage_ground_size();
      j["item_sets"] = v.coverage_item_sets();
      break;
    case ValuationKind::Table:
      j["type"] = "table";
      j["values"] = v.table_values();
      break;
    case ValuationKind::PartitionSystem: {
      const PartitionSystemSpec& ps = v.ps_spec();
      j["type"] = "partition_system";
      j["k"] = ps.k;
      j["lambda"] = ps.lambda;
      j["t"] = ps.t;
      j["heavy"] = ps.heavy;
      j["p"] = ps.p;
      j["q"] = ps.q;
      j["o"] = ps.o;
      break;
    }
  }
  return j;
}

Valuation valuation_from_json(const Json& j, int num_items) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "additive") {
    std::vector<double> values = double_list(j.at("values"));
    if (static_cast<int>(values.size()) != num_items)
      throw std::invalid_argument("additive valuation needs one value per item");
    return Valuation::additive(std::move(values));
  }
  if (type == "coverage") {
    int ground_size = j.at("ground_size").get<int>();
    std::vector<std::vector<int>> item_sets;
    for (const auto& row : j.at("item_sets")) item_sets.push_back(int_list(row));
    if (static_cast<int>(item_sets.size()) != num_items)
      throw std::invalid_argument("coverage valuation needs one covered subset per item");
    return Valuation::coverage(ground_size, std::move(item_sets));
  }
  if (type == "table") {
    std::vector<double> values = double_list(j.at("values"));
    if (num_items >= 31 || values.size() != (std::size_t{1} << num_items))
      throw std::invalid_argument("table valuation needs 2^num_items entries");
    return Valuation::table(num_items, std::move(values));
  }
  if (type == "partition_system") {
    PartitionSystemSpec ps;
    ps.k = j.at("k").get<long long>();
    ps.lambda = j.at("lambda").get<long long>();
    ps.t = j.at("t").get<double>();
    ps.heavy = j.at("heavy").get<bool>();
    ps.p = j.at("p").get<long long>();
    ps.q = j.at("q").get<long long>();
    ps.o = j.at("o").get<long long>();
    if (ps_num_items(ps.k, ps.lambda) != num_items)
      throw std::invalid_argument("partition_system size disagrees with num_items");
    return Valuation::partition_system(ps);
  }
  throw std::invalid_argument("unknown valuation type: " + type);
}

Json instance_to_json(const Instance& inst) {
  Json j;
  j["num_items"] = inst.num_items;
  j["agents"] = Json::array();
  for (const Agent& a : inst.agents) {
    Json ja;
    ja["weight"] = a.weight;
    ja["valuation"] = valuation_to_json(a.valuation);
    j["agents"].push_back(std::move(ja));
  }
  return j;
}

Instance instance_from_json(const Json& j) {
  Instance inst;
  inst.num_items = j.at("num_items").get<int>();
  if (inst.num_items < 0) throw std::invalid_argument("num_items must be nonnegative");
  for (const auto& ja : j.at("agents")) {
    Agent a;
    a.weight = ja.at("weight").get<double>();
    a.valuation = valuation_from_json(ja.at("valuation"), inst.num_items);
    inst.agents.push_back(std::move(a));
  }
  return inst;
}

Json solution_to_json(const FractionalSolution& sol) {
  Json j;
  j["lp_value"] = sol.lp_value;
  j["entries"] = Json::array();
  for (const FractionalEntry& e : sol.entries) {
    Json je;
    je["agent"] = e.agent;
    je["config"] = e.config.items();
    je["y"] = e.y;
    j["entries"].push_back(std::move(je));
  }
  return j;
}

FractionalSolution solution_from_json(const Json& j) {
  FractionalSolution sol;
  sol.lp_value = j.at("lp_value").get<double>();
  for (const auto& je : j.at("entries")) {
    FractionalEntry e;
    e.agent = je.at("agent").get<int>();
    e.config = ItemSet(int_list(je.at("config")));
    e.y = je.at("y").get<double>();
    sol.entries.push_back(std::move(e));
  }
  return sol;
}

Json outcome_to_json(const RoundingOutcome& out) {
  Json j;
  j["seed"] = out.seed;
  j["assignment"] = Json::array();
  for (std::size_t i = 0; i < out.assignment.size(); ++i) {
    Json ja;
    ja["agent"] = static_cast<int>(i);
    ja["items"] = out.assignment[i].items();
    j["assignment"].push_back(std::move(ja));
  }
  return j;
}

Json stats_to_json(const AgentStats& stats) {
  Json j;
  j["mu_sm"] = stats.mu_sm;
  j["mu_nlg"] = stats.mu_nlg;
  j["mubar_md"] = stats.mubar_md;
  j["mubar_sm"] = stats.mubar_sm;
  j["p_star"] = stats.p_star;
  return j;
}

Json gap_report_to_json(const GapReport& rep) {
  Json j;
  j["spec_version"] = kSpecVersion;
  j["family"] = rep.family;
  j["params"] = Json::object();
  for (const auto& [name, value] : rep.params) j["params"][name] = value;
  j["log_iopt"] = rep.log_iopt;
  j["log_fopt"] = rep.log_fopt;
  j["ratio"] = rep.ratio;
  j["feasibility_max_residual"] = rep.feasibility_max_residual;
  return j;
}

Json verify_report_to_json(const VerifyReport& rep) {
  Json j;
  j["spec_version"] = kSpecVersion;
  j["mode"] = rep.mode;
  j["target"] = rep.target;
  j["certified"] = rep.ok();
  j["boxes_certified"] = rep.boxes_certified;
  j["max_certified_lp_bound"] = rep.max_certified_lp_bound;
  j["max_depth_reached"] = rep.max_depth_reached;
  j["lp_solve_count"] = rep.lp_solve_count;
  j["failures"] = Json::array();
  for (const BoxFailure& f : rep.failures) {
    Json jf;
    jf["box"] = box_to_json(f.box);
    jf["bound"] = f.bound;
    j["failures"].push_back(std::move(jf));
  }
  return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open for reading");
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_json_file(const Json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << dump_json(j);
  if (!out) throw std::runtime_error(path + ": write failed");
}

Instance load_instance(const std::string& path) {
  try {
    return instance_from_json(load_json_file(path));
  } catch (const Json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace nsw
