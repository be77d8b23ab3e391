#pragma once

#include <json.hpp>
#include <string>

#include "nsw/conflp.hpp"
#include "nsw/core.hpp"
#include "nsw/gapgen.hpp"
#include "nsw/mpverify.hpp"
#include "nsw/rounding.hpp"

namespace nsw {

// Insertion-ordered JSON so serialized key order is deterministic.
using Json = nlohmann::ordered_json;

// Valuation payload, {"type": ...} plus per-type fields:
//   additive         {"values": [per-item reals]}
//   coverage         {"ground_size": g, "item_sets": [[ints]...]}
//   table            {"values": [2^m reals indexed by bitmask]}
//   partition_system {"k","lambda","t","heavy","p","q","o"}
Json valuation_to_json(const Valuation& v);

// Parses a valuation and checks its size against the instance's item count.
Valuation valuation_from_json(const Json& j, int num_items);

// {"num_items": m, "agents": [{"weight": w, "valuation": {...}}]}
Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

// {"lp_value": v, "entries": [{"agent": i, "config": [items], "y": y}]}
Json solution_to_json(const FractionalSolution& sol);
FractionalSolution solution_from_json(const Json& j);

// {"seed": s, "assignment": [{"agent": i, "items": [...]}]}
Json outcome_to_json(const RoundingOutcome& out);

// {"mu_sm","mu_nlg","mubar_md","mubar_sm","p_star"}
Json stats_to_json(const AgentStats& stats);

Json gap_report_to_json(const GapReport& rep);
Json verify_report_to_json(const VerifyReport& rep);

// Canonical text form, 2-space indent plus trailing newline; equal values
// produce byte-identical output.
std::string dump_json(const Json& j);

// File I/O with the file path prepended to any error.
Json load_json_file(const std::string& path);
void write_json_file(const Json& j, const std::string& path);

Instance load_instance(const std::string& path);

}  // namespace nsw
