#pragma once

#include "cag/dynamics.hpp"
#include "cag/equilibria.hpp"
#include "cag/gadgets.hpp"
#include "cag/model.hpp"
#include "cag/sequential.hpp"

#include <json.hpp>

#include <string>

namespace cag {

using Json = nlohmann::ordered_json;

/// Pretty-printed with two-space indent and a trailing newline.
std::string dump(const Json& j);

std::string read_file(const std::string& path);

/// Structural parse of the instance format. Node references are resolved by
/// id; duplicate ids are rejected with the line of the repeated id. Semantic
/// checks (empty strategies, positivity) are left to validate_instance.
Instance parse_instance(const std::string& text);
Json instance_to_json(const Instance& inst);

StrategyProfile parse_profile(const std::string& text);
Json profile_to_json(const StrategyProfile& profile);

/// Instance format plus "order": [agent ids]. A missing order means index order.
SequentialGame parse_game(const std::string& text);
Json game_to_json(const SequentialGame& game);

CutGraph parse_graph(const std::string& text);
Json graph_to_json(const CutGraph& g);

ThreeDMInstance parse_3dm(const std::string& text);
Json tdm_to_json(const ThreeDMInstance& tdm);

TqbfFormula parse_tqbf(const std::string& text);
Json tqbf_to_json(const TqbfFormula& f);

Json validation_to_json(const ValidationReport& report);

Json report_to_json(const EquilibriumReport& report);
EquilibriumReport report_from_json(const Json& j);

Json spe_to_json(const SpeResult& result);

/// "step" is 1-based: index 0 is written as step 1.
Json step_to_json(std::size_t index, const DynamicsStep& step);
Json trace_summary_to_json(const DynamicsTrace& trace);

Json common_space_to_json(const CommonSpaceOutput& out);
Json maxcut_reduction_to_json(const MaxCutReduction& red);
Json tdm_reduction_to_json(const TdmReduction& red);
Json tqbf_reduction_to_json(const TqbfReduction& red);

}  // namespace cag
