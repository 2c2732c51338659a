#include "cag/io.hpp"

#include "cag/error.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>
#include <unordered_map>

namespace cag {

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

namespace {

std::size_t line_of(const std::string& text, std::size_t offset) {
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + std::min(offset, text.size()), '\n'));
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("invalid JSON at line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
    }
}

const Json& field(const Json& obj, const char* key, const char* where) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw InputError(std::string(where) + ": missing \"" + key + "\"");
    }
    return obj.at(key);
}

std::int64_t as_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) {
        throw InputError(std::string(what) + " must be an integer");
    }
    return j.get<std::int64_t>();
}

std::size_t as_index(const Json& j, const char* what) {
    const std::int64_t v = as_int(j, what);
    if (v < 0) throw InputError(std::string(what) + " must be non-negative");
    return static_cast<std::size_t>(v);
}

const Json& as_array(const Json& j, const char* what) {
    if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
    return j;
}

std::string as_string(const Json& j, const char* what) {
    if (!j.is_string()) throw InputError(std::string(what) + " must be a string");
    return j.get<std::string>();
}

/// Line of the second `"id": "<id>"` inside the array under `key`.
std::size_t duplicate_line(const std::string& text, const std::string& key, const std::string& other,
                           const std::string& id) {
    auto key_offset = [&](const std::string& k) -> std::size_t {
        std::smatch m;
        std::regex re("\"" + k + "\"\\s*:");
        return std::regex_search(text, m, re) ? static_cast<std::size_t>(m.position(0)) : std::string::npos;
    };
    const std::size_t begin = key_offset(key);
    const std::size_t other_begin = key_offset(other);
    const std::size_t end = (other_begin != std::string::npos && other_begin > begin) ? other_begin : text.size();
    std::string escaped;
    for (char c : Json(id).dump()) {
        if (std::string("\\^$.|?*+()[]{}").find(c) != std::string::npos) escaped += '\\';
        escaped += c;
    }
    std::regex re("\"id\"\\s*:\\s*" + escaped);
    int seen = 0;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), re); it != std::sregex_iterator(); ++it) {
        const auto pos = static_cast<std::size_t>(it->position(0));
        if (begin != std::string::npos && (pos < begin || pos >= end)) continue;
        if (++seen == 2) return line_of(text, pos);
    }
    return 0;
}

Instance instance_from_json(const Json& j, const std::string& text) {
    if (!j.is_object()) throw InputError("instance must be a JSON object");
    Instance inst;
    std::unordered_map<std::string, NodeIndex> node_index;
    for (const auto& n : as_array(field(j, "nodes", "instance"), "nodes")) {
        std::string id = as_string(field(n, "id", "node"), "node id");
        const std::int64_t value = as_int(field(n, "value", "node"), "node value");
        if (!node_index.emplace(id, inst.nodes.size()).second) {
            throw InputError("duplicate node id '" + id + "' at line " +
                             std::to_string(duplicate_line(text, "nodes", "agents", id)));
        }
        inst.nodes.push_back({std::move(id), value});
    }
    std::unordered_map<std::string, AgentIndex> agent_index;
    for (const auto& a : as_array(field(j, "agents", "instance"), "agents")) {
        Agent agent;
        agent.id = as_string(field(a, "id", "agent"), "agent id");
        agent.weight = a.contains("weight") ? as_int(a.at("weight"), "agent weight") : 1;
        if (!agent_index.emplace(agent.id, inst.agents.size()).second) {
            throw InputError("duplicate agent id '" + agent.id + "' at line " +
                             std::to_string(duplicate_line(text, "agents", "nodes", agent.id)));
        }
        for (const auto& s : as_array(field(a, "strategies", "agent"), "strategies")) {
            Strategy strategy;
            for (const auto& ref : as_array(s, "strategy")) {
                const std::string id = as_string(ref, "node reference");
                auto it = node_index.find(id);
                if (it == node_index.end()) {
                    throw InputError("unknown node '" + id + "' in a strategy of agent '" + agent.id + "'");
                }
                strategy.push_back(it->second);
            }
            std::sort(strategy.begin(), strategy.end());
            if (std::adjacent_find(strategy.begin(), strategy.end()) != strategy.end()) {
                throw InputError("repeated node in a strategy of agent '" + agent.id + "'");
            }
            agent.strategies.push_back(std::move(strategy));
        }
        inst.agents.push_back(std::move(agent));
    }
    return inst;
}

Json choices_json(const StrategyProfile& p) { return Json(p.choices); }

StrategyProfile choices_from(const Json& j) {
    StrategyProfile p;
    for (const auto& c : as_array(j, "choices")) p.choices.push_back(as_index(c, "choice"));
    return p;
}

Json rationals_json(const std::vector<Rational>& values) {
    Json arr = Json::array();
    for (const auto& v : values) arr.push_back(to_string(v));
    return arr;
}

}  // namespace

Instance parse_instance(const std::string& text) { return instance_from_json(parse_json(text), text); }

Json instance_to_json(const Instance& inst) {
    Json nodes = Json::array();
    for (const auto& n : inst.nodes) nodes.push_back({{"id", n.id}, {"value", n.value}});
    Json agents = Json::array();
    for (const auto& a : inst.agents) {
        Json strategies = Json::array();
        for (const auto& s : a.strategies) {
            Json refs = Json::array();
            for (NodeIndex j : s) refs.push_back(inst.nodes.at(j).id);
            strategies.push_back(std::move(refs));
        }
        agents.push_back({{"id", a.id}, {"weight", a.weight}, {"strategies", std::move(strategies)}});
    }
    return {{"nodes", std::move(nodes)}, {"agents", std::move(agents)}};
}

StrategyProfile parse_profile(const std::string& text) {
    const Json j = parse_json(text);
    return choices_from(field(j, "choices", "profile"));
}

Json profile_to_json(const StrategyProfile& profile) { return {{"choices", choices_json(profile)}}; }

SequentialGame parse_game(const std::string& text) {
    const Json j = parse_json(text);
    SequentialGame game{instance_from_json(j, text), {}};
    if (j.contains("order")) {
        std::unordered_map<std::string, AgentIndex> index;
        for (AgentIndex i = 0; i < game.instance.agent_count(); ++i) index[game.instance.agents[i].id] = i;
        for (const auto& ref : as_array(j.at("order"), "order")) {
            const std::string id = as_string(ref, "order entry");
            auto it = index.find(id);
            if (it == index.end()) throw InputError("unknown agent '" + id + "' in order");
            game.order.push_back(it->second);
        }
    } else {
        for (AgentIndex i = 0; i < game.instance.agent_count(); ++i) game.order.push_back(i);
    }
    check_game(game);
    return game;
}

Json game_to_json(const SequentialGame& game) {
    Json j = instance_to_json(game.instance);
    Json order = Json::array();
    for (AgentIndex i : game.order) order.push_back(game.instance.agents.at(i).id);
    j["order"] = std::move(order);
    return j;
}

CutGraph parse_graph(const std::string& text) {
    const Json j = parse_json(text);
    CutGraph g;
    g.vertices = static_cast<int>(as_int(field(j, "vertices", "graph"), "vertices"));
    for (const auto& e : as_array(field(j, "edges", "graph"), "edges")) {
        if (!e.is_array() || e.size() != 3) throw InputError("edge must be [u, v, w]");
        g.edges.push_back({static_cast<int>(as_int(e[0], "edge endpoint")),
                           static_cast<int>(as_int(e[1], "edge endpoint")), as_int(e[2], "edge weight")});
    }
    check_graph(g);
    return g;
}

Json graph_to_json(const CutGraph& g) {
    Json edges = Json::array();
    for (const auto& e : g.edges) edges.push_back({e.u, e.v, e.w});
    return {{"vertices", g.vertices}, {"edges", std::move(edges)}};
}

ThreeDMInstance parse_3dm(const std::string& text) {
    const Json j = parse_json(text);
    ThreeDMInstance tdm;
    tdm.n = static_cast<int>(as_int(field(j, "n", "3dm"), "n"));
    for (const auto& t : as_array(field(j, "triples", "3dm"), "triples")) {
        if (!t.is_array() || t.size() != 3) throw InputError("malformed triples: need [x, y, z]");
        tdm.triples.push_back({static_cast<int>(as_int(t[0], "triple")), static_cast<int>(as_int(t[1], "triple")),
                               static_cast<int>(as_int(t[2], "triple"))});
    }
    check_3dm(tdm);
    return tdm;
}

Json tdm_to_json(const ThreeDMInstance& tdm) {
    Json triples = Json::array();
    for (const auto& t : tdm.triples) triples.push_back({t[0], t[1], t[2]});
    return {{"n", tdm.n}, {"triples", std::move(triples)}};
}

TqbfFormula parse_tqbf(const std::string& text) {
    const Json j = parse_json(text);
    TqbfFormula f;
    f.vars = static_cast<int>(as_int(field(j, "vars", "tqbf"), "vars"));
    for (const auto& c : as_array(field(j, "clauses", "tqbf"), "clauses")) {
        if (!c.is_array() || c.size() != 3) throw InputError("clause must list three literals");
        f.clauses.push_back({static_cast<int>(as_int(c[0], "literal")), static_cast<int>(as_int(c[1], "literal")),
                             static_cast<int>(as_int(c[2], "literal"))});
    }
    return f;
}

Json tqbf_to_json(const TqbfFormula& f) {
    Json clauses = Json::array();
    for (const auto& c : f.clauses) clauses.push_back({c[0], c[1], c[2]});
    return {{"vars", f.vars}, {"clauses", std::move(clauses)}};
}

Json validation_to_json(const ValidationReport& report) {
    return {{"ok", report.ok()}, {"errors", report.errors}, {"warnings", report.warnings}};
}

Json report_to_json(const EquilibriumReport& report) {
    Json pne = Json::array();
    for (const auto& p : report.pne) pne.push_back(choices_json(p));
    return {{"pne", std::move(pne)},
            {"opt_welfare", report.opt_welfare},
            {"opt_profile", choices_json(report.opt_profile)},
            {"poa", report.poa ? to_string(*report.poa) : std::string("undefined-no-pne")},
            {"profiles_scanned", report.profiles_scanned}};
}

EquilibriumReport report_from_json(const Json& j) {
    EquilibriumReport report;
    for (const auto& p : as_array(field(j, "pne", "report"), "pne")) report.pne.push_back(choices_from(p));
    report.opt_welfare = as_int(field(j, "opt_welfare", "report"), "opt_welfare");
    report.opt_profile = choices_from(field(j, "opt_profile", "report"));
    const std::string poa = as_string(field(j, "poa", "report"), "poa");
    if (poa != "undefined-no-pne") report.poa = parse_rational(poa);
    report.profiles_scanned = static_cast<std::uint64_t>(as_int(field(j, "profiles_scanned", "report"), "count"));
    return report;
}

Json spe_to_json(const SpeResult& result) {
    Json outcomes = Json::array();
    for (const auto& o : result.outcomes) {
        outcomes.push_back({{"profile", choices_json(o.profile)},
                            {"utilities", rationals_json(o.utilities)},
                            {"welfare", o.welfare}});
    }
    Json j = {{"mode", result.mode == SpeMode::exhaustive ? "exhaustive" : "deterministic"},
              {"outcomes", std::move(outcomes)}};
    if (result.subgames) {
        Json table = Json::array();
        for (const auto& entry : *result.subgames) {
            Json values = Json::array();
            for (const auto& v : entry.values) values.push_back(rationals_json(v));
            table.push_back({{"prefix", entry.prefix}, {"values", std::move(values)}});
        }
        j["subgames"] = std::move(table);
    }
    return j;
}

Json step_to_json(std::size_t index, const DynamicsStep& step) {
    return {{"step", index + 1}, {"agent", step.agent}, {"from", step.from}, {"to", step.to},
            {"gain", to_string(step.gain)}};
}

Json trace_summary_to_json(const DynamicsTrace& trace) {
    return {{"steps", trace.steps.size()},
            {"termination", trace.termination == Termination::converged ? "converged" : "step-limit"},
            {"final", choices_json(trace.final)},
            {"certified_factor", to_string(trace.certified_factor)}};
}

Json common_space_to_json(const CommonSpaceOutput& out) {
    Json origin = Json::array();
    for (const auto& o : out.origin) origin.push_back({{"agent", o.agent}, {"strategy", o.strategy}});
    Json reserve = Json::array();
    for (const auto& group : out.reserve) {
        Json ids = Json::array();
        for (NodeIndex j : group) ids.push_back(out.instance.nodes.at(j).id);
        reserve.push_back(std::move(ids));
    }
    Json mapping = {{"origin", std::move(origin)}, {"reserve", std::move(reserve)}};
    if (out.M_prime > 0) {
        mapping["heavy_agent"] = out.heavy;
        mapping["T"] = out.T;
        mapping["M"] = out.M;
        mapping["M_prime"] = out.M_prime;
    } else {
        mapping["group_size"] = out.M;
    }
    return {{"instance", instance_to_json(out.instance)}, {"mapping", std::move(mapping)}};
}

Json maxcut_reduction_to_json(const MaxCutReduction& red) {
    Json gadgets = Json::array();
    for (const auto& g : red.gadgets) {
        gadgets.push_back({{"w", g.w}, {"d_plus", g.d_plus}, {"d_minus", g.d_minus}, {"rho", to_string(g.rho)}});
    }
    Json vertex_agents = Json::array();
    for (AgentIndex a : red.vertex_agents) vertex_agents.push_back(red.instance.agents.at(a).id);
    return {{"instance", instance_to_json(red.instance)},
            {"mapping",
             {{"vertex_agents", std::move(vertex_agents)},
              {"lambda", to_string(red.lambda)},
              {"rho_total", to_string(red.rho_total)},
              {"gadgets", std::move(gadgets)}}}};
}

Json tdm_reduction_to_json(const TdmReduction& red) {
    Json agents = Json::array();
    for (AgentIndex a : red.match_agents) agents.push_back(red.instance.agents.at(a).id);
    return {{"instance", instance_to_json(red.instance)},
            {"mapping", {{"match_agents", std::move(agents)}, {"fail_strategy_offset", red.fail_strategy_offset}}}};
}

Json tqbf_reduction_to_json(const TqbfReduction& red) {
    Json literals = Json::array();
    for (const auto& row : red.negated_literal_node) {
        Json ids = Json::array();
        for (NodeIndex j : row) ids.push_back(red.game.instance.nodes.at(j).id);
        literals.push_back(std::move(ids));
    }
    return {{"game", game_to_json(red.game)},
            {"mapping",
             {{"n", red.n},
              {"n_prime", red.n_prime},
              {"clause_count", red.clause_count},
              {"negated_literals", std::move(literals)},
              {"false_strategy", red.false_strategy},
              {"threshold", to_string(red.threshold)}}}};
}

}  // namespace cag
