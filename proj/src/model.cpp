#include "cag/model.hpp"

#include "cag/error.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace cag {

ValidationReport validate_instance(const Instance& inst) {
    ValidationReport report;
    std::unordered_set<std::string> seen;
    for (const auto& node : inst.nodes) {
        if (node.value < 1) {
            report.errors.push_back("non-positive value for node '" + node.id + "'");
        }
        if (!seen.insert(node.id).second) {
            report.errors.push_back("duplicate node id '" + node.id + "'");
        }
    }
    seen.clear();
    std::vector<bool> covered(inst.node_count(), false);
    for (const auto& agent : inst.agents) {
        if (agent.weight < 1) {
            report.errors.push_back("non-positive weight for agent '" + agent.id + "'");
        }
        if (!seen.insert(agent.id).second) {
            report.errors.push_back("duplicate agent id '" + agent.id + "'");
        }
        if (agent.strategies.empty()) {
            report.errors.push_back("agent '" + agent.id + "' has no strategies");
        }
        for (std::size_t s = 0; s < agent.strategies.size(); ++s) {
            const auto& strategy = agent.strategies[s];
            std::string where = "agent '" + agent.id + "' strategy " + std::to_string(s);
            if (strategy.empty()) {
                report.errors.push_back("empty strategy: " + where);
                continue;
            }
            bool in_range = true;
            for (NodeIndex j : strategy) {
                if (j >= inst.node_count()) {
                    report.errors.push_back("bad node index " + std::to_string(j) + ": " + where);
                    in_range = false;
                } else {
                    covered[j] = true;
                }
            }
            if (in_range && std::adjacent_find(strategy.begin(), strategy.end(),
                                               std::greater_equal<>()) != strategy.end()) {
                report.errors.push_back("strategy not sorted and duplicate-free: " + where);
            }
        }
    }
    for (NodeIndex j = 0; j < inst.node_count(); ++j) {
        if (!covered[j]) {
            report.warnings.push_back("node '" + inst.nodes[j].id + "' is not covered by any strategy");
        }
    }
    return report;
}

void check_profile(const Instance& inst, const StrategyProfile& profile) {
    if (profile.choices.size() != inst.agent_count()) {
        throw InputError("profile has " + std::to_string(profile.choices.size()) + " choices for " +
                         std::to_string(inst.agent_count()) + " agents");
    }
    for (AgentIndex i = 0; i < inst.agent_count(); ++i) {
        if (profile.choices[i] >= inst.agents[i].strategies.size()) {
            throw InputError("profile choice " + std::to_string(profile.choices[i]) + " out of range for agent '" +
                             inst.agents[i].id + "'");
        }
    }
}

StrategyProfile zero_profile(const Instance& inst) {
    return StrategyProfile{std::vector<std::size_t>(inst.agent_count(), 0)};
}

std::vector<std::int64_t> loads(const Instance& inst, const StrategyProfile& profile) {
    check_profile(inst, profile);
    std::vector<std::int64_t> result(inst.node_count(), 0);
    for (AgentIndex i = 0; i < inst.agent_count(); ++i) {
        for (NodeIndex j : inst.agents[i].strategies[profile.choices[i]]) {
            result.at(j) += inst.agents[i].weight;
        }
    }
    return result;
}

std::int64_t load(const Instance& inst, const StrategyProfile& profile, NodeIndex node) {
    if (node >= inst.node_count()) {
        throw InputError("node index " + std::to_string(node) + " out of range");
    }
    check_profile(inst, profile);
    std::int64_t c = 0;
    for (AgentIndex i = 0; i < inst.agent_count(); ++i) {
        const auto& s = inst.agents[i].strategies[profile.choices[i]];
        if (std::binary_search(s.begin(), s.end(), node)) {
            c += inst.agents[i].weight;
        }
    }
    return c;
}

Rational utility(const Instance& inst, const StrategyProfile& profile, AgentIndex agent) {
    if (agent >= inst.agent_count()) {
        throw InputError("agent index " + std::to_string(agent) + " out of range");
    }
    return ProfileLoads(inst, profile).utility(agent);
}

std::vector<Rational> utilities(const Instance& inst, const StrategyProfile& profile) {
    ProfileLoads state(inst, profile);
    std::vector<Rational> result;
    result.reserve(inst.agent_count());
    for (AgentIndex i = 0; i < inst.agent_count(); ++i) {
        result.push_back(state.utility(i));
    }
    return result;
}

Rational deviation_utility(const Instance& inst, const StrategyProfile& profile, AgentIndex agent,
                           std::size_t strategy) {
    if (agent >= inst.agent_count()) {
        throw InputError("agent index " + std::to_string(agent) + " out of range");
    }
    if (strategy >= inst.agents[agent].strategies.size()) {
        throw InputError("strategy index " + std::to_string(strategy) + " out of range");
    }
    return ProfileLoads(inst, profile).deviation_utility(agent, strategy);
}

std::int64_t social_welfare(const Instance& inst, const StrategyProfile& profile) {
    return ProfileLoads(inst, profile).social_welfare();
}

SymmetryClass classify_symmetry(const Instance& inst) {
    SymmetryClass cls;
    if (!inst.agents.empty()) {
        using Space = std::set<Strategy>;
        Space first(inst.agents.front().strategies.begin(), inst.agents.front().strategies.end());
        for (const auto& agent : inst.agents) {
            if (Space(agent.strategies.begin(), agent.strategies.end()) != first) {
                cls.asymmetric_strategy_spaces = true;
            }
            if (agent.weight != 1) {
                cls.asymmetric_weights = true;
            }
        }
    }
    cls.asymmetric_values = std::any_of(inst.nodes.begin(), inst.nodes.end(),
                                        [](const Node& n) { return n.value != 1; });
    return cls;
}

std::int64_t total_value(const Instance& inst) {
    std::int64_t sum = 0;
    for (const auto& n : inst.nodes) sum += n.value;
    return sum;
}

std::int64_t total_weight(const Instance& inst) {
    std::int64_t sum = 0;
    for (const auto& a : inst.agents) sum += a.weight;
    return sum;
}

std::int64_t max_weight(const Instance& inst) {
    std::int64_t best = 0;
    for (const auto& a : inst.agents) best = std::max(best, a.weight);
    return best;
}

ProfileLoads::ProfileLoads(const Instance& inst, StrategyProfile profile)
    : inst_(&inst), profile_(std::move(profile)), load_(inst.node_count(), 0) {
    check_profile(inst, profile_);
    for (AgentIndex i = 0; i < inst.agent_count(); ++i) {
        for (NodeIndex j : inst.agents[i].strategies[profile_.choices[i]]) {
            if (j >= load_.size()) {
                throw InputError("strategy of agent '" + inst.agents[i].id + "' references a missing node");
            }
            load_[j] += inst.agents[i].weight;
        }
    }
}

Rational ProfileLoads::utility(AgentIndex i) const {
    const Agent& agent = inst_->agents.at(i);
    RationalSum sum;
    for (NodeIndex j : agent.strategies[profile_.choices[i]]) {
        sum.add(agent.weight * inst_->nodes[j].value, load_[j]);
    }
    return sum.value();
}

Rational ProfileLoads::deviation_utility(AgentIndex i, std::size_t strategy) const {
    const Agent& agent = inst_->agents.at(i);
    const Strategy& current = agent.strategies[profile_.choices[i]];
    const Strategy& target = agent.strategies.at(strategy);
    RationalSum sum;
    // Both lists are sorted: walk them together to find the nodes the agent
    // already loads.
    auto cur = current.begin();
    for (NodeIndex j : target) {
        while (cur != current.end() && *cur < j) ++cur;
        std::int64_t others = load_[j] - ((cur != current.end() && *cur == j) ? agent.weight : 0);
        sum.add(agent.weight * inst_->nodes[j].value, others + agent.weight);
    }
    return sum.value();
}

std::int64_t ProfileLoads::social_welfare() const {
    std::int64_t sw = 0;
    for (NodeIndex j = 0; j < load_.size(); ++j) {
        if (load_[j] > 0) sw += inst_->nodes[j].value;
    }
    return sw;
}

void ProfileLoads::move(AgentIndex i, std::size_t strategy) {
    const Agent& agent = inst_->agents.at(i);
    for (NodeIndex j : agent.strategies[profile_.choices[i]]) load_[j] -= agent.weight;
    profile_.choices[i] = strategy;
    for (NodeIndex j : agent.strategies.at(strategy)) load_[j] += agent.weight;
}

}  // namespace cag
