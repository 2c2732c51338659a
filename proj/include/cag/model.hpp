#pragma once

#include "cag/rational.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace cag {

using NodeIndex = std::size_t;
using AgentIndex = std::size_t;

/// Sorted, duplicate-free list of node indices.
using Strategy = std::vector<NodeIndex>;

struct Node {
    std::string id;
    std::int64_t value = 1;

    friend bool operator==(const Node&, const Node&) = default;
};

struct Agent {
    std::string id;
    std::int64_t weight = 1;
    std::vector<Strategy> strategies;

    friend bool operator==(const Agent&, const Agent&) = default;
};

/// A customer attraction game: valued nodes, weighted agents, and per-agent
/// strategy spaces. Construction does not enforce the invariants; call
/// validate_instance() for that.
struct Instance {
    std::vector<Node> nodes;
    std::vector<Agent> agents;

    std::size_t node_count() const { return nodes.size(); }
    std::size_t agent_count() const { return agents.size(); }

    friend bool operator==(const Instance&, const Instance&) = default;
};

/// One strategy index per agent, in instance order.
struct StrategyProfile {
    std::vector<std::size_t> choices;

    friend auto operator<=>(const StrategyProfile&, const StrategyProfile&) = default;
};

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;

    bool ok() const { return errors.empty(); }
};

struct SymmetryClass {
    bool asymmetric_strategy_spaces = false;
    bool asymmetric_weights = false;
    bool asymmetric_values = false;

    bool symmetric() const {
        return !asymmetric_strategy_spaces && !asymmetric_weights && !asymmetric_values;
    }
    friend bool operator==(const SymmetryClass&, const SymmetryClass&) = default;
};

ValidationReport validate_instance(const Instance& inst);

/// Throws InputError unless the profile has one in-range choice per agent.
void check_profile(const Instance& inst, const StrategyProfile& profile);

StrategyProfile zero_profile(const Instance& inst);

std::int64_t load(const Instance& inst, const StrategyProfile& profile, NodeIndex node);
std::vector<std::int64_t> loads(const Instance& inst, const StrategyProfile& profile);

Rational utility(const Instance& inst, const StrategyProfile& profile, AgentIndex agent);
std::vector<Rational> utilities(const Instance& inst, const StrategyProfile& profile);

/// U_i(s, S_-i) for the agent's strategy with index `strategy`.
Rational deviation_utility(const Instance& inst, const StrategyProfile& profile, AgentIndex agent,
                           std::size_t strategy);

/// Total value of attracted nodes; equals the sum of utilities.
std::int64_t social_welfare(const Instance& inst, const StrategyProfile& profile);

SymmetryClass classify_symmetry(const Instance& inst);

std::int64_t total_value(const Instance& inst);
std::int64_t total_weight(const Instance& inst);
std::int64_t max_weight(const Instance& inst);

/// Loads of one profile, kept in sync under unilateral moves, with cheap
/// deviation queries. Holds a reference to the instance.
class ProfileLoads {
public:
    ProfileLoads(const Instance& inst, StrategyProfile profile);

    const StrategyProfile& profile() const { return profile_; }
    const std::vector<std::int64_t>& values() const { return load_; }
    std::int64_t operator[](NodeIndex j) const { return load_[j]; }

    Rational utility(AgentIndex i) const;
    Rational deviation_utility(AgentIndex i, std::size_t strategy) const;
    std::int64_t social_welfare() const;

    void move(AgentIndex i, std::size_t strategy);

private:
    const Instance* inst_;
    StrategyProfile profile_;
    std::vector<std::int64_t> load_;
};

}  // namespace cag
