#pragma once

#include "cag/equilibria.hpp"
#include "cag/model.hpp"
#include "cag/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cag {

/// An instance whose agents move one after another, each seeing all earlier choices.
struct SequentialGame {
    Instance instance;
    std::vector<AgentIndex> order;  ///< order[k] is the agent moving k-th

    friend bool operator==(const SequentialGame&, const SequentialGame&) = default;
};

enum class SpeMode {
    deterministic,  ///< backward induction, ties to the smallest strategy index
    exhaustive,     ///< every outcome reachable under some tie-breaking
};

struct SpeOutcome {
    StrategyProfile profile;
    std::vector<Rational> utilities;
    std::int64_t welfare = 0;
};

/// Outcome utilities of the subgame that starts after `prefix` (strategy
/// indices in move order).
struct SubgameEntry {
    std::vector<std::size_t> prefix;
    std::vector<std::vector<Rational>> values;
};

struct SpeOptions {
    std::uint64_t budget = kDefaultBudget;
    /// Exhaustive mode: cap on the outcome-set size at any prefix.
    std::size_t outcome_limit = 1'000'000;
    bool record_subgames = false;
    /// Subgame table is kept only if the number of prefixes stays below this.
    std::uint64_t subgame_limit = 100'000;
};

struct SpeResult {
    std::vector<SpeOutcome> outcomes;  ///< sorted by profile
    SpeMode mode = SpeMode::deterministic;
    std::optional<std::vector<SubgameEntry>> subgames;
};

/// Throws InputError unless the order is a permutation of the agents.
void check_game(const SequentialGame& game);

SpeResult spe_solve(const SequentialGame& game, SpeMode mode, const SpeOptions& opts = {});

/// Whether some SPE gives `agent` a utility of at least x.
bool spe_decision(const SequentialGame& game, AgentIndex agent, const Rational& x,
                  const SpeOptions& opts = {});

/// Optimal welfare over the worst SPE welfare (exhaustive mode).
Rational spoa(const SequentialGame& game, const SpeOptions& opts = {});

/// Checks the one-deviation property along the path of `profile`: at every
/// on-path prefix the mover's utility is at least what any other choice
/// guarantees under equilibrium continuation of the given mode.
bool verify_one_deviation(const SequentialGame& game, const StrategyProfile& profile, SpeMode mode,
                          const SpeOptions& opts = {});

}  // namespace cag
