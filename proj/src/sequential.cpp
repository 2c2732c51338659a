#include "cag/sequential.hpp"

#include "cag/error.hpp"

#include <algorithm>
#include <memory>

namespace cag {

void check_game(const SequentialGame& game) {
    const std::size_t m = game.instance.agent_count();
    if (game.order.size() != m) {
        throw InputError("order must list every agent exactly once");
    }
    std::vector<bool> seen(m, false);
    for (AgentIndex i : game.order) {
        if (i >= m || seen[i]) {
            throw InputError("order must list every agent exactly once");
        }
        seen[i] = true;
    }
}

namespace {

struct Leaf {
    StrategyProfile profile;
    std::vector<Rational> utilities;
};

using LeafPtr = std::shared_ptr<const Leaf>;
using OutcomeSet = std::vector<LeafPtr>;

class Solver {
public:
    Solver(const SequentialGame& game, SpeMode mode, const SpeOptions& opts)
        : game_(game), inst_(game.instance), mode_(mode), opts_(opts), state_(inst_, zero_profile(inst_)) {
        check_game(game);
        require_budget(inst_, SearchOptions{opts.budget, 1});
        if (opts.record_subgames && prefix_count() <= opts.subgame_limit) {
            table_.emplace();
        }
    }

    /// Fixes the first k movers to the choices in `profile`.
    void set_prefix(const StrategyProfile& profile, std::size_t k) {
        prefix_.clear();
        for (std::size_t t = 0; t < k; ++t) {
            const AgentIndex i = game_.order[t];
            state_.move(i, profile.choices[i]);
            prefix_.push_back(profile.choices[i]);
        }
    }

    void choose(std::size_t k, std::size_t s) {
        state_.move(game_.order[k], s);
        prefix_.resize(k);
        prefix_.push_back(s);
    }

    OutcomeSet solve(std::size_t k) {
        if (k == game_.order.size()) {
            auto leaf = std::make_shared<Leaf>();
            leaf->profile = state_.profile();
            leaf->utilities.reserve(inst_.agent_count());
            for (AgentIndex i = 0; i < inst_.agent_count(); ++i) leaf->utilities.push_back(state_.utility(i));
            return {std::move(leaf)};
        }
        const AgentIndex mover = game_.order[k];
        const std::size_t options = inst_.agents[mover].strategies.size();
        std::vector<OutcomeSet> children;
        children.reserve(options);
        for (std::size_t s = 0; s < options; ++s) {
            choose(k, s);
            children.push_back(solve(k + 1));
        }
        prefix_.resize(k);

        OutcomeSet result;
        if (mode_ == SpeMode::deterministic) {
            std::size_t best = 0;
            for (std::size_t s = 1; s < options; ++s) {
                if (children[s][0]->utilities[mover] > children[best][0]->utilities[mover]) best = s;
            }
            result = std::move(children[best]);
        } else {
            Rational threshold = guaranteed(children[0], mover);
            for (std::size_t s = 1; s < options; ++s) {
                threshold = std::max(threshold, guaranteed(children[s], mover));
            }
            for (auto& child : children) {
                for (auto& leaf : child) {
                    if (leaf->utilities[mover] >= threshold) result.push_back(std::move(leaf));
                }
            }
            if (result.size() > opts_.outcome_limit) {
                throw DomainError("search-space-too-large");
            }
        }
        record(result);
        return result;
    }

    std::optional<std::vector<SubgameEntry>> take_table() { return std::move(table_); }

    static Rational guaranteed(const OutcomeSet& set, AgentIndex agent) {
        Rational low = set.front()->utilities[agent];
        for (const auto& leaf : set) low = std::min(low, leaf->utilities[agent]);
        return low;
    }

private:
    std::uint64_t prefix_count() const {
        std::uint64_t total = 0;
        std::uint64_t level = 1;
        for (AgentIndex i : game_.order) {
            total += level;
            if (level > opts_.subgame_limit) return level;
            level *= inst_.agents[i].strategies.size();
        }
        return total;
    }

    void record(const OutcomeSet& set) {
        if (!table_) return;
        SubgameEntry entry{prefix_, {}};
        for (const auto& leaf : set) entry.values.push_back(leaf->utilities);
        table_->push_back(std::move(entry));
    }

    const SequentialGame& game_;
    const Instance& inst_;
    SpeMode mode_;
    SpeOptions opts_;
    ProfileLoads state_;
    std::vector<std::size_t> prefix_;
    std::optional<std::vector<SubgameEntry>> table_;
};

}  // namespace

SpeResult spe_solve(const SequentialGame& game, SpeMode mode, const SpeOptions& opts) {
    Solver solver(game, mode, opts);
    OutcomeSet set = solver.solve(0);
    SpeResult result;
    result.mode = mode;
    result.outcomes.reserve(set.size());
    for (const auto& leaf : set) {
        std::int64_t welfare = social_welfare(game.instance, leaf->profile);
        result.outcomes.push_back({leaf->profile, leaf->utilities, welfare});
    }
    std::sort(result.outcomes.begin(), result.outcomes.end(),
              [](const SpeOutcome& a, const SpeOutcome& b) { return a.profile < b.profile; });
    result.subgames = solver.take_table();
    if (result.subgames) {
        std::sort(result.subgames->begin(), result.subgames->end(),
                  [](const SubgameEntry& a, const SubgameEntry& b) { return a.prefix < b.prefix; });
    }
    return result;
}

bool spe_decision(const SequentialGame& game, AgentIndex agent, const Rational& x, const SpeOptions& opts) {
    if (agent >= game.instance.agent_count()) {
        throw InputError("agent index out of range");
    }
    const auto result = spe_solve(game, SpeMode::exhaustive, opts);
    return std::any_of(result.outcomes.begin(), result.outcomes.end(),
                       [&](const SpeOutcome& o) { return o.utilities[agent] >= x; });
}

Rational spoa(const SequentialGame& game, const SpeOptions& opts) {
    const auto result = spe_solve(game, SpeMode::exhaustive, opts);
    std::int64_t worst = result.outcomes.front().welfare;
    for (const auto& o : result.outcomes) worst = std::min(worst, o.welfare);
    const auto opt = optimal_social_welfare(game.instance, SearchOptions{opts.budget, 1});
    return make_rational(opt.welfare, worst);
}

bool verify_one_deviation(const SequentialGame& game, const StrategyProfile& profile, SpeMode mode,
                          const SpeOptions& opts) {
    check_game(game);
    check_profile(game.instance, profile);
    SpeOptions local = opts;
    local.record_subgames = false;
    Solver solver(game, mode, local);
    const auto u = utilities(game.instance, profile);
    for (std::size_t k = 0; k < game.order.size(); ++k) {
        const AgentIndex mover = game.order[k];
        for (std::size_t s = 0; s < game.instance.agents[mover].strategies.size(); ++s) {
            if (s == profile.choices[mover]) continue;
            solver.set_prefix(profile, k);
            solver.choose(k, s);
            const OutcomeSet alt = solver.solve(k + 1);
            if (u[mover] < Solver::guaranteed(alt, mover)) return false;
        }
    }
    return true;
}

}  // namespace cag
