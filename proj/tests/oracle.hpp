#pragma once

// Brute-force references written straight from the definitions. They share
// nothing with the library beyond the Instance type and Rational.

#include "cag/model.hpp"
#include "cag/sequential.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using cag::Instance;
using cag::Rational;
using Choices = std::vector<std::size_t>;

inline bool attracts(const Instance& inst, std::size_t agent, std::size_t strategy, std::size_t node) {
    const auto& s = inst.agents[agent].strategies[strategy];
    return std::find(s.begin(), s.end(), node) != s.end();
}

inline std::int64_t load(const Instance& inst, const Choices& c, std::size_t node) {
    std::int64_t total = 0;
    for (std::size_t a = 0; a < inst.agents.size(); ++a) {
        if (attracts(inst, a, c[a], node)) total += inst.agents[a].weight;
    }
    return total;
}

inline Rational utility(const Instance& inst, const Choices& c, std::size_t agent) {
    Rational u = 0;
    for (std::size_t j = 0; j < inst.nodes.size(); ++j) {
        if (!attracts(inst, agent, c[agent], j)) continue;
        u += Rational(inst.nodes[j].value) * Rational(inst.agents[agent].weight) / Rational(load(inst, c, j));
    }
    return u;
}

inline std::int64_t welfare(const Instance& inst, const Choices& c) {
    std::int64_t sw = 0;
    for (std::size_t j = 0; j < inst.nodes.size(); ++j) {
        if (load(inst, c, j) > 0) sw += inst.nodes[j].value;
    }
    return sw;
}

inline std::vector<Choices> all_profiles(const Instance& inst) {
    std::vector<Choices> out{Choices{}};
    for (const auto& a : inst.agents) {
        std::vector<Choices> next;
        for (const auto& prefix : out) {
            for (std::size_t s = 0; s < a.strategies.size(); ++s) {
                next.push_back(prefix);
                next.back().push_back(s);
            }
        }
        out = std::move(next);
    }
    return out;
}

inline bool is_pne(const Instance& inst, const Choices& c) {
    for (std::size_t a = 0; a < inst.agents.size(); ++a) {
        const Rational u = utility(inst, c, a);
        for (std::size_t s = 0; s < inst.agents[a].strategies.size(); ++s) {
            Choices d = c;
            d[a] = s;
            if (utility(inst, d, a) > u) return false;
        }
    }
    return true;
}

inline std::vector<Choices> pne_set(const Instance& inst) {
    std::vector<Choices> out;
    for (const auto& c : all_profiles(inst)) {
        if (is_pne(inst, c)) out.push_back(c);
    }
    return out;
}

inline std::int64_t opt_welfare(const Instance& inst) {
    std::int64_t best = 0;
    for (const auto& c : all_profiles(inst)) best = std::max(best, welfare(inst, c));
    return best;
}

/// SPE outcomes of a sequential game, by enumerating every behaviour strategy
/// (one action per history of each mover) and keeping the profiles where no
/// mover gains from a one-shot deviation at any history. Choices are indexed
/// by agent; histories by move order.
inline std::set<Choices> spe_outcomes(const cag::SequentialGame& game) {
    const Instance& inst = game.instance;
    const std::size_t n = game.order.size();
    // histories[k]: every prefix of length k
    std::vector<std::vector<Choices>> histories(n + 1);
    histories[0].push_back({});
    for (std::size_t k = 0; k < n; ++k) {
        for (const auto& h : histories[k]) {
            for (std::size_t s = 0; s < inst.agents[game.order[k]].strategies.size(); ++s) {
                histories[k + 1].push_back(h);
                histories[k + 1].back().push_back(s);
            }
        }
    }
    using Plan = std::map<Choices, std::size_t>;
    std::vector<std::vector<Plan>> plans(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t options = inst.agents[game.order[k]].strategies.size();
        std::vector<Plan> built{Plan{}};
        for (const auto& h : histories[k]) {
            std::vector<Plan> next;
            for (const auto& p : built) {
                for (std::size_t s = 0; s < options; ++s) {
                    next.push_back(p);
                    next.back()[h] = s;
                }
            }
            built = std::move(next);
        }
        plans[k] = std::move(built);
    }
    auto play = [&](const std::vector<const Plan*>& sigma, Choices h) {
        while (h.size() < n) h.push_back(sigma[h.size()]->at(h));
        Choices by_agent(n);
        for (std::size_t k = 0; k < n; ++k) by_agent[game.order[k]] = h[k];
        return by_agent;
    };
    std::set<Choices> outcomes;
    std::vector<const Plan*> sigma(n);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k < n) {
            for (const auto& p : plans[k]) {
                sigma[k] = &p;
                rec(k + 1);
            }
            return;
        }
        for (std::size_t m = 0; m < n; ++m) {
            const std::size_t mover = game.order[m];
            for (const auto& h : histories[m]) {
                Choices on = h;
                on.push_back(sigma[m]->at(h));
                const Rational u = utility(inst, play(sigma, on), mover);
                for (std::size_t s = 0; s < inst.agents[mover].strategies.size(); ++s) {
                    Choices dev = h;
                    dev.push_back(s);
                    if (utility(inst, play(sigma, dev), mover) > u) return;
                }
            }
        }
        outcomes.insert(play(sigma, {}));
    };
    rec(0);
    return outcomes;
}

/// Plain backward induction with ties to the smallest strategy index.
inline Choices spe_deterministic(const cag::SequentialGame& game) {
    const Instance& inst = game.instance;
    const std::size_t n = game.order.size();
    std::function<Choices(Choices)> solve = [&](Choices h) -> Choices {
        if (h.size() == n) {
            Choices by_agent(n);
            for (std::size_t k = 0; k < n; ++k) by_agent[game.order[k]] = h[k];
            return by_agent;
        }
        const std::size_t mover = game.order[h.size()];
        Choices best;
        Rational best_u = -1;
        for (std::size_t s = 0; s < inst.agents[mover].strategies.size(); ++s) {
            Choices next = h;
            next.push_back(s);
            Choices out = solve(next);
            const Rational u = utility(inst, out, mover);
            if (u > best_u) {
                best_u = u;
                best = std::move(out);
            }
        }
        return best;
    };
    return solve({});
}

}  // namespace oracle
