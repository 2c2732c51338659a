#include "cag/equilibria.hpp"

#include "cag/error.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

namespace cag {

std::uint64_t profile_count(const Instance& inst) {
    std::uint64_t total = 1;
    for (const auto& a : inst.agents) {
        std::uint64_t k = a.strategies.size();
        if (k == 0) return 0;
        if (total > std::numeric_limits<std::uint64_t>::max() / k) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        total *= k;
    }
    return total;
}

void require_budget(const Instance& inst, const SearchOptions& opts) {
    if (profile_count(inst) > opts.budget) {
        throw DomainError("search-space-too-large");
    }
}

namespace {

bool profitable_deviation_exists(const Instance& inst, const ProfileLoads& state, AgentIndex i,
                                 const Rational& alpha) {
    const auto& strategies = inst.agents[i].strategies;
    if (strategies.size() < 2) return false;
    const std::size_t current = state.profile().choices[i];
    const Rational limit = alpha * state.utility(i);
    for (std::size_t s = 0; s < strategies.size(); ++s) {
        if (s != current && state.deviation_utility(i, s) > limit) return true;
    }
    return false;
}

bool is_pne(const Instance& inst, const ProfileLoads& state) {
    static const Rational one(1);
    for (AgentIndex i = 0; i < inst.agent_count(); ++i) {
        if (profitable_deviation_exists(inst, state, i, one)) return false;
    }
    return true;
}

StrategyProfile decode(const Instance& inst, std::uint64_t index) {
    StrategyProfile p{std::vector<std::size_t>(inst.agent_count(), 0)};
    for (std::size_t k = inst.agent_count(); k-- > 0;) {
        const std::uint64_t radix = inst.agents[k].strategies.size();
        p.choices[k] = static_cast<std::size_t>(index % radix);
        index /= radix;
    }
    return p;
}

/// Visits every profile in lexicographic order, split into contiguous chunks
/// across workers. `visit(acc, state)` returns false to stop all workers.
template <class Acc, class Visit>
std::vector<Acc> scan_profiles(const Instance& inst, const SearchOptions& opts, Visit visit) {
    require_budget(inst, opts);
    const std::uint64_t total = profile_count(inst);
    const unsigned workers =
        static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(opts.jobs, total)));
    std::vector<Acc> results(workers);
    if (total == 0) return results;
    std::atomic<bool> stop{false};

    auto run_chunk = [&](unsigned w) {
        const std::uint64_t begin = total / workers * w + std::min<std::uint64_t>(w, total % workers);
        const std::uint64_t end = begin + total / workers + (w < total % workers ? 1 : 0);
        ProfileLoads state(inst, decode(inst, begin));
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            if (stop.load(std::memory_order_relaxed)) return;
            if (!visit(results[w], state)) {
                stop = true;
                return;
            }
            if (idx + 1 == end) break;
            // Odometer step: last agent varies fastest.
            for (std::size_t k = inst.agent_count(); k-- > 0;) {
                const std::size_t next = state.profile().choices[k] + 1;
                if (next < inst.agents[k].strategies.size()) {
                    state.move(k, next);
                    break;
                }
                state.move(k, 0);
            }
        }
    };

    if (workers == 1) {
        run_chunk(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_chunk, w);
    }
    return results;
}

}  // namespace

bool is_approx_pne(const Instance& inst, const StrategyProfile& profile, const Rational& alpha) {
    if (alpha < 1) {
        throw InputError("alpha must be at least 1");
    }
    ProfileLoads state(inst, profile);
    for (AgentIndex i = 0; i < inst.agent_count(); ++i) {
        if (profitable_deviation_exists(inst, state, i, alpha)) return false;
    }
    return true;
}

Rational max_deviation_ratio(const Instance& inst, const StrategyProfile& profile) {
    ProfileLoads state(inst, profile);
    Rational worst(1);
    for (AgentIndex i = 0; i < inst.agent_count(); ++i) {
        const Rational u = state.utility(i);
        if (u <= 0) {
            throw InputError("max_deviation_ratio needs positive utilities");
        }
        for (std::size_t s = 0; s < inst.agents[i].strategies.size(); ++s) {
            worst = std::max(worst, state.deviation_utility(i, s) / u);
        }
    }
    return worst;
}

std::vector<StrategyProfile> enumerate_pne(const Instance& inst, const SearchOptions& opts) {
    auto parts = scan_profiles<std::vector<StrategyProfile>>(
        inst, opts, [&](std::vector<StrategyProfile>& found, const ProfileLoads& state) {
            if (is_pne(inst, state)) found.push_back(state.profile());
            return true;
        });
    std::vector<StrategyProfile> all;
    for (auto& part : parts) all.insert(all.end(), part.begin(), part.end());
    return all;
}

bool pne_exists(const Instance& inst, const SearchOptions& opts) {
    auto parts = scan_profiles<char>(inst, opts, [&](char& found, const ProfileLoads& state) {
        found = is_pne(inst, state);
        return !found;
    });
    return std::any_of(parts.begin(), parts.end(), [](char b) { return b != 0; });
}

OptimalWelfare optimal_social_welfare(const Instance& inst, const SearchOptions& opts) {
    struct Best {
        std::int64_t welfare = -1;
        StrategyProfile profile;
    };
    auto parts = scan_profiles<Best>(inst, opts, [](Best& best, const ProfileLoads& state) {
        const std::int64_t sw = state.social_welfare();
        if (sw > best.welfare) best = {sw, state.profile()};
        return true;
    });
    Best best;
    for (auto& part : parts) {
        if (part.welfare > best.welfare) best = std::move(part);
    }
    if (best.welfare < 0) {
        throw InputError("instance has an agent without strategies");
    }
    return {best.welfare, std::move(best.profile)};
}

EquilibriumReport analyze(const Instance& inst, const SearchOptions& opts) {
    struct Partial {
        std::vector<StrategyProfile> pne;
        std::int64_t worst_pne_welfare = std::numeric_limits<std::int64_t>::max();
        std::int64_t best = -1;
        StrategyProfile best_profile;
        std::uint64_t scanned = 0;
    };
    auto parts = scan_profiles<Partial>(inst, opts, [&](Partial& acc, const ProfileLoads& state) {
        ++acc.scanned;
        const std::int64_t sw = state.social_welfare();
        if (sw > acc.best) {
            acc.best = sw;
            acc.best_profile = state.profile();
        }
        if (is_pne(inst, state)) {
            acc.pne.push_back(state.profile());
            acc.worst_pne_welfare = std::min(acc.worst_pne_welfare, sw);
        }
        return true;
    });
    EquilibriumReport report;
    report.opt_welfare = -1;
    std::int64_t worst = std::numeric_limits<std::int64_t>::max();
    for (auto& part : parts) {
        report.pne.insert(report.pne.end(), part.pne.begin(), part.pne.end());
        report.profiles_scanned += part.scanned;
        worst = std::min(worst, part.worst_pne_welfare);
        if (part.best > report.opt_welfare) {
            report.opt_welfare = part.best;
            report.opt_profile = std::move(part.best_profile);
        }
    }
    if (report.opt_welfare < 0) {
        throw InputError("instance has an agent without strategies");
    }
    if (!report.pne.empty()) {
        report.poa = make_rational(report.opt_welfare, worst);
    }
    return report;
}

Rational poa(const Instance& inst, const SearchOptions& opts) {
    auto report = analyze(inst, opts);
    if (!report.poa) {
        throw DomainError("no-pne");
    }
    return *report.poa;
}

}  // namespace cag
