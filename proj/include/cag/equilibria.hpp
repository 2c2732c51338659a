#pragma once

#include "cag/model.hpp"
#include "cag/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cag {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

struct SearchOptions {
    /// Maximum number of profiles a brute-force scan may visit.
    std::uint64_t budget = kDefaultBudget;
    /// Worker threads; results are merged in profile order regardless.
    unsigned jobs = 1;
};

/// Product of strategy-space sizes, saturating at UINT64_MAX.
std::uint64_t profile_count(const Instance& inst);

/// Throws DomainError("search-space-too-large") when the scan would exceed the budget.
void require_budget(const Instance& inst, const SearchOptions& opts);

/// True iff no agent has a deviation worth more than alpha times its current
/// utility. alpha = 1 is the exact (weak-inequality) PNE test.
bool is_approx_pne(const Instance& inst, const StrategyProfile& profile, const Rational& alpha);

/// Largest U_i(s', S_-i) / U_i(S) over agents and strategies (at least 1).
/// The profile is an alpha-approximate PNE exactly for alpha at or above it.
Rational max_deviation_ratio(const Instance& inst, const StrategyProfile& profile);

/// Every PNE in lexicographic profile order.
std::vector<StrategyProfile> enumerate_pne(const Instance& inst, const SearchOptions& opts = {});

bool pne_exists(const Instance& inst, const SearchOptions& opts = {});

struct OptimalWelfare {
    std::int64_t welfare = 0;
    StrategyProfile profile;  ///< lexicographically first maximiser
};

OptimalWelfare optimal_social_welfare(const Instance& inst, const SearchOptions& opts = {});

/// Optimal welfare over the welfare of the worst PNE. Throws DomainError("no-pne").
Rational poa(const Instance& inst, const SearchOptions& opts = {});

struct EquilibriumReport {
    std::vector<StrategyProfile> pne;
    std::int64_t opt_welfare = 0;
    StrategyProfile opt_profile;
    std::optional<Rational> poa;  ///< empty when there is no PNE
    std::uint64_t profiles_scanned = 0;
};

/// PNE set, optimum and PoA from a single scan.
EquilibriumReport analyze(const Instance& inst, const SearchOptions& opts = {});

}  // namespace cag
