#pragma once

#include "cag/model.hpp"
#include "cag/rational.hpp"

#include <cstdint>

namespace cag {

/// Rosenthal potential sum_j v_j * H(c(j)). Exact potential when every agent
/// has unit weight; throws InputError("weighted-agents-unsupported") otherwise.
Rational rosenthal_potential(const Instance& inst, const StrategyProfile& profile);

/// Same, reusing a caller-owned table (must reach the profile's maximum load).
Rational rosenthal_potential(const Instance& inst, const StrategyProfile& profile,
                             const HarmonicTable& harmonic);

/// Potential for two weighted agents: H(S') - H(S) = w_i (U_i(S') - U_i(S))
/// for any unilateral deviation of agent i.
Rational two_agent_potential(const Instance& inst, const StrategyProfile& profile);

/// ln(max(1/e, x)): -1 at zero, ln(x) for x >= 1.
double psi(std::int64_t x);

/// sum_j v_j * psi(c(j)). Floating point; absolute error stays below
/// log_potential_error_bound(inst).
double log_potential(const Instance& inst, const StrategyProfile& profile);

double log_potential_error_bound(const Instance& inst);

}  // namespace cag
