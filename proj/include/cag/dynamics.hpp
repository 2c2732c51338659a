#pragma once

#include "cag/model.hpp"
#include "cag/rational.hpp"

#include <cstddef>
#include <vector>

namespace cag {

struct BestResponse {
    std::size_t strategy;
    Rational gain;  ///< zero when the current strategy is already optimal
};

/// Utility-maximising strategy for one agent against the rest of the profile.
/// Ties go to the smallest strategy index; the current index wins if it is
/// among the maximisers.
BestResponse best_response(const Instance& inst, const StrategyProfile& profile, AgentIndex agent);

enum class DynamicsMode { epsilon, alpha };
enum class Termination { converged, step_limit };

struct DynamicsConfig {
    DynamicsMode mode = DynamicsMode::epsilon;
    /// epsilon mode: stop at a (1+epsilon)-approximate PNE. Zero means exact.
    Rational epsilon = make_rational(1, 10);
    /// alpha mode: improvement factor. Non-positive selects ln(1 + w_max) + 1.
    double alpha = 0.0;
    /// alpha mode: permit alpha below ln(1 + w_max) + 1 (termination then
    /// rests on max_steps alone).
    bool allow_any_alpha = false;
    std::size_t max_steps = 1'000'000;
};

struct DynamicsStep {
    AgentIndex agent;
    std::size_t from;
    std::size_t to;
    Rational gain;
};

struct DynamicsTrace {
    StrategyProfile start;
    std::vector<DynamicsStep> steps;
    StrategyProfile final;
    Termination termination = Termination::converged;
    /// The exact factor the run certified: 1 + epsilon, or alpha rounded up.
    Rational certified_factor;
};

/// ln(1 + w_max) + 1.
double default_alpha(const Instance& inst);

/// ceil(sum_j v_j * H(m) * m / epsilon), the epsilon-mode step bound.
BigInt epsilon_step_bound(const Instance& inst, const Rational& epsilon);

/// Epsilon mode: each step moves the agent with globally maximal gain (ties by
/// agent, then strategy index) until no agent can improve by a factor above
/// 1 + epsilon. Unit agent weights only.
///
/// Alpha mode: each step takes the first (agent, strategy) in lexicographic
/// order whose utility exceeds alpha times the current one, with alpha
/// rounded up to a rational within 1e-9.
DynamicsTrace run_dynamics(const Instance& inst, const StrategyProfile& start, const DynamicsConfig& cfg);

/// Applies the trace's steps to its start profile.
StrategyProfile replay(const DynamicsTrace& trace);

}  // namespace cag
