#include "cag/dynamics.hpp"

#include "cag/error.hpp"

#include <cmath>

namespace cag {

BestResponse best_response(const Instance& inst, const StrategyProfile& profile, AgentIndex agent) {
    if (agent >= inst.agent_count()) {
        throw InputError("agent index " + std::to_string(agent) + " out of range");
    }
    ProfileLoads state(inst, profile);
    const std::size_t current = profile.choices[agent];
    const Rational base = state.utility(agent);
    BestResponse best{current, Rational(0)};
    Rational best_value = base;
    for (std::size_t s = 0; s < inst.agents[agent].strategies.size(); ++s) {
        if (s == current) continue;
        Rational u = state.deviation_utility(agent, s);
        if (u > best_value) {
            best_value = u;
            best.strategy = s;
        }
    }
    best.gain = best_value - base;
    return best;
}

double default_alpha(const Instance& inst) {
    return std::log1p(static_cast<double>(max_weight(inst))) + 1.0;
}

BigInt epsilon_step_bound(const Instance& inst, const Rational& epsilon) {
    if (epsilon <= 0) {
        throw InputError("epsilon step bound needs epsilon > 0");
    }
    const auto m = static_cast<std::int64_t>(inst.agent_count());
    HarmonicTable h(static_cast<std::size_t>(m));
    Rational bound = Rational(total_value(inst)) * h(static_cast<std::size_t>(m)) * Rational(m) / epsilon;
    BigInt q = numerator(bound) / denominator(bound);
    if (Rational(q) < bound) q += 1;
    return q;
}

namespace {

DynamicsTrace run_epsilon(const Instance& inst, const StrategyProfile& start, const DynamicsConfig& cfg) {
    for (const auto& a : inst.agents) {
        if (a.weight != 1) {
            throw InputError("epsilon mode requires unit agent weights");
        }
    }
    if (cfg.epsilon < 0) {
        throw InputError("epsilon must be non-negative");
    }
    const Rational factor = 1 + cfg.epsilon;
    DynamicsTrace trace{start, {}, start, Termination::converged, factor};
    ProfileLoads state(inst, start);
    for (;;) {
        bool approx_equilibrium = true;
        bool have_best = false;
        DynamicsStep best{};
        for (AgentIndex i = 0; i < inst.agent_count(); ++i) {
            const std::size_t current = state.profile().choices[i];
            const Rational u = state.utility(i);
            const Rational limit = factor * u;
            for (std::size_t s = 0; s < inst.agents[i].strategies.size(); ++s) {
                if (s == current) continue;
                Rational dev = state.deviation_utility(i, s);
                if (dev > limit) approx_equilibrium = false;
                Rational gain = dev - u;
                if (!have_best || gain > best.gain) {
                    best = {i, current, s, gain};
                    have_best = true;
                }
            }
        }
        if (approx_equilibrium) break;
        if (trace.steps.size() >= cfg.max_steps) {
            trace.termination = Termination::step_limit;
            break;
        }
        state.move(best.agent, best.to);
        trace.steps.push_back(std::move(best));
    }
    trace.final = state.profile();
    return trace;
}

DynamicsTrace run_alpha(const Instance& inst, const StrategyProfile& start, const DynamicsConfig& cfg) {
    const double floor_alpha = default_alpha(inst);
    const double alpha = cfg.alpha > 0 ? cfg.alpha : floor_alpha;
    if (alpha < 1.0) {
        throw InputError("alpha must be at least 1");
    }
    if (!cfg.allow_any_alpha && alpha < floor_alpha) {
        throw InputError("alpha below ln(1 + w_max) + 1 needs allow_any_alpha");
    }
    const Rational factor = rational_upper_bound(alpha);
    DynamicsTrace trace{start, {}, start, Termination::converged, factor};
    ProfileLoads state(inst, start);
    for (;;) {
        bool moved = false;
        for (AgentIndex i = 0; i < inst.agent_count() && !moved; ++i) {
            const std::size_t current = state.profile().choices[i];
            const Rational u = state.utility(i);
            const Rational limit = factor * u;
            for (std::size_t s = 0; s < inst.agents[i].strategies.size(); ++s) {
                if (s == current) continue;
                Rational dev = state.deviation_utility(i, s);
                if (dev > limit) {
                    if (trace.steps.size() >= cfg.max_steps) {
                        trace.termination = Termination::step_limit;
                        trace.final = state.profile();
                        return trace;
                    }
                    trace.steps.push_back({i, current, s, dev - u});
                    state.move(i, s);
                    moved = true;
                    break;
                }
            }
        }
        if (!moved) break;
    }
    trace.final = state.profile();
    return trace;
}

}  // namespace

DynamicsTrace run_dynamics(const Instance& inst, const StrategyProfile& start, const DynamicsConfig& cfg) {
    check_profile(inst, start);
    if (cfg.max_steps == 0) {
        throw InputError("max_steps must be positive");
    }
    return cfg.mode == DynamicsMode::epsilon ? run_epsilon(inst, start, cfg) : run_alpha(inst, start, cfg);
}

StrategyProfile replay(const DynamicsTrace& trace) {
    StrategyProfile p = trace.start;
    for (const auto& step : trace.steps) {
        if (step.agent >= p.choices.size() || p.choices[step.agent] != step.from) {
            throw InputError("trace step does not match the replayed profile");
        }
        p.choices[step.agent] = step.to;
    }
    return p;
}

}  // namespace cag
