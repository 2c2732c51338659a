#include "cag/dynamics.hpp"
#include "cag/equilibria.hpp"
#include "cag/error.hpp"
#include "cag/gadgets.hpp"
#include "cag/random.hpp"
#include "oracle.hpp"

#include <doctest.h>

using namespace cag;

namespace {

StrategyProfile P(std::vector<std::size_t> c) { return StrategyProfile{std::move(c)}; }

}  // namespace

TEST_CASE("best response on Example 1") {
    const auto br = best_response(example1(), P({0, 0, 0}), 0);
    CHECK(br.strategy == 1);
    CHECK(br.gain == make_rational(1, 15));
    const auto stay = best_response(example1_minus_dummy(), P({0, 1}), 1);
    CHECK(stay.strategy == 1);
    CHECK(stay.gain == 0);
}

TEST_CASE("best response agrees with brute force") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Instance inst = gen_random(InstanceKind::full, seed, {3, 5, 4, 4, 3});
        for (const auto& c : oracle::all_profiles(inst)) {
            for (AgentIndex i = 0; i < inst.agent_count(); ++i) {
                Rational best = oracle::utility(inst, c, i);
                for (std::size_t s = 0; s < inst.agents[i].strategies.size(); ++s) {
                    auto d = c;
                    d[i] = s;
                    best = std::max(best, oracle::utility(inst, d, i));
                }
                const auto br = best_response(inst, P(c), i);
                auto d = c;
                d[i] = br.strategy;
                REQUIRE(oracle::utility(inst, d, i) == best);
                REQUIRE(br.gain == best - oracle::utility(inst, c, i));
            }
        }
    }
}

TEST_CASE("epsilon dynamics") {
    SUBCASE("already at a PNE") {
        const Instance inst = poa_lower_bound(4, 2);
        const auto trace = run_dynamics(inst, P({0, 0}), {});
        CHECK(trace.steps.empty());
        CHECK(trace.termination == Termination::converged);
    }
    SUBCASE("an uncovered valuable node attracts an agent") {
        Instance inst{{{"q1", 1}, {"q2", 1}}, {{"a", 1, {{0}, {1}}}, {"b", 1, {{0}, {1}}}}};
        const auto trace = run_dynamics(inst, P({0, 0}), {});
        REQUIRE(trace.steps.size() == 1);
        CHECK(trace.steps[0].gain == make_rational(1, 2));
        CHECK(oracle::is_pne(inst, trace.final.choices));
    }
    SUBCASE("random symmetric instance stays within the step bound") {
        const Instance inst = gen_random(InstanceKind::symmetric, 31, {4, 8, 4, 1, 1});
        DynamicsConfig cfg;
        cfg.epsilon = make_rational(1, 2);
        const auto trace = run_dynamics(inst, zero_profile(inst), cfg);
        CHECK(trace.termination == Termination::converged);
        CHECK(BigInt(trace.steps.size()) <= epsilon_step_bound(inst, cfg.epsilon));
        CHECK(is_approx_pne(inst, trace.final, make_rational(3, 2)));
        CHECK(replay(trace) == trace.final);
    }
    SUBCASE("weighted agents are rejected") {
        CHECK_THROWS_AS(run_dynamics(example1(), P({0, 0, 0}), {}), InputError);
    }
    SUBCASE("step limit") {
        const std::vector<Strategy> space{{0}, {1}, {2}};
        Instance inst{{{"q1", 1}, {"q2", 1}, {"q3", 1}}, {{"a", 1, space}, {"b", 1, space}, {"c", 1, space}}};
        DynamicsConfig cfg;
        cfg.max_steps = 1;
        const auto trace = run_dynamics(inst, P({0, 0, 0}), cfg);
        CHECK(trace.termination == Termination::step_limit);
        CHECK(trace.steps.size() == 1);
        cfg.max_steps = 0;
        CHECK_THROWS_AS(run_dynamics(inst, P({0, 0, 0}), cfg), InputError);
    }
}

TEST_CASE("step bound formula") {
    // ceil(sum v * H(m) * m / eps): values 1+1+1, m = 2, eps = 1/10 -> 3 * 3/2 * 2 * 10 = 90
    const Instance inst = poa_lower_bound(3, 2);
    CHECK(epsilon_step_bound(inst, make_rational(1, 10)) == 90);
    CHECK(epsilon_step_bound(inst, make_rational(7, 1)) == 2);
}

TEST_CASE("alpha dynamics") {
    for (std::uint64_t seed = 50; seed < 80; ++seed) {
        const Instance inst = gen_random(InstanceKind::full, seed, {3, 6, 3, 6, 4});
        DynamicsConfig cfg;
        cfg.mode = DynamicsMode::alpha;
        const auto trace = run_dynamics(inst, zero_profile(inst), cfg);
        REQUIRE(trace.termination == Termination::converged);
        CHECK(trace.certified_factor >= Rational(1));
        CHECK(to_double(trace.certified_factor) - default_alpha(inst) <= 1e-9);
        CHECK(is_approx_pne(inst, trace.final, trace.certified_factor));
        for (const auto& step : trace.steps) CHECK(step.gain > 0);
    }
    DynamicsConfig low;
    low.mode = DynamicsMode::alpha;
    low.alpha = 1.5;
    CHECK_THROWS_AS(run_dynamics(example1(), P({0, 0, 0}), low), InputError);
    low.allow_any_alpha = true;
    CHECK_NOTHROW(run_dynamics(example1(), P({0, 0, 0}), low));
}
