#include "cag/error.hpp"
#include "cag/gadgets.hpp"
#include "cag/potentials.hpp"
#include "cag/random.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace cag;

namespace {

StrategyProfile P(std::vector<std::size_t> c) { return StrategyProfile{std::move(c)}; }

// Harmonic sums written out term by term.
Rational H(std::int64_t k) {
    Rational h = 0;
    for (std::int64_t t = 1; t <= k; ++t) h += make_rational(1, t);
    return h;
}

}  // namespace

TEST_CASE("Rosenthal potential on small cases") {
    Instance single{{{"q1", 1}, {"q2", 1}, {"q3", 1}}, {{"a", 1, {{0, 1, 2}}}}};
    CHECK(rosenthal_potential(single, P({0})) == 3);
    Instance pair{{{"q1", 1}}, {{"a", 1, {{0}}}, {"b", 1, {{0}}}}};
    CHECK(rosenthal_potential(pair, P({0, 0})) == make_rational(3, 2));
    CHECK_THROWS_AS(rosenthal_potential(example1(), P({0, 0, 0})), InputError);
}

TEST_CASE("Rosenthal potential is exact for unilateral deviations") {
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
        Instance inst = gen_random(InstanceKind::s_asymmetric, seed, {3, 5, 3, 1, 1});
        for (auto& n : inst.nodes) n.value = 1 + static_cast<std::int64_t>(seed % 3);
        for (const auto& c : oracle::all_profiles(inst)) {
            for (AgentIndex i = 0; i < inst.agent_count(); ++i) {
                for (std::size_t s = 0; s < inst.agents[i].strategies.size(); ++s) {
                    auto d = c;
                    d[i] = s;
                    REQUIRE(rosenthal_potential(inst, P(d)) - rosenthal_potential(inst, P(c)) ==
                            oracle::utility(inst, d, i) - oracle::utility(inst, c, i));
                }
            }
        }
    }
}

TEST_CASE("Rosenthal potential equals the per-node harmonic sum") {
    const Instance inst = poa_lower_bound(5, 3);
    for (const auto& c : oracle::all_profiles(inst)) {
        Rational expected = 0;
        for (std::size_t j = 0; j < inst.node_count(); ++j) expected += H(oracle::load(inst, c, j));
        CHECK(rosenthal_potential(inst, P(c)) == expected);
        CHECK(rosenthal_potential(inst, P(c), HarmonicTable(inst.agent_count())) == expected);
    }
}

TEST_CASE("two-agent potential") {
    Instance both{{{"q1", 1}}, {{"a", 1, {{0}}}, {"b", 2, {{0}}}}};
    CHECK(two_agent_potential(both, P({0, 0})) == make_rational(7, 3));
    Instance apart{{{"q1", 1}, {"q2", 3}}, {{"a", 1, {{0}}}, {"b", 2, {{0}}}}};
    // q2 is attracted by neither and adds nothing
    CHECK(two_agent_potential(apart, P({0, 0})) == make_rational(7, 3));
    CHECK_THROWS_AS(two_agent_potential(example1(), P({0, 0, 0})), InputError);

    for (std::uint64_t seed = 200; seed < 240; ++seed) {
        const Instance inst = gen_random(InstanceKind::full, seed, {2, 5, 3, 9, 4});
        for (const auto& c : oracle::all_profiles(inst)) {
            for (AgentIndex i = 0; i < 2; ++i) {
                for (std::size_t s = 0; s < inst.agents[i].strategies.size(); ++s) {
                    auto d = c;
                    d[i] = s;
                    const Rational dh = two_agent_potential(inst, P(d)) - two_agent_potential(inst, P(c));
                    const Rational du = oracle::utility(inst, d, i) - oracle::utility(inst, c, i);
                    REQUIRE(dh == Rational(inst.agents[i].weight) * du);
                }
            }
        }
    }
}

TEST_CASE("weighted agents admit no exact potential on the counterexample") {
    const Instance cx = no_potential_counterexample();
    auto u = [&](std::size_t i, std::size_t a, std::size_t b) { return oracle::utility(cx, {a, b}, i); };
    // The cycle (0,0) -> (0,1) -> (1,1) and (0,0) -> (1,0) -> (1,1) must have equal sums
    // for an exact potential to exist.
    const Rational first = (u(1, 0, 0) - u(1, 0, 1)) + (u(0, 0, 1) - u(0, 1, 1));
    const Rational second = (u(0, 0, 0) - u(0, 1, 0)) + (u(1, 1, 0) - u(1, 1, 1));
    CHECK(first == make_rational(5, 3));
    CHECK(second == make_rational(4, 3));
}

TEST_CASE("psi and the log potential") {
    CHECK(psi(0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(psi(1) == 0.0);
    CHECK(std::abs(psi(2) - 0.6931471805599453) < 1e-12);
    Instance heavy{{{"q1", 1}}, {{"a", 5, {{0}}}}};
    CHECK(std::abs(log_potential(heavy, P({0})) - std::log(5.0)) < 1e-12);
    const double expected = 2 * std::log(6.0) + std::log(4.0);
    CHECK(std::abs(log_potential(example1(), P({0, 0, 0})) - expected) < 1e-12);
    CHECK(log_potential_error_bound(example1()) > 0);
}

TEST_CASE("alpha-improving deviations raise the log potential") {
    for (std::uint64_t seed = 300; seed < 340; ++seed) {
        const Instance inst = gen_random(InstanceKind::full, seed, {3, 5, 3, 6, 4});
        double w_max = 0;
        for (const auto& a : inst.agents) w_max = std::max<double>(w_max, static_cast<double>(a.weight));
        const Rational alpha = rational_upper_bound(std::log(1 + w_max) + 1);
        for (const auto& c : oracle::all_profiles(inst)) {
            for (AgentIndex i = 0; i < inst.agent_count(); ++i) {
                for (std::size_t s = 0; s < inst.agents[i].strategies.size(); ++s) {
                    auto d = c;
                    d[i] = s;
                    if (oracle::utility(inst, d, i) > alpha * oracle::utility(inst, c, i)) {
                        REQUIRE(log_potential(inst, P(d)) > log_potential(inst, P(c)));
                    }
                }
            }
        }
    }
}
