#include "cag/error.hpp"
#include "cag/gadgets.hpp"
#include "cag/model.hpp"
#include "cag/random.hpp"
#include "oracle.hpp"

#include <doctest.h>

using namespace cag;

namespace {

StrategyProfile P(std::vector<std::size_t> c) { return StrategyProfile{std::move(c)}; }

}  // namespace

TEST_CASE("validation") {
    SUBCASE("Example 1 is clean") {
        const auto r = validate_instance(example1());
        CHECK(r.ok());
        CHECK(r.warnings.empty());
    }
    SUBCASE("minimal instance") {
        Instance inst{{{"q1", 1}}, {{"a", 1, {{0}}}}};
        CHECK(validate_instance(inst).ok());
    }
    SUBCASE("empty strategy") {
        Instance inst{{{"q1", 1}}, {{"a", 1, {{}}}}};
        const auto r = validate_instance(inst);
        REQUIRE_FALSE(r.ok());
        CHECK(r.errors.front().find("empty strategy") != std::string::npos);
    }
    SUBCASE("bad values, weights and indices") {
        Instance inst{{{"q1", 0}, {"q1", 2}}, {{"a", -1, {{0, 5}}}, {"a", 1, {{1, 0}}}}};
        const auto r = validate_instance(inst);
        CHECK(r.errors.size() >= 5);
    }
    SUBCASE("uncovered node is a warning") {
        Instance inst{{{"q1", 1}, {"q2", 1}}, {{"a", 1, {{0}}}}};
        const auto r = validate_instance(inst);
        CHECK(r.ok());
        CHECK(r.warnings.size() == 1);
    }
}

TEST_CASE("loads on Example 1") {
    const Instance e = example1();
    CHECK(load(e, P({0, 0, 0}), 0) == 6);
    CHECK(load(example1_minus_dummy(), P({0, 1}), 1) == 5);
    Instance lonely{{{"q1", 1}, {"q2", 1}}, {{"a", 1, {{0}}}}};
    CHECK(load(lonely, P({0}), 1) == 0);
}

TEST_CASE("utilities on Example 1") {
    CHECK(utility(example1(), P({0, 0, 0}), 0) == make_rational(7, 3));
    CHECK(utility(example1(), P({0, 0, 0}), 1) == make_rational(4, 3));
    CHECK(utility(example1_minus_dummy(), P({0, 0}), 0) == make_rational(13, 5));
    Instance solo{{{"q1", 3}, {"q2", 4}}, {{"a", 7, {{0, 1}}}}};
    CHECK(utility(solo, P({0}), 0) == 7);
}

TEST_CASE("social welfare") {
    CHECK(social_welfare(example1(), P({0, 0, 0})) == 6);
    Instance one{{{"q1", 5}}, {{"a", 1, {{0}}}}};
    CHECK(social_welfare(one, P({0})) == 5);
    CHECK(social_welfare(spoa_two_agent().instance, P({0, 0})) == 2);
    // utilities share every attracted node's value
    const Instance e = example1();
    Rational total = 0;
    for (AgentIndex i = 0; i < 3; ++i) total += utility(e, P({1, 0, 0}), i);
    CHECK(total == social_welfare(e, P({1, 0, 0})));
}

TEST_CASE("symmetry classification") {
    CHECK(classify_symmetry(example1()) == SymmetryClass{true, true, true});
    CHECK(classify_symmetry(poa_lower_bound(4, 2)).symmetric());
    Instance distinct{{{"q1", 1}, {"q2", 1}}, {{"a", 1, {{0}}}, {"b", 1, {{1}}}}};
    CHECK(classify_symmetry(distinct) == SymmetryClass{true, false, false});
    Instance reordered{{{"q1", 1}, {"q2", 1}}, {{"a", 1, {{0}, {1}}}, {"b", 1, {{1}, {0}}}}};
    CHECK_FALSE(classify_symmetry(reordered).asymmetric_strategy_spaces);
}

TEST_CASE("check_profile rejects bad profiles") {
    CHECK_THROWS_AS(check_profile(example1(), P({0, 0})), InputError);
    CHECK_THROWS_AS(check_profile(example1(), P({0, 2, 0})), InputError);
    CHECK_NOTHROW(check_profile(example1(), P({1, 1, 0})));
}

TEST_CASE("incremental loads agree with the definition on random instances") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Instance inst = gen_random(InstanceKind::full, seed, {3, 5, 3, 5, 4});
        ProfileLoads state(inst, zero_profile(inst));
        for (const auto& c : oracle::all_profiles(inst)) {
            for (AgentIndex i = 0; i < inst.agent_count(); ++i) state.move(i, c[i]);
            for (AgentIndex i = 0; i < inst.agent_count(); ++i) {
                REQUIRE(state.utility(i) == oracle::utility(inst, c, i));
                REQUIRE(utility(inst, P(c), i) == oracle::utility(inst, c, i));
                for (std::size_t s = 0; s < inst.agents[i].strategies.size(); ++s) {
                    auto d = c;
                    d[i] = s;
                    REQUIRE(state.deviation_utility(i, s) == oracle::utility(inst, d, i));
                }
            }
            REQUIRE(state.social_welfare() == oracle::welfare(inst, c));
        }
    }
}
