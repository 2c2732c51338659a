#include "cag/error.hpp"
#include "cag/gadgets.hpp"
#include "cag/io.hpp"
#include "cag/random.hpp"

#include <doctest.h>

using namespace cag;

TEST_CASE("instance round trip") {
    for (const Instance& inst : {example1(), poa_lower_bound(5, 3), gen_random(InstanceKind::full, 7, {4, 6, 3, 5, 4})}) {
        CHECK(parse_instance(dump(instance_to_json(inst))) == inst);
    }
}

TEST_CASE("instance parsing") {
    const std::string text = R"({"nodes": [{"id": "a", "value": 2}, {"id": "b", "value": 1}],
        "agents": [{"id": "x", "strategies": [["b", "a"]]}]})";
    const Instance inst = parse_instance(text);
    CHECK(inst.agents[0].weight == 1);
    CHECK(inst.agents[0].strategies[0] == Strategy{0, 1});

    CHECK_THROWS_AS(parse_instance("{"), InputError);
    CHECK_THROWS_AS(parse_instance(R"({"nodes": [{"id": "a"}], "agents": []})"), InputError);
    CHECK_THROWS_AS(parse_instance(R"({"nodes": [], "agents": [{"id": "x", "strategies": [["zz"]]}]})"), InputError);
    const std::string dup = "{\"nodes\": [\n{\"id\": \"a\", \"value\": 1},\n{\"id\": \"a\", \"value\": 1}\n], \"agents\": []}";
    try {
        parse_instance(dup);
        FAIL("duplicate id accepted");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    const Instance empty = parse_instance(R"({"nodes": [{"id": "a", "value": 1}], "agents": [{"id": "x", "strategies": [[]]}]})");
    CHECK_FALSE(validate_instance(empty).ok());
}

TEST_CASE("profiles, games and reports round trip") {
    const StrategyProfile p{{1, 0, 2}};
    CHECK(parse_profile(dump(profile_to_json(p))) == p);

    SequentialGame game = spoa_family(3);
    game.order = {2, 0, 1};
    CHECK(parse_game(dump(game_to_json(game))) == game);
    const std::string no_order = dump(instance_to_json(example1()));
    CHECK(parse_game(no_order).order == std::vector<AgentIndex>{0, 1, 2});

    for (const Instance& inst : {example1(), poa_lower_bound(4, 2)}) {
        const EquilibriumReport r = analyze(inst);
        const EquilibriumReport back = report_from_json(report_to_json(r));
        CHECK(back.pne == r.pne);
        CHECK(back.opt_welfare == r.opt_welfare);
        CHECK(back.opt_profile == r.opt_profile);
        CHECK(back.poa == r.poa);
        CHECK(back.profiles_scanned == r.profiles_scanned);
    }
    CHECK(report_to_json(analyze(example1()))["poa"] == "undefined-no-pne");
    CHECK(report_to_json(analyze(poa_lower_bound(4, 2)))["poa"] == "3/2");
}

TEST_CASE("reduction inputs round trip") {
    const CutGraph g{3, {{0, 1, 2}, {1, 2, 5}}};
    const CutGraph back = parse_graph(dump(graph_to_json(g)));
    CHECK(back.vertices == 3);
    REQUIRE(back.edges.size() == 2);
    CHECK(back.edges[1].w == 5);

    const ThreeDMInstance tdm{2, {{0, 1, 1}, {1, 0, 0}}};
    CHECK(parse_3dm(dump(tdm_to_json(tdm))).triples == tdm.triples);

    const TqbfFormula f{3, {{1, -2, 3}}};
    CHECK(parse_tqbf(dump(tqbf_to_json(f))).clauses == f.clauses);
    CHECK_THROWS_AS(parse_tqbf(R"({"vars": 3, "clauses": [[1, 2]]})"), InputError);
}

TEST_CASE("serialized rationals are p/q strings") {
    const auto spe = spe_to_json(spe_solve(spoa_two_agent(), SpeMode::exhaustive));
    CHECK(spe["outcomes"][0]["utilities"][0] == "1/1");
    DynamicsStep step{1, 0, 2, make_rational(1, 15)};
    const Json s = step_to_json(0, step);
    CHECK(s["step"] == 1);
    CHECK(s["gain"] == "1/15");
}
