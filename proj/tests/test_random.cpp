#include "cag/error.hpp"
#include "cag/io.hpp"
#include "cag/random.hpp"

#include <doctest.h>

using namespace cag;

TEST_CASE("same seed, same instance") {
    for (auto kind : {InstanceKind::symmetric, InstanceKind::s_asymmetric, InstanceKind::w_asymmetric, InstanceKind::full}) {
        CHECK(dump(instance_to_json(gen_random(kind, 42))) == dump(instance_to_json(gen_random(kind, 42))));
    }
    CHECK_FALSE(gen_random(InstanceKind::full, 1) == gen_random(InstanceKind::full, 2));
}

TEST_CASE("kinds produce their symmetry class") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const RandomSizes sizes{2 + static_cast<int>(seed % 3), 2 + static_cast<int>(seed % 4), 1 + static_cast<int>(seed % 3), 4, 3};
        const Instance sym = gen_random(InstanceKind::symmetric, seed, sizes);
        CHECK(classify_symmetry(sym).symmetric());
        CHECK(validate_instance(sym).ok());
        const Instance w = gen_random(InstanceKind::w_asymmetric, seed, sizes);
        CHECK(classify_symmetry(w) == SymmetryClass{false, true, false});
        const Instance s = gen_random(InstanceKind::s_asymmetric, seed, sizes);
        CHECK(classify_symmetry(s) == SymmetryClass{true, false, false});
        const Instance f = gen_random(InstanceKind::full, seed, sizes);
        CHECK(classify_symmetry(f).asymmetric_strategy_spaces);
        CHECK(validate_instance(f).ok());
        CHECK(validate_instance(f).warnings.empty());
    }
}

TEST_CASE("kind names") {
    CHECK(parse_kind("s-asymmetric") == InstanceKind::s_asymmetric);
    CHECK(to_string(InstanceKind::w_asymmetric) == "w-asymmetric");
    CHECK_THROWS_AS(parse_kind("round"), InputError);
    CHECK_THROWS_AS(gen_random(InstanceKind::full, 0, {1, 3, 2, 3, 3}), InputError);
}

TEST_CASE("draws stay in range") {
    Draw draw(9);
    for (int k = 0; k < 1000; ++k) {
        const auto v = draw(-3, 4);
        CHECK(v >= -3);
        CHECK(v <= 4);
    }
}
