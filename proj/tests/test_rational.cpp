#include "cag/error.hpp"
#include "cag/rational.hpp"

#include <doctest.h>

using namespace cag;

TEST_CASE("rationals print as p/q in lowest terms") {
    CHECK(to_string(make_rational(6, 4)) == "3/2");
    CHECK(to_string(make_rational(-4, 2)) == "-2/1");
    CHECK(to_string(Rational(0)) == "0/1");
}

TEST_CASE("parse_rational accepts fractions, integers and decimals") {
    CHECK(parse_rational("7/3") == make_rational(7, 3));
    CHECK(parse_rational("-5") == make_rational(-5));
    CHECK(parse_rational("0.125") == make_rational(1, 8));
    CHECK(parse_rational(to_string(make_rational(-22, 7))) == make_rational(-22, 7));
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("abc"), InputError);
    CHECK_THROWS_AS(parse_rational(""), InputError);
}

TEST_CASE("rational_upper_bound stays within the slack above x") {
    for (double x : {0.0, 1.0, 2.0794415416798357, 3.141592653589793, 12.5}) {
        const Rational r = rational_upper_bound(x);
        CHECK(to_double(r) >= x);
        CHECK(to_double(r) - x <= 1e-9);
    }
}

TEST_CASE("RationalSum matches naive rational addition") {
    RationalSum sum;
    Rational naive = 0;
    for (std::int64_t d = 1; d <= 60; ++d) {
        for (std::int64_t n : {1, 3, -2}) {
            sum.add(n, d);
            naive += make_rational(n, d);
        }
    }
    sum.add(make_rational(1, 1000003));
    naive += make_rational(1, 1000003);
    CHECK(sum.value() == naive);
}

TEST_CASE("RationalSum survives machine-integer overflow within a bucket") {
    RationalSum sum;
    Rational naive = 0;
    const std::int64_t big = std::int64_t{1} << 61;
    for (int k = 0; k < 8; ++k) {
        sum.add(big, 3);
        naive += make_rational(big, 3);
    }
    CHECK(sum.value() == naive);
}

TEST_CASE("HarmonicTable holds H(0..k)") {
    HarmonicTable h(4);
    CHECK(h(0) == 0);
    CHECK(h(1) == 1);
    CHECK(h(2) == make_rational(3, 2));
    CHECK(h(4) == make_rational(25, 12));
    CHECK(h.max_k() == 4);
}
