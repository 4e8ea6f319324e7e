#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hdjac/expr.hpp"

#include <random>

using namespace hdjac;

namespace {
const std::vector<std::string> XY{"x", "y"};
}

TEST_CASE("parsing the running examples") {
    CHECK(parse_poly_mod("x - y^3", XY, 3) ==
          parse_poly_mod("x + 2*y^3", XY, 3));
    CHECK(parse_poly_mod("x*y", XY, 2).terms().size() == 1);
    CHECK(parse_poly_mod("x + x", XY, 2).is_zero());
}

TEST_CASE("grammar corners") {
    CHECK(parse_poly_z("-x^2", XY) == -parse_poly_z("x^2", XY));
    CHECK(parse_poly_z("-x*y", XY) == -parse_poly_z("x*y", XY));
    CHECK(parse_poly_z("(x + y)^2", XY) == parse_poly_z("x^2 + 2*x*y + y^2", XY));
    CHECK(parse_poly_z("2^3", XY) == parse_poly_z("8", XY));
    CHECK(parse_poly_z("x^0", XY) == parse_poly_z("1", XY));
    CHECK(parse_poly_z("  x  +  y ", XY) == parse_poly_z("x+y", XY));
    CHECK(parse_poly_z("123456789012345678901234567890", XY).terms()[0].second ==
          BigInt("123456789012345678901234567890"));
}

TEST_CASE("errors carry byte offsets") {
    CHECK_THROWS_AS(parse_poly_z("", XY), ParseError);
    CHECK_THROWS_AS(parse_poly_z("x + z", XY), ParseError);  // unknown variable
    CHECK_THROWS_AS(parse_poly_z("xy", XY), ParseError);     // no implicit multiplication
    CHECK_THROWS_AS(parse_poly_z("x^", XY), ParseError);
    CHECK_THROWS_AS(parse_poly_z("x^y", XY), ParseError);
    CHECK_THROWS_AS(parse_poly_z("x +", XY), ParseError);
    CHECK_THROWS_AS(parse_poly_z("(x", XY), ParseError);
    try {
        parse_poly_z("x + q", XY);
    } catch (const ParseError& e) {
        CHECK(e.offset == 4);
    }
}

TEST_CASE("formatting conventions") {
    CHECK(format_poly(parse_poly_mod("x - y^3", XY, 3), XY) == "x + 2*y^3");
    CHECK(format_poly(PolyMod::zero(2, 3), XY) == "0");
    CHECK(format_poly(PolyZ::zero(2), XY) == "0");
    CHECK(format_poly(parse_poly_z("x - y^3", XY), XY) == "x - y^3");
    CHECK(format_poly(parse_poly_z("-x - 1", XY), XY) == "-1 - x");
    CHECK(format_poly(parse_poly_z("3*x*y^2", XY), XY) == "3*x*y^2");
}

TEST_CASE("format then parse is the identity on random polynomials") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<std::uint32_t> de(0, 7);
    std::uniform_int_distribution<int> dc(-50, 50);
    for (int i = 0; i < 500; ++i) {
        PolyZ g(2);
        for (int t = 0; t < 5; ++t) g.add_term(Monomial({de(rng), de(rng)}), dc(rng));
        CHECK(parse_poly_z(format_poly(g, XY), XY) == g);
        PolyMod gm = reduce_mod_p(g, 5);
        CHECK(parse_poly_mod(format_poly(gm, XY), XY, 5) == gm);
    }
}

TEST_CASE("variable list parsing") {
    CHECK(split_var_names("x,y") == std::vector<std::string>{"x", "y"});
    CHECK(split_var_names("a1, b2 ,c3") == std::vector<std::string>{"a1", "b2", "c3"});
    CHECK_THROWS_AS(split_var_names("x,,y"), std::invalid_argument);
    CHECK_THROWS_AS(split_var_names("1x"), std::invalid_argument);
}
