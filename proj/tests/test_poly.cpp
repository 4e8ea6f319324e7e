#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hdjac/expr.hpp"
#include "hdjac/poly.hpp"

#include <random>

using namespace hdjac;

namespace {

const std::vector<std::string> XY{"x", "y"};

PolyZ pz(const std::string& s) { return parse_poly_z(s, XY); }
PolyMod pm(const std::string& s, std::uint32_t p) { return parse_poly_mod(s, XY, p); }

PolyZ random_pz(std::mt19937_64& rng, int terms, std::uint32_t deg, int cmax) {
    std::uniform_int_distribution<std::uint32_t> de(0, deg);
    std::uniform_int_distribution<int> dc(-cmax, cmax);
    PolyZ r(2);
    for (int i = 0; i < terms; ++i) r.add_term(Monomial({de(rng), de(rng)}), dc(rng));
    return r;
}

PolyMod random_pm(std::mt19937_64& rng, std::uint32_t p, int terms, std::uint32_t deg) {
    std::uniform_int_distribution<std::uint32_t> de(0, deg);
    std::uniform_int_distribution<std::uint32_t> dc(0, p - 1);
    PolyMod r(2, p);
    std::vector<PolyMod::Term> ts;
    for (int i = 0; i < terms; ++i) ts.emplace_back(Monomial({de(rng), de(rng)}), dc(rng));
    return PolyMod::from_terms(2, p, std::move(ts));
}

}  // namespace

TEST_CASE("ring arithmetic matches hand values") {
    CHECK(pz("x + y") * pz("x - y") == pz("x^2 - y^2"));
    CHECK(pm("x + y", 2) * pm("x + y", 2) == pm("x^2 + y^2", 2));
    CHECK(pm("x - y^3", 3) + pm("y^3", 3) == pm("x", 3));
}

TEST_CASE("arity and modulus mismatches are rejected") {
    PolyZ a = pz("x");
    PolyZ b = parse_poly_z("x", {"x"});
    CHECK_THROWS_AS(a + b, std::invalid_argument);
    CHECK_THROWS_AS(pm("x", 3) + pm("x", 5), std::invalid_argument);
}

TEST_CASE("characteristic-zero derivative keeps multiples of p") {
    CHECK(pz("x - y^3").derivative(1) == pz("-3*y^2"));
    CHECK(pz("x^3").derivative(0) == pz("3*x^2"));
    CHECK(pz("17").derivative(0).is_zero());
    // d/dx x^p is p x^(p-1), nonzero over Z
    CHECK(pz("x^3").derivative(0) == PolyZ::from_terms(2, {{Monomial({2, 0}), BigInt(3)}}));
}

TEST_CASE("canonical lift uses least nonnegative residues") {
    CHECK(lift_canonical(pm("2*x", 3)) == pz("2*x"));
    CHECK(lift_canonical(parse_poly_mod("4*y", XY, 5)) == pz("4*y"));
    CHECK(lift_canonical(PolyMod::zero(2, 3)).is_zero());
}

TEST_CASE("balanced lift maps residues above p/2 to negatives") {
    CHECK(lift_balanced(pm("2*y^3", 3)) == pz("-y^3"));
    CHECK(lift_balanced(pm("x + 2", 5)) == pz("x + 2"));
    CHECK(lift_balanced(pm("x + 3", 5)) == pz("x - 2"));
}

TEST_CASE("reduction mod p") {
    CHECK(reduce_mod_p(pz("6"), 3).is_zero());
    CHECK(reduce_mod_p(pz("3*y^2"), 3).is_zero());
    CHECK(reduce_mod_p(pz("-x"), 2) == pm("x", 2));
}

TEST_CASE("lift/reduce round trip") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
            PolyMod g = random_pm(rng, p, 5, 6);
            CHECK(reduce_mod_p(lift_canonical(g), p) == g);
            CHECK(reduce_mod_p(lift_balanced(g), p) == g);
        }
    }
}

TEST_CASE("minimum p-adic valuation") {
    CHECK(*pz("6*y").min_p_valuation(3) == 1);
    CHECK(*pz("6").min_p_valuation(3) == 1);
    CHECK(!pz("0").min_p_valuation(3).has_value());
    CHECK(*pz("9*x + 3").min_p_valuation(3) == 1);
}

TEST_CASE("exact division by p powers") {
    CHECK(pz("6*y").divide_exact_by_p_power(3, 1) == pz("2*y"));
    CHECK(pz("6").divide_exact_by_p_power(3, 1) == pz("2"));
    CHECK_THROWS_AS(pz("y").divide_exact_by_p_power(3, 1), std::domain_error);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        PolyZ g = random_pz(rng, 4, 5, 40);
        auto v = g.min_p_valuation(3);
        if (!v) continue;
        std::uint64_t e = *v;
        PolyZ q = g.divide_exact_by_p_power(3, e);
        PolyZ back = q;
        for (std::uint64_t j = 0; j < e; ++j) back = back.scaled(3);
        CHECK(back == g);
    }
}

TEST_CASE("substitution is a ring homomorphism") {
    // identity
    std::vector<PolyMod> id{PolyMod::variable(2, 3, 0), PolyMod::variable(2, 3, 1)};
    CHECK(pm("x - y^3", 3).substitute(id) == pm("x - y^3", 3));
    // x -> x + y over F_2
    std::vector<PolyMod> im{pm("x + y", 2), pm("y", 2)};
    CHECK(pm("x*y", 2).substitute(im) == pm("x*y + y^2", 2));
    // x - y^3 at x -> f + s^3, y -> s collapses to f
    std::vector<std::string> FS{"f", "s"};
    std::vector<PolyMod> fs{parse_poly_mod("f + s^3", FS, 3), parse_poly_mod("s", FS, 3)};
    CHECK(pm("x - y^3", 3).substitute(fs) == parse_poly_mod("f", FS, 3));
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 60; ++i) {
        PolyZ a = random_pz(rng, 4, 4, 9), b = random_pz(rng, 4, 4, 9),
              c = random_pz(rng, 4, 4, 9);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        PolyMod am = reduce_mod_p(a, 5), bm = reduce_mod_p(b, 5), cm = reduce_mod_p(c, 5);
        CHECK(am * (bm + cm) == am * bm + am * cm);
        CHECK((am * bm) * cm == am * (bm * cm));
    }
}

TEST_CASE("derivative satisfies the product rule exactly over Z") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 60; ++i) {
        PolyZ f = random_pz(rng, 4, 5, 9), g = random_pz(rng, 4, 5, 9);
        for (std::uint32_t k : {0u, 1u})
            CHECK((f * g).derivative(k) == f.derivative(k) * g + f * g.derivative(k));
    }
}

TEST_CASE("valuation of a product dominates the sum of valuations") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 80; ++i) {
        PolyZ f = random_pz(rng, 3, 4, 27), g = random_pz(rng, 3, 4, 27);
        auto vf = f.min_p_valuation(3), vg = g.min_p_valuation(3), vfg = (f * g).min_p_valuation(3);
        if (!vf || !vg) {
            CHECK(!vfg.has_value());
        } else {
            REQUIRE(vfg.has_value());
            CHECK(*vfg >= *vf + *vg);
        }
    }
}

TEST_CASE("serial and parallel multiplication agree") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 20; ++i) {
        PolyZ a = random_pz(rng, 40, 12, 99), b = random_pz(rng, 40, 12, 99);
        CHECK(mul_serial(a, b) == mul_parallel(a, b));
        PolyMod am = reduce_mod_p(a, 7), bm = reduce_mod_p(b, 7);
        CHECK(mul_serial(am, bm) == mul_parallel(am, bm));
    }
}

TEST_CASE("terms are kept in ascending graded lex order") {
    PolyZ g = pz("y^3 + x + x*y + 1");
    const auto& ts = g.terms();
    for (std::size_t i = 1; i < ts.size(); ++i) CHECK(monomial_less(ts[i - 1].first, ts[i].first));
    CHECK(ts.front().first == Monomial({0, 0}));
    CHECK(ts.back().first == Monomial({0, 3}));  // degree 3 beats degree 2
}
