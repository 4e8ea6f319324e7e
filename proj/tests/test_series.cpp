#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hdjac/expr.hpp"
#include "hdjac/series.hpp"

#include <random>

using namespace hdjac;

namespace {

const std::vector<std::string> XY{"x", "y"};

PolyMod pm(const std::string& s, std::uint32_t p) { return parse_poly_mod(s, XY, p); }

// phi(x) = x + t^3, phi(y) = y + t over F_3 (the canonical images of x - y^3)
std::vector<TruncatedSeries> images_27(std::uint32_t T) {
    TruncatedSeries ix(2, 3, T), iy(2, 3, T);
    ix.coeff(0) = pm("x", 3);
    ix.coeff(3) = pm("1", 3);
    ix.set_exact(true);
    iy.coeff(0) = pm("y", 3);
    iy.coeff(1) = pm("1", 3);
    iy.set_exact(true);
    return {ix, iy};
}

// phi(x) = sum_{l<=T} x t^l, phi(y) = y + y t over F_2
std::vector<TruncatedSeries> images_26(std::uint32_t T) {
    TruncatedSeries ix(2, 2, T), iy(2, 2, T);
    for (std::uint32_t l = 0; l <= T; ++l) ix.coeff(l) = pm("x", 2);
    ix.set_exact(false);
    iy.coeff(0) = pm("y", 2);
    iy.coeff(1) = pm("y", 2);
    iy.set_exact(true);
    return {ix, iy};
}

}  // namespace

TEST_CASE("series evaluation fixes the defining polynomials") {
    auto im27 = images_27(6);
    TruncatedSeries r = series_eval(pm("x - y^3", 3), im27);
    CHECK(r.coeff(0) == pm("x - y^3", 3));
    for (std::uint32_t l = 1; l <= 6; ++l) CHECK(r.coeff(l).is_zero());

    auto im26 = images_26(8);
    TruncatedSeries r2 = series_eval(pm("x*y", 2), im26);
    CHECK(r2.coeff(0) == pm("x*y", 2));
    for (std::uint32_t l = 1; l <= 8; ++l) CHECK(r2.coeff(l).is_zero());

    std::vector<TruncatedSeries> id{
        TruncatedSeries::constant(pm("x", 3), 4),
        TruncatedSeries::constant(pm("y", 3), 4)};
    TruncatedSeries r3 = series_eval(pm("x", 3), id);
    CHECK(r3.coeff(0) == pm("x", 3));
    CHECK(!r3.t_degree().has_value() || *r3.t_degree() == 0);
}

TEST_CASE("constant term equals evaluation at constant terms") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<std::uint32_t> de(0, 3), dc(0, 2);
    auto im = images_27(5);
    std::vector<PolyMod> c0{im[0].coeff(0), im[1].coeff(0)};
    for (int i = 0; i < 40; ++i) {
        PolyMod g(2, 3);
        std::vector<PolyMod::Term> ts;
        for (int t = 0; t < 4; ++t) ts.emplace_back(Monomial({de(rng), de(rng)}), dc(rng));
        g = PolyMod::from_terms(2, 3, std::move(ts));
        CHECK(series_eval(g, im).coeff(0) == g.substitute(c0));
    }
}

TEST_CASE("series evaluation is multiplicative") {
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<std::uint32_t> de(0, 3), dc(0, 1);
    auto im = images_26(6);
    for (int i = 0; i < 40; ++i) {
        std::vector<PolyMod::Term> ta, tb;
        for (int t = 0; t < 3; ++t) {
            ta.emplace_back(Monomial({de(rng), de(rng)}), dc(rng));
            tb.emplace_back(Monomial({de(rng), de(rng)}), dc(rng));
        }
        PolyMod a = PolyMod::from_terms(2, 2, std::move(ta));
        PolyMod b = PolyMod::from_terms(2, 2, std::move(tb));
        CHECK(series_eval(a * b, im) == series_eval(a, im) * series_eval(b, im));
    }
}

TEST_CASE("substituting a polynomial for t") {
    auto im = images_27(6);
    // S = x + t^3 at t -> -y gives x - y^3
    CHECK(series_substitute_t_poly(im[0], pm("-y", 3)) == pm("x - y^3", 3));
    // S = y + t at t -> -y gives 0
    CHECK(series_substitute_t_poly(im[1], pm("-y", 3)).is_zero());
    // inexact series refuse full evaluation
    auto im26 = images_26(6);
    CHECK_THROWS_AS(series_substitute_t_poly(im26[0], pm("y", 2)), std::invalid_argument);
}

TEST_CASE("substituting a series for t requires zero constant term") {
    auto im = images_27(6);
    TruncatedSeries u(2, 3, 6);
    u.coeff(1) = pm("1", 3);
    u.coeff(2) = pm("x", 3);
    TruncatedSeries s = series_substitute_t(im[1], u);  // y + t -> y + (t + x t^2)
    CHECK(s.coeff(0) == pm("y", 3));
    CHECK(s.coeff(1) == pm("1", 3));
    CHECK(s.coeff(2) == pm("x", 3));
    TruncatedSeries bad(2, 3, 6);
    bad.coeff(0) = pm("1", 3);
    CHECK_THROWS_AS(series_substitute_t(im[1], bad), std::invalid_argument);
}

TEST_CASE("two-variable composition equals the binomial shift on tame images") {
    // phi(y) = y + t at p = 3: both routes give y + s + t
    auto im = images_27(6);
    BiSeries lhs = bi_compose_generator(im, 1);
    BiSeries rhs = bi_shift_generator(im, 1);
    CHECK(lhs == rhs);
    // phi(x) = x + t^3 at p = 3: (s+t)^3 = s^3 + t^3 because the cross binomials vanish
    BiSeries lx = bi_compose_generator(im, 0);
    BiSeries rx = bi_shift_generator(im, 0);
    CHECK(lx == rx);
    CHECK(rx.cell(3, 0) == pm("1", 3));
    CHECK(rx.cell(0, 3) == pm("1", 3));
    CHECK(rx.cell(2, 1).is_zero());
    CHECK(rx.cell(1, 2).is_zero());

    // identity images compose degenerately
    std::vector<TruncatedSeries> id{
        TruncatedSeries::constant(pm("x", 3), 4),
        TruncatedSeries::constant(pm("y", 3), 4)};
    CHECK(bi_compose_generator(id, 0) == bi_shift_generator(id, 0));
}

TEST_CASE("binomial shift is symmetric in s and t") {
    auto im = images_27(6);
    BiSeries b = bi_shift_generator(im, 0);
    for (std::uint32_t i = 0; i <= 6; ++i)
        for (std::uint32_t j = 0; i + j <= 6; ++j) CHECK(b.cell(i, j) == b.cell(j, i));
}

TEST_CASE("exactness bookkeeping") {
    auto im = images_27(3);  // x + t^3 at truncation 3: degree fills the window
    TruncatedSeries prod = im[0] * im[0];  // true degree 6 spills past 3
    CHECK(!prod.exact());
    auto wide = images_27(12);
    TruncatedSeries prod2 = wide[0] * wide[0];
    CHECK(prod2.exact());
    CHECK(prod2.coeff(6) == pm("1", 3));
    CHECK(prod2.coeff(3) == pm("2*x", 3));
}
