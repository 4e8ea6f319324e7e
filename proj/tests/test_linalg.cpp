#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hdjac/linalg.hpp"

#include <random>

using namespace hdjac;

namespace {

ModMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, std::uint32_t p) {
    ModMatrix m(r, c, p);
    std::uniform_int_distribution<std::uint32_t> dv(0, p - 1);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = dv(rng);
    return m;
}

}  // namespace

TEST_CASE("rref of a known matrix") {
    ModMatrix m(2, 3, 5);
    // [1 2 3; 2 4 2]: second row minus twice the first leaves (0 0 1)
    m.at(0, 0) = 1; m.at(0, 1) = 2; m.at(0, 2) = 3;
    m.at(1, 0) = 2; m.at(1, 1) = 4; m.at(1, 2) = 2;
    auto piv = m.rref();
    CHECK(piv == std::vector<std::size_t>{0, 2});
    CHECK(m.at(0, 0) == 1);
    CHECK(m.at(0, 1) == 2);
    CHECK(m.at(0, 2) == 0);
    CHECK(m.at(1, 2) == 1);
}

TEST_CASE("solve known systems") {
    ModMatrix a(2, 2, 7);
    a.at(0, 0) = 2; a.at(0, 1) = 1;
    a.at(1, 0) = 1; a.at(1, 1) = 3;
    auto x = solve(a, {5, 6});
    REQUIRE(x.has_value());
    CHECK((2 * (*x)[0] + (*x)[1]) % 7 == 5);
    CHECK(((*x)[0] + 3 * (*x)[1]) % 7 == 6);

    // inconsistent: x + y = 1, x + y = 2
    ModMatrix b(2, 2, 7);
    b.at(0, 0) = 1; b.at(0, 1) = 1;
    b.at(1, 0) = 1; b.at(1, 1) = 1;
    CHECK(!solve(b, {1, 2}).has_value());
}

TEST_CASE("nullspace dimension and membership") {
    // rank-1 matrix over F_3: rows (1 2 0), (2 1 0) -> rank 2, nullity 1
    ModMatrix m(2, 3, 3);
    m.at(0, 0) = 1; m.at(0, 1) = 2;
    m.at(1, 0) = 2; m.at(1, 1) = 1;
    auto ns = nullspace(m);
    REQUIRE(ns.size() == 1);
    for (const auto& v : ns) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            std::uint64_t acc = 0;
            for (std::size_t j = 0; j < m.cols(); ++j) acc += m.at(i, j) * v[j];
            CHECK(acc % 3 == 0);
        }
    }
}

TEST_CASE("serial and parallel reduction agree") {
    std::mt19937_64 rng(31);
    for (std::uint32_t p : {2u, 3u, 5u, 101u}) {
        for (int trial = 0; trial < 10; ++trial) {
            ModMatrix a = random_matrix(rng, 40, 55, p);
            ModMatrix b = a;
            auto p1 = rref_serial(a);
            auto p2 = rref_parallel(b);
            CHECK(p1 == p2);
            CHECK(a == b);
        }
    }
}

TEST_CASE("random consistent systems solve and verify") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        std::uint32_t p = 5;
        ModMatrix a = random_matrix(rng, 12, 9, p);
        std::uniform_int_distribution<std::uint32_t> dv(0, p - 1);
        std::vector<std::uint32_t> x0(9);
        for (auto& v : x0) v = dv(rng);
        std::vector<std::uint32_t> b(12, 0);
        for (std::size_t i = 0; i < 12; ++i) {
            std::uint64_t acc = 0;
            for (std::size_t j = 0; j < 9; ++j) acc += a.at(i, j) * x0[j];
            b[i] = static_cast<std::uint32_t>(acc % p);
        }
        auto x = solve(a, b);
        REQUIRE(x.has_value());
        for (std::size_t i = 0; i < 12; ++i) {
            std::uint64_t acc = 0;
            for (std::size_t j = 0; j < 9; ++j) acc += a.at(i, j) * (*x)[j];
            CHECK(acc % p == b[i]);
        }
    }
}

TEST_CASE("limited pivoting leaves trailing columns as right-hand sides") {
    // A | b with A singular in the solvable direction
    ModMatrix m(2, 3, 3);
    m.at(0, 0) = 1; m.at(0, 1) = 2; m.at(0, 2) = 0;
    m.at(1, 0) = 2; m.at(1, 1) = 1; m.at(1, 2) = 0;
    auto piv = rref_limited(m, 2);
    CHECK(piv.size() == 2);
    ModMatrix inc(2, 2, 3);
    inc.at(0, 0) = 1; inc.at(0, 1) = 1;
    inc.at(1, 0) = 2; inc.at(1, 1) = 2;  // column 1 = 2 * column 0 is fine; pivot only col 0
    auto piv2 = rref_limited(inc, 1);
    CHECK(piv2.size() == 1);
    CHECK(inc.at(1, 0) == 0);
}
