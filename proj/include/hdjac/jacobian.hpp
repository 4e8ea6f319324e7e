#pragma once

#include "hdjac/poly.hpp"

#include <span>
#include <string>
#include <vector>

namespace hdjac {

// Derivation d = sum a_i d/dx_i with integer-polynomial coefficients; the
// home of characteristic-zero brackets.
struct DerivationZ {
    std::uint32_t arity = 0;
    std::vector<PolyZ> coeffs;

    PolyZ apply(const PolyZ& g) const;
    bool is_zero() const;
};

// Same shape mod p.
struct DerivationMod {
    std::uint32_t arity = 0;
    std::uint32_t p = 2;
    std::vector<PolyMod> coeffs;

    PolyMod apply(const PolyMod& g) const;
    bool is_zero() const;
};

enum class LiftPolicy { Balanced, LeastNonnegative };

PolyZ lift_with(const PolyMod& g, LiftPolicy policy);
DerivationMod reduce_mod_p(const DerivationZ& d, std::uint32_t p);
DerivationZ lift_with(const DerivationMod& d, LiftPolicy policy);

// Jacobian derivation of F = (f_1, ..., f_{n-1}): the argument g occupies the
// last row of the Jacobian matrix, F the first n-1 rows, and the determinant
// is expanded along the g-row with all arithmetic over Z on the lifted F.
// coeffs[j] = (-1)^(n+1+j) * minor_j(J(lift F)).
DerivationZ delta_tilde(std::span<const PolyMod> F, LiftPolicy policy = LiftPolicy::Balanced);

// The plain characteristic-p Jacobian derivation (all arithmetic mod p).
DerivationMod delta_modp(std::span<const PolyMod> F);

// [d](g) computed exactly over Z.
PolyZ bracket_apply(const DerivationZ& d, const PolyZ& g);

// l-fold bracket, never reducing mod p between steps.
PolyZ bracket_power(const DerivationZ& d, const PolyZ& g, std::uint32_t ell);

// v_p(l!) by Legendre's formula.
std::uint64_t legendre_e(std::uint64_t ell, std::uint32_t p);

// (l! / p^e(l))^{-1} mod p, computed incrementally without materializing l!.
std::uint32_t m_inverse_mod_p(std::uint64_t ell, std::uint32_t p);

// l! = p^e * m with p not dividing m; stores m's residue and inverse mod p.
struct FactorialSplit {
    std::uint64_t ell;
    std::uint64_t e;
    std::uint32_t m_mod_p;
    std::uint32_t m_inv;

    static FactorialSplit compute(std::uint64_t ell, std::uint32_t p);
};

// Algebraic independence of a tuple F over F_p. A nonzero (n-1)-minor of the
// Jacobian certifies independence in every characteristic; otherwise a
// bounded-degree annihilating relation is searched for by linear algebra.
// Rank deficiency alone does not imply dependence in characteristic p.
struct IndependenceResult {
    enum class Kind { Independent, Dependent, Inconclusive };
    Kind kind = Kind::Inconclusive;
    // Dependent: a nonzero relation R over fresh symbols with R(F) = 0
    PolyMod witness;
    std::string detail;
};

IndependenceResult algebraic_independence(std::span<const PolyMod> F, std::uint32_t dmax);

}  // namespace hdjac
