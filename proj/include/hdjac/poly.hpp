#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hdjac {

using BigInt = boost::multiprecision::cpp_int;

bool is_prime(std::uint32_t n);

// Exponent vector of a monomial in n variables. Ordering is graded
// lexicographic with x1 > x2 > ... > xn; the smaller monomial sorts first.
struct Monomial {
    std::vector<std::uint32_t> exps;

    Monomial() = default;
    explicit Monomial(std::size_t arity) : exps(arity, 0) {}
    explicit Monomial(std::vector<std::uint32_t> e) : exps(std::move(e)) {}

    std::size_t arity() const { return exps.size(); }
    std::uint64_t degree() const;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps == b.exps; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
};

// graded lex: compare total degree first, then exponents from x1 down.
bool monomial_less(const Monomial& a, const Monomial& b);

Monomial monomial_mul(const Monomial& a, const Monomial& b);

// Sparse polynomial over Z with arbitrary-precision coefficients.
// Terms are kept sorted ascending in the monomial order with no zero
// coefficients, so iteration, printing and hashing are deterministic.
class PolyZ {
public:
    using Term = std::pair<Monomial, BigInt>;

    PolyZ() : arity_(0) {}
    explicit PolyZ(std::uint32_t arity) : arity_(arity) {}

    static PolyZ zero(std::uint32_t arity) { return PolyZ(arity); }
    static PolyZ constant(std::uint32_t arity, BigInt c);
    static PolyZ variable(std::uint32_t arity, std::uint32_t index);
    static PolyZ from_terms(std::uint32_t arity, std::vector<Term> terms);

    std::uint32_t arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    std::uint64_t degree() const;  // 0 for the zero polynomial

    void add_term(const Monomial& m, const BigInt& c);

    PolyZ operator-() const;
    friend PolyZ operator+(const PolyZ& a, const PolyZ& b);
    friend PolyZ operator-(const PolyZ& a, const PolyZ& b);
    friend PolyZ operator*(const PolyZ& a, const PolyZ& b);
    friend bool operator==(const PolyZ& a, const PolyZ& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const PolyZ& a, const PolyZ& b) { return !(a == b); }

    PolyZ scaled(const BigInt& c) const;

    // Exact derivative with respect to variable `index`; exponent multiples of
    // the ambient prime are kept (d/dx x^p = p x^(p-1), not 0).
    PolyZ derivative(std::uint32_t index) const;

    // Ring-homomorphic evaluation x_i -> images[i].
    PolyZ substitute(std::span<const PolyZ> images) const;

    // Minimum p-adic valuation over stored coefficients; nullopt (=+inf) for 0.
    std::optional<std::uint64_t> min_p_valuation(std::uint32_t p) const;

    // g / p^e with exact integer coefficients. Throws std::domain_error naming
    // the offending monomial when some coefficient has valuation < e.
    PolyZ divide_exact_by_p_power(std::uint32_t p, std::uint64_t e) const;

private:
    std::uint32_t arity_;
    std::vector<Term> terms_;
    void normalize();
    friend PolyZ mul_serial(const PolyZ& a, const PolyZ& b);
    friend PolyZ mul_parallel(const PolyZ& a, const PolyZ& b);
};

// Sparse polynomial over F_p, residues stored in {1,...,p-1}.
class PolyMod {
public:
    using Term = std::pair<Monomial, std::uint32_t>;

    PolyMod() : arity_(0), p_(2) {}
    PolyMod(std::uint32_t arity, std::uint32_t p);

    static PolyMod zero(std::uint32_t arity, std::uint32_t p) { return PolyMod(arity, p); }
    static PolyMod constant(std::uint32_t arity, std::uint32_t p, std::int64_t c);
    static PolyMod variable(std::uint32_t arity, std::uint32_t p, std::uint32_t index);
    static PolyMod from_terms(std::uint32_t arity, std::uint32_t p, std::vector<Term> terms);

    std::uint32_t arity() const { return arity_; }
    std::uint32_t modulus() const { return p_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    std::uint64_t degree() const;
    bool is_constant() const;
    // coefficient of a monomial (0 when absent)
    std::uint32_t coeff(const Monomial& m) const;

    void add_term(const Monomial& m, std::int64_t c);

    PolyMod operator-() const;
    friend PolyMod operator+(const PolyMod& a, const PolyMod& b);
    friend PolyMod operator-(const PolyMod& a, const PolyMod& b);
    friend PolyMod operator*(const PolyMod& a, const PolyMod& b);
    friend bool operator==(const PolyMod& a, const PolyMod& b) {
        return a.arity_ == b.arity_ && a.p_ == b.p_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const PolyMod& a, const PolyMod& b) { return !(a == b); }

    PolyMod scaled(std::uint32_t c) const;
    PolyMod derivative(std::uint32_t index) const;
    PolyMod substitute(std::span<const PolyMod> images) const;

private:
    std::uint32_t arity_;
    std::uint32_t p_;
    std::vector<Term> terms_;
    void normalize();
    friend PolyMod mul_serial(const PolyMod& a, const PolyMod& b);
    friend PolyMod mul_parallel(const PolyMod& a, const PolyMod& b);
};

// Least-nonnegative lift: residue r in {0,...,p-1} maps to the integer r.
// reduce_mod_p(lift_canonical(g)) == g.
PolyZ lift_canonical(const PolyMod& g);

// Balanced lift: residues map into (-p/2, p/2]. This is the representative
// used to build characteristic-zero derivations, so that printed bracket
// tables match hand computation with small signed coefficients.
PolyZ lift_balanced(const PolyMod& g);

PolyMod reduce_mod_p(const PolyZ& g, std::uint32_t p);

// Serial and block-parallel multiply kernels; operator* picks one by size.
PolyZ mul_serial(const PolyZ& a, const PolyZ& b);
PolyZ mul_parallel(const PolyZ& a, const PolyZ& b);
PolyMod mul_serial(const PolyMod& a, const PolyMod& b);
PolyMod mul_parallel(const PolyMod& a, const PolyMod& b);

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);
std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t p);

}  // namespace hdjac
