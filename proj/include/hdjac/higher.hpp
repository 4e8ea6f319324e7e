#pragma once

#include "hdjac/jacobian.hpp"
#include "hdjac/poly.hpp"
#include "hdjac/series.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hdjac {

// All monomials of total degree <= dmax, ascending graded-lex. The shared
// column basis for kernel assembly, slice solving and membership.
std::vector<Monomial> monomials_up_to_degree(std::uint32_t arity, std::uint32_t dmax);

// Valuation failure of l!^{-1}[d]^l at a generator: the recorded coefficient
// re-checks against p^e(l) by pure arithmetic.
struct DefinednessFailure {
    std::uint32_t generator = 0;  // index of x_k
    std::uint64_t ell = 0;
    std::uint64_t required_e = 0;  // e(l) = v_p(l!)
    std::uint64_t valuation = 0;   // v_p of the offending coefficient
    Monomial monomial;
    BigInt coefficient;

    bool reverify(std::uint32_t p) const;
};

// Generator images of Exp(t d) for a char-zero derivation d, built by
// incremental bracket iteration with valuation checks at every order.
struct ExpOutcome {
    std::vector<TruncatedSeries> images;
    // every order 1..window passed the valuation check for every generator
    std::uint32_t window = 0;
    std::optional<DefinednessFailure> failure;

    bool defined() const { return !failure.has_value(); }
    // failures with e(l) <= 1 are independent of the integer representative
    // chosen for the derivation; deeper ones are reported but not conclusive
    bool hard_failure(std::uint32_t p) const {
        return failure && legendre_e(failure->ell, p) <= 1;
    }
};

ExpOutcome exp_map(const DerivationZ& d, std::uint32_t p, std::uint32_t trunc);

// A higher derivation presented by its generator images: either the canonical
// family of a tuple F (images from l!^{-1}[delta_tilde(F)]^l) or explicit data.
class HDSpec {
public:
    enum class Kind { Canonical, Explicit };

    Kind kind = Kind::Explicit;
    std::uint32_t arity = 0;
    std::uint32_t p = 2;
    std::uint32_t trunc = 0;
    std::vector<PolyMod> F;                    // canonical only
    std::optional<DerivationZ> derivation;     // the lifted derivation used
    std::vector<TruncatedSeries> images;
    std::uint32_t window = 0;                  // orders computed and checked
    std::optional<DefinednessFailure> failure;

    static HDSpec canonical(std::vector<PolyMod> F_, std::uint32_t trunc,
                            LiftPolicy policy = LiftPolicy::Balanced);
    // canonical family of an arbitrary mod-p derivation (balanced lift)
    static HDSpec from_derivation(const DerivationMod& d, std::uint32_t trunc);
    // explicit generator images; enforces constant term c0 = x_k
    static HDSpec explicit_images(std::vector<TruncatedSeries> images_);

    bool defined() const { return !failure.has_value(); }
    TruncatedSeries apply(const PolyMod& g) const;  // phi_D(g) through the window
};

// ---- axiom verification ----

struct AxiomFailure {
    std::uint32_t order = 0;
    std::size_t sample = 0;  // index of the offending pair
    Monomial monomial;
    std::string detail;
};

struct AxiomReport {
    bool identity_ok = true;  // D_0 = id on generators
    bool leibniz_ok = true;   // phi(fg) = phi(f) phi(g) on the samples
    std::optional<AxiomFailure> failure;
};

// Claimed values phi(h) for specific polynomials h, consulted before the
// homomorphic extension; lets tampered families be exhibited and caught.
using SeriesOverrides = std::vector<std::pair<PolyMod, TruncatedSeries>>;

AxiomReport verify_axioms(const HDSpec& spec,
                          std::span<const std::pair<PolyMod, PolyMod>> samples,
                          const SeriesOverrides& overrides = {});

// ---- locally finite / iterative / fixes ----

struct LocalFiniteness {
    enum class Kind { ExactPolynomial, ZeroTailWindow, NotWithinWindow };
    Kind kind = Kind::ExactPolynomial;
    std::uint32_t observed_degree = 0;
    std::uint32_t window = 0;
};

LocalFiniteness is_locally_finite_up_to(const HDSpec& spec);

struct IterativityReport {
    bool pass = true;
    std::uint32_t order_checked = 0;
    // first differing cell s^i t^j on generator k
    std::uint32_t i = 0, j = 0, generator = 0;
};

IterativityReport is_iterative_up_to(const HDSpec& spec, std::uint32_t order);

struct FixReport {
    bool pass = true;
    std::uint32_t checked_through = 0;
    std::uint32_t fails_at = 0;
    PolyMod residual;  // phi(f)_l - [l == 0] f at the first failing order
};

FixReport fixes_polynomial(const HDSpec& spec, const PolyMod& f);

// ---- Jacobian-type report ----

enum class CheckStatus { Pass, Fail, Inconclusive };

struct JacobianTypeReport {
    CheckStatus independence = CheckStatus::Inconclusive;
    CheckStatus fixes = CheckStatus::Inconclusive;
    CheckStatus first_term = CheckStatus::Inconclusive;     // D_1 = Jacobian derivation
    CheckStatus divided_powers = CheckStatus::Inconclusive; // D_l = l!^{-1} [D_1]^l, l < p
    std::string detail;

    bool all_pass() const {
        return independence == CheckStatus::Pass && fixes == CheckStatus::Pass &&
               first_term == CheckStatus::Pass && divided_powers == CheckStatus::Pass;
    }
};

JacobianTypeReport is_jacobian_type(const HDSpec& spec, std::span<const PolyMod> F,
                                    std::uint32_t order);

// ---- kernel ----

struct KernelBasis {
    std::uint32_t dmax = 0;
    std::uint32_t order = 0;  // verification order actually used
    std::vector<PolyMod> basis;  // reduced row echelon in the monomial order
};

// Null space of g -> (coefficients of t^1..t^order of phi(g) - g) on
// polynomials of degree <= dmax. Every basis element re-verifies through
// fixes_polynomial. dim_cap guards the dense matrix size.
KernelBasis kernel_up_to_degree(const HDSpec& spec, std::uint32_t dmax, std::uint32_t order,
                                std::size_t dim_cap = 8u << 20);

// phi on a monomial basis; the kernel/membership matrix columns. Exposed with
// serial and parallel variants (columns are independent).
std::vector<TruncatedSeries> phi_on_monomials(const HDSpec& spec,
                                              std::span<const Monomial> monomials,
                                              bool parallel = true);

}  // namespace hdjac
