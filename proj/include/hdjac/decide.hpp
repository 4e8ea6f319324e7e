#pragma once

#include "hdjac/higher.hpp"
#include "hdjac/jacobian.hpp"
#include "hdjac/poly.hpp"

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace hdjac {

struct Budgets {
    std::uint32_t trunc = 64;
    std::uint32_t dmax = 0;  // 0 = auto: max(2 * total degree of inputs, 8)
    std::uint32_t slice_candidates = 64;
    std::uint64_t seed = 0;
    std::size_t dim_cap = 8u << 20;  // dense-matrix entry guard

    std::uint32_t effective_dmax(std::uint64_t input_degree) const {
        if (dmax) return dmax;
        return static_cast<std::uint32_t>(std::max<std::uint64_t>(2 * input_degree, 8));
    }
};

struct SliceCandidate {
    PolyMod s;
    std::uint32_t tdeg = 0;   // deg_t(phi(s)) within the verified window
    PolyMod leading;          // coefficient of t^tdeg
    bool is_slice = false;    // leading is a nonzero constant
    bool window_exact = true; // phi(s) was exact, so tdeg is the true degree
};

// Best candidate (min t-degree, ties by the smaller polynomial) among those
// whose image genuinely depends on t; nullopt when all lie in the kernel.
std::optional<SliceCandidate> find_local_slice(const HDSpec& spec,
                                               std::span<const PolyMod> candidates);

// Proof that B = R[F][s]: expressions E_k over fresh symbols (F_1..F_{n-1}, S)
// with E_k(f_1,...,f_{n-1}, s) = x_k, re-checkable by pure substitution.
struct Certificate {
    PolyMod slice;
    std::vector<PolyMod> expressions;

    bool reverify(std::span<const PolyMod> F) const;
};

struct MembershipResult {
    enum class Status { Found, NotInSpan, CapExceeded };
    Status status = Status::NotInSpan;
    // expressions over fresh symbols A_1..A_m, one per target
    std::vector<PolyMod> expressions;
};

// Solve each target as an F_p-combination of products of the generators with
// weighted ambient degree <= dmax; every expression re-verified by
// substitution before being returned.
MembershipResult subalgebra_membership(std::span<const PolyMod> targets,
                                       std::span<const PolyMod> gens, std::uint32_t dmax,
                                       std::size_t dim_cap = 8u << 20);

// Retraction proposals pi(x_k) = phi(x_k) |_{t -> -c^{-1} s} for a degree-1
// exact slice; each proposal re-verified to lie in the kernel.
std::vector<PolyMod> dixmier_retract(const HDSpec& spec, const SliceCandidate& s);

struct ConjugationReport {
    enum class Status { Pass, Mismatch, BaseUndefined, ConjugateUndefined };
    Status status = Status::Pass;
    bool z_exact_lift = false;  // lifted sigma composes to the identity over Z
    std::uint32_t generator = 0, order = 0;
};

// Compare Exp(t * sigma^{-1} d sigma) against sigma^{-1} . Exp(t d) . sigma
// through the given order; sigma and its inverse supplied over Z.
ConjugationReport conjugation_check(std::span<const PolyMod> F, std::span<const PolyZ> sigma,
                                    std::span<const PolyZ> sigma_inv, std::uint32_t order);

// ---------- verdicts ----------

struct IterativityCounterexample {
    std::uint32_t i = 0, j = 0, generator = 0;
};

struct FixesFailure {
    PolyMod f;
    std::uint32_t order = 0;
    PolyMod residual;
};

struct ZeroJacobianWitness {};

using Witness = std::variant<DefinednessFailure, IterativityCounterexample, FixesFailure,
                             IndependenceResult, ZeroJacobianWitness>;

struct UnivariatePayload {
    PolyMod g;            // the certified variable
    Certificate g_cert;   // certificate that g is a variable
    PolyMod expression;   // f = expression(g), one fresh symbol
};

struct Verdict {
    enum class Answer { Yes, No, Unknown };
    Answer answer = Answer::Unknown;
    std::optional<Certificate> certificate;
    std::optional<Witness> witness;
    std::optional<UnivariatePayload> univariate;
    std::vector<std::string> diagnostics;
    Budgets budgets;
};

Verdict decide_extendable(std::span<const PolyMod> F, const Budgets& budgets = {});
Verdict decide_variable(const PolyMod& f, const Budgets& budgets = {});
// Throws std::domain_error when both partial derivatives vanish mod p.
Verdict decide_univariate(const PolyMod& f, const Budgets& budgets = {});

// Complementary variable of f in two variables by elementary degree
// reduction (linear normalization of the leading form + single-monomial
// shears). A found mate is certified downstream by membership, so this
// routine is a candidate source, never a proof.
std::optional<PolyMod> complement_by_reduction(const PolyMod& f);

}  // namespace hdjac
