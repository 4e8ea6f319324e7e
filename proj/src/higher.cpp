#include "hdjac/higher.hpp"

#include "hdjac/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace hdjac {

std::vector<Monomial> monomials_up_to_degree(std::uint32_t arity, std::uint32_t dmax) {
    std::vector<Monomial> out;
    Monomial cur(arity);
    // enumerate recursively, then sort into the canonical order
    std::vector<std::uint32_t> stack(arity, 0);
    auto rec = [&](auto&& self, std::uint32_t idx, std::uint32_t left) -> void {
        if (idx == arity) {
            out.emplace_back(std::vector<std::uint32_t>(stack));
            return;
        }
        for (std::uint32_t e = 0; e <= left; ++e) {
            stack[idx] = e;
            self(self, idx + 1, left - e);
        }
        stack[idx] = 0;
    };
    rec(rec, 0, dmax);
    std::sort(out.begin(), out.end(), monomial_less);
    return out;
}

bool DefinednessFailure::reverify(std::uint32_t p) const {
    BigInt c = coefficient;
    if (c == 0) return false;
    std::uint64_t v = 0;
    while (c % p == 0) {
        c /= p;
        ++v;
    }
    return v == valuation && v < required_e;
}

ExpOutcome exp_map(const DerivationZ& d, std::uint32_t p, std::uint32_t trunc) {
    if (!is_prime(p)) throw std::invalid_argument("exp_map: p must be prime");
    const std::uint32_t n = d.arity;
    ExpOutcome out;
    out.window = trunc;
    for (std::uint32_t k = 0; k < n; ++k) {
        TruncatedSeries phi(n, p, trunc);
        phi.coeff(0) = PolyMod::variable(n, p, k);
        PolyZ cur = PolyZ::variable(n, k);
        bool exact = false;
        for (std::uint32_t ell = 1; ell <= trunc; ++ell) {
            cur = d.apply(cur);
            if (cur.is_zero()) {
                exact = true;
                break;
            }
            const std::uint64_t e = legendre_e(ell, p);
            auto v = cur.min_p_valuation(p);
            if (*v < e) {
                DefinednessFailure fail;
                fail.generator = k;
                fail.ell = ell;
                fail.required_e = e;
                fail.valuation = *v;
                // record a witness coefficient of minimal valuation
                for (const auto& t : cur.terms()) {
                    BigInt c = t.second;
                    std::uint64_t vv = 0;
                    while (c % p == 0) {
                        c /= p;
                        ++vv;
                    }
                    if (vv == *v) {
                        fail.monomial = t.first;
                        fail.coefficient = t.second;
                        break;
                    }
                }
                if (!out.failure || fail.ell < out.failure->ell) out.failure = fail;
                out.window = std::min<std::uint32_t>(out.window, ell - 1);
                break;
            }
            PolyZ reduced = cur.divide_exact_by_p_power(p, e);
            phi.coeff(ell) = reduce_mod_p(reduced, p).scaled(m_inverse_mod_p(ell, p));
        }
        phi.set_exact(exact);
        out.images.push_back(std::move(phi));
    }
    return out;
}

HDSpec HDSpec::canonical(std::vector<PolyMod> F_, std::uint32_t trunc, LiftPolicy policy) {
    if (F_.empty()) throw std::invalid_argument("canonical spec: empty tuple");
    HDSpec spec;
    spec.kind = Kind::Canonical;
    spec.arity = F_[0].arity();
    spec.p = F_[0].modulus();
    spec.trunc = trunc;
    spec.derivation = delta_tilde(F_, policy);
    spec.F = std::move(F_);
    ExpOutcome out = exp_map(*spec.derivation, spec.p, trunc);
    spec.images = std::move(out.images);
    spec.window = out.window;
    spec.failure = out.failure;
    return spec;
}

HDSpec HDSpec::from_derivation(const DerivationMod& d, std::uint32_t trunc) {
    HDSpec spec;
    spec.kind = Kind::Canonical;
    spec.arity = d.arity;
    spec.p = d.p;
    spec.trunc = trunc;
    spec.derivation = lift_with(d, LiftPolicy::Balanced);
    ExpOutcome out = exp_map(*spec.derivation, spec.p, trunc);
    spec.images = std::move(out.images);
    spec.window = out.window;
    spec.failure = out.failure;
    return spec;
}

HDSpec HDSpec::explicit_images(std::vector<TruncatedSeries> images_) {
    if (images_.empty()) throw std::invalid_argument("explicit spec: no images");
    HDSpec spec;
    spec.kind = Kind::Explicit;
    spec.arity = images_[0].arity();
    spec.p = images_[0].modulus();
    spec.trunc = images_[0].trunc();
    if (images_.size() != spec.arity)
        throw std::invalid_argument("explicit spec: one image per generator required");
    for (std::uint32_t k = 0; k < spec.arity; ++k) {
        if (images_[k].trunc() != spec.trunc || images_[k].modulus() != spec.p)
            throw std::invalid_argument("explicit spec: mismatched image shapes");
        if (images_[k].coeff(0) != PolyMod::variable(spec.arity, spec.p, k))
            throw std::invalid_argument(
                "explicit spec: image constant term must equal its generator");
    }
    spec.images = std::move(images_);
    spec.window = spec.trunc;
    return spec;
}

namespace {

TruncatedSeries truncated_to(const TruncatedSeries& s, std::uint32_t t2) {
    if (t2 == s.trunc()) return s;
    TruncatedSeries r(s.arity(), s.modulus(), t2);
    for (std::uint32_t i = 0; i <= std::min(t2, s.trunc()); ++i) r.coeff(i) = s.coeff(i);
    auto d = s.t_degree();
    r.set_exact(s.exact() && (!d || *d <= t2));
    return r;
}

std::vector<TruncatedSeries> window_images(const HDSpec& spec, std::uint32_t order) {
    std::uint32_t w = std::min(order, spec.window);
    std::vector<TruncatedSeries> out;
    out.reserve(spec.images.size());
    for (const auto& im : spec.images) out.push_back(truncated_to(im, w));
    return out;
}

}  // namespace

TruncatedSeries HDSpec::apply(const PolyMod& g) const {
    auto ims = window_images(*this, window);
    return series_eval(g, ims);
}

AxiomReport verify_axioms(const HDSpec& spec,
                          std::span<const std::pair<PolyMod, PolyMod>> samples,
                          const SeriesOverrides& overrides) {
    AxiomReport report;
    auto ims = window_images(spec, spec.window);
    auto phi_of = [&](const PolyMod& h) -> TruncatedSeries {
        for (const auto& [key, value] : overrides)
            if (key == h) return truncated_to(value, std::min(spec.window, value.trunc()));
        return series_eval(h, ims);
    };
    // (a): constant terms are the generators
    for (std::uint32_t k = 0; k < spec.arity; ++k) {
        if (spec.images[k].coeff(0) != PolyMod::variable(spec.arity, spec.p, k)) {
            report.identity_ok = false;
            AxiomFailure f;
            f.order = 0;
            f.detail = "image constant term differs from its generator";
            report.failure = f;
            return report;
        }
    }
    // (b): phi(f g) = phi(f) phi(g) on the samples
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const auto& [f, g] = samples[s];
        TruncatedSeries lhs = phi_of(f * g);
        TruncatedSeries rhs = phi_of(f) * phi_of(g);
        for (std::uint32_t ell = 0; ell <= lhs.trunc(); ++ell) {
            PolyMod diff = lhs.coeff(ell) - rhs.coeff(ell);
            if (!diff.is_zero()) {
                report.leibniz_ok = false;
                AxiomFailure fail;
                fail.order = ell;
                fail.sample = s;
                fail.monomial = diff.terms().front().first;
                fail.detail = "product rule mismatch";
                report.failure = fail;
                return report;
            }
        }
    }
    return report;
}

LocalFiniteness is_locally_finite_up_to(const HDSpec& spec) {
    LocalFiniteness r;
    r.window = spec.window;
    bool all_exact = true;
    std::uint32_t maxdeg = 0;
    bool top_nonzero = false;
    for (const auto& im : spec.images) {
        if (!im.exact()) all_exact = false;
        auto d = im.t_degree();
        if (d) maxdeg = std::max(maxdeg, *d);
        if (d && *d >= spec.window) top_nonzero = true;
    }
    r.observed_degree = maxdeg;
    if (all_exact)
        r.kind = LocalFiniteness::Kind::ExactPolynomial;
    else if (top_nonzero)
        r.kind = LocalFiniteness::Kind::NotWithinWindow;
    else
        r.kind = LocalFiniteness::Kind::ZeroTailWindow;
    return r;
}

IterativityReport is_iterative_up_to(const HDSpec& spec, std::uint32_t order) {
    IterativityReport report;
    report.order_checked = std::min(order, spec.window);
    auto ims = window_images(spec, report.order_checked);
    for (std::uint32_t k = 0; k < spec.arity; ++k) {
        BiSeries composed = bi_compose_generator(ims, k);
        BiSeries shifted = bi_shift_generator(ims, k);
        for (std::uint32_t tot = 0; tot <= report.order_checked; ++tot) {
            for (std::uint32_t i = 0; i <= tot; ++i) {
                std::uint32_t j = tot - i;
                if (composed.cell(i, j) != shifted.cell(i, j)) {
                    report.pass = false;
                    report.i = i;
                    report.j = j;
                    report.generator = k;
                    return report;
                }
            }
        }
    }
    return report;
}

FixReport fixes_polynomial(const HDSpec& spec, const PolyMod& f) {
    FixReport r;
    r.checked_through = spec.window;
    auto ims = window_images(spec, spec.window);
    TruncatedSeries phi = series_eval(f, ims);
    for (std::uint32_t ell = 0; ell <= phi.trunc(); ++ell) {
        PolyMod want = (ell == 0) ? f : PolyMod::zero(spec.arity, spec.p);
        PolyMod diff = phi.coeff(ell) - want;
        if (!diff.is_zero()) {
            r.pass = false;
            r.fails_at = ell;
            r.residual = diff;
            return r;
        }
    }
    r.residual = PolyMod::zero(spec.arity, spec.p);
    return r;
}

JacobianTypeReport is_jacobian_type(const HDSpec& spec, std::span<const PolyMod> F,
                                    std::uint32_t order) {
    JacobianTypeReport rep;
    const std::uint32_t n = spec.arity;
    if (F.size() + 1 != n) throw std::invalid_argument("is_jacobian_type: tuple size");
    std::string detail;

    // (a) algebraic independence via the Jacobian rank certificate
    auto indep = algebraic_independence(F, 2 * static_cast<std::uint32_t>(
                                               std::max<std::uint64_t>(4, F[0].degree())));
    switch (indep.kind) {
        case IndependenceResult::Kind::Independent: rep.independence = CheckStatus::Pass; break;
        case IndependenceResult::Kind::Dependent:
            rep.independence = CheckStatus::Fail;
            detail += "dependence relation found; ";
            break;
        case IndependenceResult::Kind::Inconclusive:
            rep.independence = CheckStatus::Inconclusive;
            detail += "independence undecided at budget; ";
            break;
    }

    // (b) each component is fixed by phi
    rep.fixes = CheckStatus::Pass;
    for (const auto& f : F) {
        FixReport fr = fixes_polynomial(spec, f);
        if (!fr.pass) {
            rep.fixes = CheckStatus::Fail;
            detail += "component moves at order " + std::to_string(fr.fails_at) + "; ";
            break;
        }
    }

    // (c) t^1 coefficients match the mod-p Jacobian derivation
    DerivationMod dm = delta_modp(F);
    rep.first_term = CheckStatus::Pass;
    for (std::uint32_t k = 0; k < n; ++k) {
        PolyMod want = dm.apply(PolyMod::variable(n, spec.p, k));
        if (spec.images[k].coeff(1) != want) {
            rep.first_term = CheckStatus::Fail;
            detail += "D_1 differs on generator " + std::to_string(k) + "; ";
            break;
        }
    }

    // (d) divided powers of the family's own D_1 through l <= p-1
    rep.divided_powers = CheckStatus::Pass;
    if (spec.p > 2) {
        DerivationMod d1;
        d1.arity = n;
        d1.p = spec.p;
        for (std::uint32_t k = 0; k < n; ++k) d1.coeffs.push_back(spec.images[k].coeff(1));
        DerivationZ d1z = lift_with(d1, LiftPolicy::Balanced);
        std::uint32_t top = std::min<std::uint32_t>(spec.p - 1, std::min(order, spec.window));
        for (std::uint32_t k = 0; k < n && rep.divided_powers == CheckStatus::Pass; ++k) {
            PolyZ cur = PolyZ::variable(n, k);
            for (std::uint32_t ell = 1; ell <= top; ++ell) {
                cur = d1z.apply(cur);
                PolyMod want = reduce_mod_p(cur, spec.p).scaled(m_inverse_mod_p(ell, spec.p));
                if (spec.images[k].coeff(ell) != want) {
                    rep.divided_powers = CheckStatus::Fail;
                    detail += "D_" + std::to_string(ell) + " is not the divided bracket power; ";
                    break;
                }
            }
        }
    }
    rep.detail = detail;
    return rep;
}

std::vector<TruncatedSeries> phi_on_monomials(const HDSpec& spec,
                                              std::span<const Monomial> monomials,
                                              bool parallel) {
    auto ims = window_images(spec, spec.window);
    const std::uint32_t T = spec.window;
    const std::uint32_t n = spec.arity;
    // power tables phi(x_i)^e, shared across columns
    std::uint32_t maxdeg = 0;
    for (const auto& m : monomials)
        for (std::uint32_t i = 0; i < n; ++i) maxdeg = std::max(maxdeg, m.exps[i]);
    std::vector<std::vector<TruncatedSeries>> pow(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        pow[i].push_back(TruncatedSeries::constant(PolyMod::constant(n, spec.p, 1), T));
        for (std::uint32_t e = 1; e <= maxdeg; ++e) pow[i].push_back(pow[i].back() * ims[i]);
    }
    std::vector<TruncatedSeries> cols(
        monomials.size(), TruncatedSeries::constant(PolyMod::zero(n, spec.p), T));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel && monomials.size() > 8)
#endif
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(monomials.size()); ++c) {
        const Monomial& m = monomials[c];
        TruncatedSeries prod = TruncatedSeries::constant(PolyMod::constant(n, spec.p, 1), T);
        for (std::uint32_t i = 0; i < n; ++i)
            if (m.exps[i]) prod = prod * pow[i][m.exps[i]];
        cols[c] = std::move(prod);
    }
    return cols;
}

KernelBasis kernel_up_to_degree(const HDSpec& spec, std::uint32_t dmax, std::uint32_t order,
                                std::size_t dim_cap) {
    KernelBasis kb;
    kb.dmax = dmax;
    kb.order = std::min(order, spec.window);
    const std::uint32_t p = spec.p;
    auto mons = monomials_up_to_degree(spec.arity, dmax);
    auto cols = phi_on_monomials(spec, mons);

    // rows: the (t-order, ambient monomial) pairs that actually occur
    std::vector<std::pair<std::uint32_t, Monomial>> row_keys;
    {
        std::vector<std::pair<std::uint32_t, Monomial>> keys;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            for (std::uint32_t ell = 1; ell <= kb.order; ++ell) {
                const PolyMod& delta = cols[c].coeff(ell);
                for (const auto& t : delta.terms()) keys.emplace_back(ell, t.first);
            }
        }
        std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first < b.first;
            return monomial_less(a.second, b.second);
        });
        keys.erase(std::unique(keys.begin(), keys.end(),
                               [](const auto& a, const auto& b) {
                                   return a.first == b.first && a.second == b.second;
                               }),
                   keys.end());
        row_keys = std::move(keys);
    }
    if (row_keys.empty()) row_keys.emplace_back(1, Monomial(spec.arity));
    if (row_keys.size() * mons.size() > dim_cap)
        throw std::length_error("kernel matrix exceeds the dimension cap");

    auto row_index = [&](std::uint32_t ell, const Monomial& m) -> std::ptrdiff_t {
        auto it = std::lower_bound(row_keys.begin(), row_keys.end(), std::make_pair(ell, m),
                                   [](const auto& a, const auto& b) {
                                       if (a.first != b.first) return a.first < b.first;
                                       return monomial_less(a.second, b.second);
                                   });
        if (it == row_keys.end() || it->first != ell || !(it->second == m)) return -1;
        return it - row_keys.begin();
    };

    ModMatrix A(row_keys.size(), mons.size(), p);
    for (std::size_t c = 0; c < mons.size(); ++c) {
        for (std::uint32_t ell = 1; ell <= kb.order; ++ell) {
            const PolyMod& delta = cols[c].coeff(ell);
            for (const auto& t : delta.terms()) {
                auto r = row_index(ell, t.first);
                A.at(static_cast<std::size_t>(r), c) = t.second;
            }
        }
    }
    auto null_vecs = nullspace(A);

    // canonicalize: RREF the basis over the monomial columns
    if (!null_vecs.empty()) {
        ModMatrix B(null_vecs.size(), mons.size(), p);
        for (std::size_t i = 0; i < null_vecs.size(); ++i)
            for (std::size_t j = 0; j < mons.size(); ++j) B.at(i, j) = null_vecs[i][j];
        B.rref();
        for (std::size_t i = 0; i < null_vecs.size(); ++i) {
            std::vector<PolyMod::Term> terms;
            for (std::size_t j = 0; j < mons.size(); ++j)
                if (B.at(i, j)) terms.emplace_back(mons[j], B.at(i, j));
            if (terms.empty()) continue;
            PolyMod b = PolyMod::from_terms(spec.arity, p, std::move(terms));
            if (!fixes_polynomial(spec, b).pass)
                throw std::logic_error("kernel element failed re-verification");
            kb.basis.push_back(std::move(b));
        }
    }
    return kb;
}

}  // namespace hdjac
