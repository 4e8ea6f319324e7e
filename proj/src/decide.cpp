#include "hdjac/decide.hpp"

#include "hdjac/linalg.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <stdexcept>

namespace hdjac {

namespace {

bool poly_less(const PolyMod& a, const PolyMod& b) {
    // total order for deterministic tie-breaks: by degree, then term lists
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    for (std::size_t i = 0; i < std::min(ta.size(), tb.size()); ++i) {
        if (ta[i].first != tb[i].first) return monomial_less(ta[i].first, tb[i].first);
        if (ta[i].second != tb[i].second) return ta[i].second < tb[i].second;
    }
    return ta.size() < tb.size();
}

std::vector<TruncatedSeries> images_through(const HDSpec& spec, std::uint32_t order) {
    std::uint32_t w = std::min(order, spec.window);
    std::vector<TruncatedSeries> out;
    for (const auto& im : spec.images) {
        TruncatedSeries r(im.arity(), im.modulus(), w);
        for (std::uint32_t i = 0; i <= w; ++i) r.coeff(i) = im.coeff(i);
        auto d = im.t_degree();
        r.set_exact(im.exact() && (!d || *d <= w));
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

std::optional<SliceCandidate> find_local_slice(const HDSpec& spec,
                                               std::span<const PolyMod> candidates) {
    auto ims = images_through(spec, spec.window);
    std::optional<SliceCandidate> best;
    for (const auto& c : candidates) {
        if (c.is_constant()) continue;
        TruncatedSeries phi = series_eval(c, ims);
        auto deg = phi.t_degree();
        if (!deg || *deg == 0) continue;  // lies in the kernel up to the window
        SliceCandidate sc;
        sc.s = c;
        sc.tdeg = *deg;
        sc.leading = phi.coeff(*deg);
        sc.is_slice = sc.leading.is_constant() && !sc.leading.is_zero();
        sc.window_exact = phi.exact();
        if (!best || sc.tdeg < best->tdeg ||
            (sc.tdeg == best->tdeg && poly_less(sc.s, best->s)))
            best = sc;
    }
    return best;
}

bool Certificate::reverify(std::span<const PolyMod> F) const {
    if (expressions.empty()) return false;
    const std::uint32_t n = F[0].arity();
    if (expressions.size() != n) return false;
    std::vector<PolyMod> gens(F.begin(), F.end());
    gens.push_back(slice);
    for (std::uint32_t k = 0; k < n; ++k) {
        if (expressions[k].arity() != gens.size()) return false;
        if (expressions[k].substitute(gens) != PolyMod::variable(n, F[0].modulus(), k))
            return false;
    }
    return true;
}

MembershipResult subalgebra_membership(std::span<const PolyMod> targets,
                                       std::span<const PolyMod> gens, std::uint32_t dmax,
                                       std::size_t dim_cap) {
    MembershipResult res;
    if (gens.empty() || targets.empty())
        throw std::invalid_argument("subalgebra_membership: empty input");
    const std::uint32_t n = gens[0].arity();
    const std::uint32_t p = gens[0].modulus();
    const std::uint32_t m = static_cast<std::uint32_t>(gens.size());

    std::vector<std::uint32_t> weights;
    for (const auto& g : gens)
        weights.push_back(std::max<std::uint32_t>(1, static_cast<std::uint32_t>(g.degree())));

    // exponent tuples with weighted degree <= dmax
    std::vector<std::vector<std::uint32_t>> tuples;
    {
        std::vector<std::uint32_t> cur(m, 0);
        auto rec = [&](auto&& self, std::uint32_t idx, std::uint32_t left) -> void {
            if (idx == m) {
                tuples.push_back(cur);
                return;
            }
            for (std::uint32_t a = 0; a * weights[idx] <= left; ++a) {
                cur[idx] = a;
                self(self, idx + 1, left - a * weights[idx]);
            }
            cur[idx] = 0;
        };
        rec(rec, 0, dmax);
    }

    // products and the ambient row space
    std::vector<PolyMod> prods;
    prods.reserve(tuples.size());
    {
        std::vector<std::vector<PolyMod>> pows(m);
        for (std::uint32_t i = 0; i < m; ++i) pows[i].push_back(PolyMod::constant(n, p, 1));
        for (const auto& alpha : tuples) {
            PolyMod prod = PolyMod::constant(n, p, 1);
            for (std::uint32_t i = 0; i < m; ++i) {
                while (pows[i].size() <= alpha[i]) pows[i].push_back(pows[i].back() * gens[i]);
                if (alpha[i]) prod = prod * pows[i][alpha[i]];
            }
            prods.push_back(std::move(prod));
        }
    }
    std::vector<Monomial> rows;
    for (const auto& q : prods)
        for (const auto& t : q.terms()) rows.push_back(t.first);
    for (const auto& tgt : targets)
        for (const auto& t : tgt.terms()) rows.push_back(t.first);
    std::sort(rows.begin(), rows.end(), monomial_less);
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    if (rows.empty()) rows.emplace_back(n);

    if (rows.size() * (prods.size() + targets.size()) > dim_cap) {
        res.status = MembershipResult::Status::CapExceeded;
        return res;
    }

    auto row_of = [&](const Monomial& mm) {
        return static_cast<std::size_t>(
            std::lower_bound(rows.begin(), rows.end(), mm, monomial_less) - rows.begin());
    };

    // one elimination with all targets carried as extra columns
    ModMatrix A(rows.size(), prods.size() + targets.size(), p);
    for (std::size_t c = 0; c < prods.size(); ++c)
        for (const auto& t : prods[c].terms()) A.at(row_of(t.first), c) = t.second;
    for (std::size_t k = 0; k < targets.size(); ++k)
        for (const auto& t : targets[k].terms())
            A.at(row_of(t.first), prods.size() + k) = t.second;

    auto pivots = rref_limited(A, prods.size());
    std::vector<PolyMod> fvec(gens.begin(), gens.end());
    for (std::size_t k = 0; k < targets.size(); ++k) {
        // inconsistent iff the target column is nonzero in a pivot-free row
        bool ok = true;
        for (std::size_t r = pivots.size(); r < rows.size(); ++r)
            if (A.at(r, prods.size() + k) != 0) ok = false;
        if (!ok) {
            res.status = MembershipResult::Status::NotInSpan;
            res.expressions.clear();
            return res;
        }
        std::vector<PolyMod::Term> terms;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            std::uint32_t v = A.at(r, prods.size() + k);
            if (v) terms.emplace_back(Monomial(tuples[pivots[r]]), v);
        }
        PolyMod expr = PolyMod::from_terms(m, p, std::move(terms));
        if (expr.substitute(fvec) != targets[k]) {
            res.status = MembershipResult::Status::NotInSpan;
            res.expressions.clear();
            return res;
        }
        res.expressions.push_back(std::move(expr));
    }
    res.status = MembershipResult::Status::Found;
    return res;
}

std::vector<PolyMod> dixmier_retract(const HDSpec& spec, const SliceCandidate& cand) {
    for (const auto& im : spec.images)
        if (!im.exact())
            throw std::invalid_argument("dixmier_retract: generator images are not exact");
    auto ims = images_through(spec, spec.window);
    TruncatedSeries phi_s = series_eval(cand.s, ims);
    auto deg = phi_s.t_degree();
    if (!deg || *deg != 1 || !phi_s.coeff(1).is_constant())
        throw std::invalid_argument("dixmier_retract: slice image is not s + c t");
    if (!is_iterative_up_to(spec, spec.window).pass)
        throw std::invalid_argument("dixmier_retract: family is not iterative in the window");
    std::uint32_t c = phi_s.coeff(1).terms().front().second;
    std::uint32_t scale = (spec.p - inv_mod(c, spec.p)) % spec.p;  // -c^{-1}
    PolyMod u = cand.s.scaled(scale);
    std::vector<PolyMod> out;
    for (std::uint32_t k = 0; k < spec.arity; ++k) {
        PolyMod pi = series_substitute_t_poly(ims[k], u);
        if (!fixes_polynomial(spec, pi).pass)
            throw std::logic_error("dixmier_retract: proposal failed kernel re-verification");
        out.push_back(std::move(pi));
    }
    return out;
}

ConjugationReport conjugation_check(std::span<const PolyMod> F, std::span<const PolyZ> sigma,
                                    std::span<const PolyZ> sigma_inv, std::uint32_t order) {
    ConjugationReport rep;
    const std::uint32_t n = F[0].arity();
    const std::uint32_t p = F[0].modulus();
    if (sigma.size() != n || sigma_inv.size() != n)
        throw std::invalid_argument("conjugation_check: one image per generator required");

    // precondition: mod-p inverse on generators
    std::vector<PolyMod> sig, sig_inv;
    for (std::uint32_t k = 0; k < n; ++k) {
        sig.push_back(reduce_mod_p(sigma[k], p));
        sig_inv.push_back(reduce_mod_p(sigma_inv[k], p));
    }
    for (std::uint32_t k = 0; k < n; ++k) {
        if (sig[k].substitute(sig_inv) != PolyMod::variable(n, p, k) ||
            sig_inv[k].substitute(sig) != PolyMod::variable(n, p, k))
            throw std::invalid_argument("conjugation_check: sigma inverse check failed");
    }
    // lifted composition exactness decides whether equality is guaranteed
    rep.z_exact_lift = true;
    for (std::uint32_t k = 0; k < n; ++k) {
        std::vector<PolyZ> si(sigma_inv.begin(), sigma_inv.end());
        std::vector<PolyZ> ss(sigma.begin(), sigma.end());
        if (sigma[k].substitute(si) != PolyZ::variable(n, k) ||
            sigma_inv[k].substitute(ss) != PolyZ::variable(n, k))
            rep.z_exact_lift = false;
    }

    DerivationZ d = delta_tilde(F);
    ExpOutcome base = exp_map(d, p, order);
    if (!base.defined()) {
        rep.status = ConjugationReport::Status::BaseUndefined;
        return rep;
    }
    // conjugated derivation over Z: e(x_k) = sigma_inv(d(sigma(x_k)))
    DerivationZ e;
    e.arity = n;
    std::vector<PolyZ> si(sigma_inv.begin(), sigma_inv.end());
    for (std::uint32_t k = 0; k < n; ++k) e.coeffs.push_back(d.apply(sigma[k]).substitute(si));
    ExpOutcome conj = exp_map(e, p, order);
    if (!conj.defined()) {
        rep.status = ConjugationReport::Status::ConjugateUndefined;
        return rep;
    }
    // right-hand side: conjugate the base series
    for (std::uint32_t k = 0; k < n; ++k) {
        TruncatedSeries ser = series_eval(sig[k], base.images);
        for (std::uint32_t ell = 0; ell <= order; ++ell) {
            PolyMod rhs = ser.coeff(ell).substitute(sig_inv);
            if (conj.images[k].coeff(ell) != rhs) {
                rep.status = ConjugationReport::Status::Mismatch;
                rep.generator = k;
                rep.order = ell;
                return rep;
            }
        }
    }
    rep.status = ConjugationReport::Status::Pass;
    return rep;
}

// ---------- complementary variable by degree reduction ----------

namespace {

struct PolyMap {
    std::vector<PolyMod> im;  // images of the generators
};

PolyMod apply_map(const PolyMod& f, const PolyMap& m) { return f.substitute(m.im); }

// ring-hom composition: (a . b)(x_k) = a(b(x_k))
PolyMap compose(const PolyMap& a, const PolyMap& b) {
    PolyMap r;
    for (const auto& bi : b.im) r.im.push_back(bi.substitute(a.im));
    return r;
}

PolyMod top_form(const PolyMod& f) {
    std::uint64_t d = f.degree();
    std::vector<PolyMod::Term> terms;
    for (const auto& t : f.terms())
        if (t.first.degree() == d) terms.push_back(t);
    return PolyMod::from_terms(f.arity(), f.modulus(), std::move(terms));
}

// top = c * (a x + b y)^d ?
std::optional<std::array<std::uint32_t, 3>> power_of_linear(const PolyMod& top,
                                                            std::uint64_t d) {
    const std::uint32_t p = top.modulus();
    if (d > 4096) return std::nullopt;
    std::vector<std::array<std::uint32_t, 2>> dirs;
    for (std::uint32_t b = 0; b < p; ++b) dirs.push_back({1, b});
    dirs.push_back({0, 1});
    std::vector<std::uint32_t> row(d + 1, 0);
    row[0] = 1 % p;
    for (std::uint64_t i = 1; i <= d; ++i)
        for (std::uint64_t r = i; r-- > 0;) row[r + 1] = (row[r + 1] + row[r]) % p;
    for (auto [a, b] : dirs) {
        // binomial expansion of (a x + b y)^d mod p
        std::vector<PolyMod::Term> terms;
        for (std::uint64_t i = 0; i <= d; ++i) {
            std::uint64_t c = static_cast<std::uint64_t>(row[i]) * pow_mod(a, i, p) % p *
                              pow_mod(b, d - i, p) % p;
            if (c)
                terms.emplace_back(
                    Monomial({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(d - i)}),
                    static_cast<std::uint32_t>(c));
        }
        PolyMod ref = PolyMod::from_terms(top.arity(), p, std::move(terms));
        if (ref.terms().size() != top.terms().size() || ref.is_zero()) continue;
        std::uint32_t scale =
            static_cast<std::uint32_t>(static_cast<std::uint64_t>(top.terms().front().second) *
                                       inv_mod(ref.terms().front().second, p) % p);
        if (ref.scaled(scale) == top) return std::array<std::uint32_t, 3>{scale, a, b};
    }
    return std::nullopt;
}

}  // namespace

std::optional<PolyMod> complement_by_reduction(const PolyMod& f0) {
    if (f0.arity() != 2) return std::nullopt;
    const std::uint32_t p = f0.modulus();
    PolyMod f = f0;
    PolyMap U{{PolyMod::variable(2, p, 0), PolyMod::variable(2, p, 1)}};  // inverse word
    const auto var_x = PolyMod::variable(2, p, 0);
    const auto var_y = PolyMod::variable(2, p, 1);

    for (int steps = 0; f.degree() > 1; ++steps) {
        if (steps > 256) return std::nullopt;
        const std::uint64_t d = f.degree();
        auto dir = power_of_linear(top_form(f), d);
        if (!dir) return std::nullopt;
        auto [c, a, b] = *dir;
        // linear move sending the direction a x + b y to y
        PolyMap nu, nu_inv;
        if (b != 0) {
            std::uint32_t binv = inv_mod(b, p);
            PolyMod ny(2, p);
            ny.add_term(Monomial({0, 1}), binv);
            ny.add_term(Monomial({1, 0}), -static_cast<std::int64_t>(
                                              static_cast<std::uint64_t>(a) * binv % p));
            nu = PolyMap{{var_x, ny}};
            PolyMod iy(2, p);
            iy.add_term(Monomial({1, 0}), a);
            iy.add_term(Monomial({0, 1}), b);
            nu_inv = PolyMap{{var_x, iy}};
        } else {
            std::uint32_t ainv = inv_mod(a, p);
            PolyMod nx(2, p);
            nx.add_term(Monomial({0, 1}), ainv);
            nu = PolyMap{{nx, var_x}};
            PolyMod ix(2, p);
            ix.add_term(Monomial({1, 0}), a);
            nu_inv = PolyMap{{var_y, ix}};
        }
        PolyMod f2 = apply_map(f, nu);
        if (f2.degree() != d) return std::nullopt;
        // shear killing the pure-y top term
        bool reduced = false;
        for (std::uint32_t k = 1; k <= d && !reduced; ++k) {
            for (std::uint32_t u = 1; u < p && !reduced; ++u) {
                PolyMod sy(2, p);  // y -> y + u x^k
                sy.add_term(Monomial({0, 1}), 1);
                sy.add_term(Monomial({k, 0}), u);
                PolyMap sh{{var_x, sy}};
                PolyMod cand = apply_map(f2, sh);
                if (cand.degree() < d) {
                    PolyMod syi(2, p);
                    syi.add_term(Monomial({0, 1}), 1);
                    syi.add_term(Monomial({k, 0}), -static_cast<std::int64_t>(u));
                    U = compose(compose(U, nu_inv), PolyMap{{var_x, syi}});
                    f = cand;
                    reduced = true;
                    break;
                }
                PolyMod sx(2, p);  // x -> x + u y^k
                sx.add_term(Monomial({1, 0}), 1);
                sx.add_term(Monomial({0, k}), u);
                PolyMap sh2{{sx, var_y}};
                cand = apply_map(f2, sh2);
                if (cand.degree() < d) {
                    PolyMod sxi(2, p);
                    sxi.add_term(Monomial({1, 0}), 1);
                    sxi.add_term(Monomial({0, k}), -static_cast<std::int64_t>(u));
                    U = compose(compose(U, nu_inv), PolyMap{{sxi, var_y}});
                    f = cand;
                    reduced = true;
                    break;
                }
            }
        }
        if (!reduced) return std::nullopt;
    }
    if (f.degree() != 1) return std::nullopt;
    Monomial my({0, 1});
    PolyMod m_lin = f.coeff(my) != 0 ? var_x : var_y;
    PolyMod mate = apply_map(m_lin, U);
    // consistency: pulling the reduced polynomial back must reproduce f0
    if (apply_map(f, U) != f0) return std::nullopt;
    return mate;
}

// ---------- decision pipelines ----------

namespace {

// solve phi(s) = s + t with s supported on monomials of degree 1..k, using
// the given t-orders as equations; returns the particular solution and the
// homogeneous basis when requested
struct SliceSolve {
    PolyMod s;
    std::vector<PolyMod> kernel;
};

std::optional<SliceSolve> solve_exact_slice(const HDSpec& spec,
                                            const std::vector<TruncatedSeries>& cols,
                                            const std::vector<Monomial>& mons,
                                            const std::vector<std::uint32_t>& orders,
                                            std::uint32_t kmax, bool want_kernel) {
    const std::uint32_t p = spec.p;
    for (std::uint32_t k = 1; k <= kmax; ++k) {
        std::vector<std::size_t> use;
        for (std::size_t c = 0; c < mons.size(); ++c) {
            std::uint64_t dm = mons[c].degree();
            if (dm >= 1 && dm <= k) use.push_back(c);
        }
        if (use.empty()) continue;
        // rows: (order, ambient monomial)
        std::vector<std::pair<std::uint32_t, Monomial>> keys;
        for (auto c : use)
            for (auto ell : orders)
                for (const auto& t : cols[c].coeff(ell).terms()) keys.emplace_back(ell, t.first);
        keys.emplace_back(1, Monomial(spec.arity));  // the rhs row for c = 1
        std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first < b.first;
            return monomial_less(a.second, b.second);
        });
        keys.erase(std::unique(keys.begin(), keys.end(),
                               [](const auto& a, const auto& b) {
                                   return a.first == b.first && a.second == b.second;
                               }),
                   keys.end());
        auto key_row = [&](std::uint32_t ell, const Monomial& m) {
            auto it = std::lower_bound(keys.begin(), keys.end(), std::make_pair(ell, m),
                                       [](const auto& a, const auto& b) {
                                           if (a.first != b.first) return a.first < b.first;
                                           return monomial_less(a.second, b.second);
                                       });
            return static_cast<std::size_t>(it - keys.begin());
        };
        ModMatrix A(keys.size(), use.size(), p);
        std::vector<std::uint32_t> rhs(keys.size(), 0);
        for (std::size_t ci = 0; ci < use.size(); ++ci)
            for (auto ell : orders)
                for (const auto& t : cols[use[ci]].coeff(ell).terms())
                    A.at(key_row(ell, t.first), ci) = t.second;
        rhs[key_row(1, Monomial(spec.arity))] = 1;
        auto sol = solve(A, rhs);
        if (!sol) continue;
        SliceSolve out{PolyMod(spec.arity, p), {}};
        {
            std::vector<PolyMod::Term> terms;
            for (std::size_t ci = 0; ci < use.size(); ++ci)
                if ((*sol)[ci]) terms.emplace_back(mons[use[ci]], (*sol)[ci]);
            out.s = PolyMod::from_terms(spec.arity, p, std::move(terms));
        }
        if (want_kernel) {
            for (const auto& v : nullspace(A)) {
                std::vector<PolyMod::Term> terms;
                for (std::size_t ci = 0; ci < use.size(); ++ci)
                    if (v[ci]) terms.emplace_back(mons[use[ci]], v[ci]);
                if (!terms.empty())
                    out.kernel.push_back(PolyMod::from_terms(spec.arity, p, std::move(terms)));
                if (out.kernel.size() >= 8) break;
            }
        }
        return out;
    }
    return std::nullopt;
}

void push_unique(std::vector<PolyMod>& list, const PolyMod& c) {
    if (c.is_zero() || c.is_constant()) return;
    for (const auto& e : list)
        if (e == c) return;
    list.push_back(c);
}

std::uint64_t max_degree(std::span<const PolyMod> F) {
    std::uint64_t d = 1;
    for (const auto& f : F) d = std::max(d, f.degree());
    return d;
}

Verdict decide_core(std::span<const PolyMod> F, const Budgets& budgets) {
    Verdict v;
    v.budgets = budgets;
    const std::uint32_t n = F[0].arity();
    const std::uint32_t p = F[0].modulus();
    if (F.size() != n - 1)
        throw std::invalid_argument("decide: tuple must have n-1 components");
    for (const auto& f : F)
        if (f.is_constant()) throw std::invalid_argument("decide: components must be nonconstant");

    const std::uint64_t degF = max_degree(F);
    const std::uint32_t dmax = budgets.effective_dmax(degF);

    // (0) the Jacobian derivation must be nonzero mod p: the determinant of a
    // coordinate system is a unit, so a vanishing row of cofactors is final
    DerivationZ d = delta_tilde(F);
    if (reduce_mod_p(d, p).is_zero()) {
        v.answer = Verdict::Answer::No;
        v.witness = ZeroJacobianWitness{};
        v.diagnostics.push_back("Jacobian derivation vanishes mod p");
        return v;
    }

    // (1) canonical exp map with valuation checks
    HDSpec spec = HDSpec::canonical(std::vector<PolyMod>(F.begin(), F.end()), budgets.trunc);
    if (spec.failure) {
        if (legendre_e(spec.failure->ell, p) <= 1) {
            v.answer = Verdict::Answer::No;
            v.witness = *spec.failure;
            return v;
        }
        v.diagnostics.push_back(
            "valuation failure at order " + std::to_string(spec.failure->ell) +
            " (e(l) >= 2: representative-dependent, not conclusive)");
    }

    // (2) iterativity within the window; for the canonical family a failure
    // beyond the representative-independent range is only diagnostic
    IterativityReport iter = is_iterative_up_to(spec, spec.window);
    if (!iter.pass)
        v.diagnostics.push_back("iterativity mismatch at s^" + std::to_string(iter.i) + " t^" +
                                std::to_string(iter.j) + " on generator " +
                                std::to_string(iter.generator));

    // (3) algebraic independence
    IndependenceResult indep = algebraic_independence(F, dmax);
    if (indep.kind == IndependenceResult::Kind::Dependent) {
        v.answer = Verdict::Answer::No;
        v.witness = indep;
        return v;
    }
    if (indep.kind == IndependenceResult::Kind::Inconclusive)
        v.diagnostics.push_back("independence undecided at budget");

    // (4) certificate search: solved slices, reduction mates, then the
    // candidate heuristics; every hit is substitution-verified
    std::vector<PolyMod> candidates;
    {
        auto mons = monomials_up_to_degree(n, std::min<std::uint32_t>(dmax, 8));
        auto cols = phi_on_monomials(spec, mons);
        std::uint32_t kcap = std::min<std::uint32_t>(dmax, 8);

        std::vector<std::uint32_t> full_orders;
        for (std::uint32_t ell = 1; ell <= spec.window; ++ell) full_orders.push_back(ell);
        if (!full_orders.empty()) {
            if (auto r = solve_exact_slice(spec, cols, mons, full_orders, kcap, false))
                push_unique(candidates, r->s);
        }
        bool all_exact = true;
        for (const auto& im : spec.images) all_exact = all_exact && im.exact();
        if (!all_exact || spec.failure) {
            // trusted windows: orders where the values cannot be lift artifacts
            std::vector<std::uint32_t> trusted;
            for (std::uint32_t ell = 1; ell <= std::min<std::uint32_t>(spec.window, 2 * p - 1);
                 ++ell)
                trusted.push_back(ell);
            if (auto r = solve_exact_slice(spec, cols, mons, trusted, kcap, true)) {
                push_unique(candidates, r->s);
                for (const auto& h : r->kernel)
                    for (std::uint32_t c = 1; c < p; ++c) push_unique(candidates, r->s + h.scaled(c));
            }
            std::vector<std::uint32_t> low;
            for (std::uint32_t ell = 1; ell < std::min<std::uint32_t>(spec.window + 1, p); ++ell)
                low.push_back(ell);
            if (!low.empty() && low.size() != trusted.size()) {
                if (auto r = solve_exact_slice(spec, cols, mons, low, kcap, true)) {
                    push_unique(candidates, r->s);
                    for (const auto& h : r->kernel)
                        for (std::uint32_t c = 1; c < p; ++c)
                            push_unique(candidates, r->s + h.scaled(c));
                }
            }
        }
    }
    if (n == 2) {
        if (auto mate = complement_by_reduction(F[0])) push_unique(candidates, *mate);
    }
    for (std::uint32_t k = 0; k < n; ++k) push_unique(candidates, PolyMod::variable(n, p, k));
    for (const auto& m : monomials_up_to_degree(n, 3))
        if (m.degree() >= 1) push_unique(candidates, PolyMod::from_terms(n, p, {{m, 1}}));
    {
        std::mt19937_64 rng(budgets.seed);
        std::uniform_int_distribution<std::uint32_t> coeff(1, p - 1);
        std::uint32_t rdeg = static_cast<std::uint32_t>(std::min<std::uint64_t>(degF + 1, 5));
        auto rmons = monomials_up_to_degree(n, rdeg);
        std::uniform_int_distribution<std::size_t> pick(0, rmons.size() - 1);
        for (std::uint32_t i = 0; i < budgets.slice_candidates; ++i) {
            PolyMod r(n, p);
            for (int t = 0; t < 3; ++t) r.add_term(rmons[pick(rng)], coeff(rng));
            push_unique(candidates, r);
        }
    }

    std::vector<PolyMod> targets;
    for (std::uint32_t k = 0; k < n; ++k) targets.push_back(PolyMod::variable(n, p, k));
    std::size_t tried = 0;
    for (const auto& s : candidates) {
        if (tried >= budgets.slice_candidates) break;
        ++tried;
        std::vector<PolyMod> gens(F.begin(), F.end());
        gens.push_back(s);
        std::uint64_t degS = s.degree();
        std::uint64_t D = std::max(degF, degS);
        std::vector<std::uint32_t> ladder;
        ladder.push_back(static_cast<std::uint32_t>(std::max<std::uint64_t>(degF + degS, dmax)));
        if (D * D > ladder.back()) ladder.push_back(static_cast<std::uint32_t>(D * D));
        for (auto dm : ladder) {
            MembershipResult mem = subalgebra_membership(targets, gens, dm, budgets.dim_cap);
            if (mem.status == MembershipResult::Status::Found) {
                Certificate cert;
                cert.slice = s;
                cert.expressions = std::move(mem.expressions);
                if (!cert.reverify(F)) throw std::logic_error("certificate failed re-check");
                v.answer = Verdict::Answer::Yes;
                v.certificate = std::move(cert);
                return v;
            }
            if (mem.status == MembershipResult::Status::CapExceeded) {
                v.diagnostics.push_back("membership dimension cap exceeded");
                break;
            }
        }
    }

    // (5) no conclusion: report the bounded evidence
    v.answer = Verdict::Answer::Unknown;
    LocalFiniteness lf = is_locally_finite_up_to(spec);
    switch (lf.kind) {
        case LocalFiniteness::Kind::ExactPolynomial:
            v.diagnostics.push_back("images are exact polynomials of t-degree " +
                                    std::to_string(lf.observed_degree));
            break;
        case LocalFiniteness::Kind::ZeroTailWindow:
            v.diagnostics.push_back("zero tail after t-degree " +
                                    std::to_string(lf.observed_degree) + " within window " +
                                    std::to_string(lf.window));
            break;
        case LocalFiniteness::Kind::NotWithinWindow:
            v.diagnostics.push_back("nonzero coefficients at the top of window " +
                                    std::to_string(lf.window));
            break;
    }
    v.diagnostics.push_back("no slice with verified membership among " + std::to_string(tried) +
                            " candidates (dmax " + std::to_string(dmax) + ", trunc " +
                            std::to_string(budgets.trunc) + ")");
    return v;
}

}  // namespace

Verdict decide_extendable(std::span<const PolyMod> F, const Budgets& budgets) {
    if (F.empty()) throw std::invalid_argument("decide_extendable: empty tuple");
    return decide_core(F, budgets);
}

Verdict decide_variable(const PolyMod& f, const Budgets& budgets) {
    if (f.arity() != 2) throw std::invalid_argument("decide_variable: two variables required");
    if (f.is_constant()) throw std::invalid_argument("decide_variable: f must be nonconstant");
    std::vector<PolyMod> F{f};
    Verdict v = decide_core(F, budgets);
    // soft evidence: does the bounded kernel lie in the span of powers of f?
    if (v.answer != Verdict::Answer::No) {
        HDSpec spec = HDSpec::canonical(F, budgets.trunc);
        std::uint32_t kd =
            std::min<std::uint32_t>(budgets.effective_dmax(f.degree()),
                                    static_cast<std::uint32_t>(2 * f.degree()));
        try {
            KernelBasis kb = kernel_up_to_degree(spec, kd, budgets.trunc);
            bool all_in = true;
            std::vector<PolyMod> gens{f};
            for (const auto& b : kb.basis) {
                MembershipResult mem = subalgebra_membership(std::vector<PolyMod>{b}, gens,
                                                             kd + static_cast<std::uint32_t>(
                                                                       f.degree()),
                                                             budgets.dim_cap);
                if (mem.status != MembershipResult::Status::Found) {
                    all_in = false;
                    break;
                }
            }
            v.diagnostics.push_back(std::string("kernel basis (degree <= ") + std::to_string(kd) +
                                    ") " + (all_in ? "lies in" : "is NOT contained in") +
                                    " the span of powers of f");
        } catch (const std::length_error&) {
            v.diagnostics.push_back("kernel summary skipped: dimension cap");
        }
    }
    return v;
}

Verdict decide_univariate(const PolyMod& f, const Budgets& budgets) {
    if (f.arity() != 2) throw std::invalid_argument("decide_univariate: two variables required");
    if (f.is_constant()) throw std::invalid_argument("decide_univariate: f must be nonconstant");
    const std::uint32_t p = f.modulus();
    if (f.derivative(0).is_zero() && f.derivative(1).is_zero())
        throw std::domain_error(
            "decide_univariate: both partial derivatives vanish mod p (f lies in k[x^p, y^p])");

    Verdict v;
    v.budgets = budgets;
    std::vector<PolyMod> F{f};
    HDSpec spec = HDSpec::canonical(F, budgets.trunc);
    if (spec.failure && legendre_e(spec.failure->ell, p) <= 1) {
        v.answer = Verdict::Answer::No;
        v.witness = *spec.failure;
        return v;
    }
    if (spec.failure)
        v.diagnostics.push_back("valuation failure at order " + std::to_string(spec.failure->ell) +
                                " (not conclusive)");
    IterativityReport iter = is_iterative_up_to(spec, spec.window);
    if (!iter.pass)
        v.diagnostics.push_back("iterativity mismatch on generator " +
                                std::to_string(iter.generator));

    // extract a minimal-degree nonconstant kernel element and certify it
    const std::uint32_t dmax = budgets.effective_dmax(f.degree());
    std::uint32_t kd = std::min<std::uint32_t>(dmax, static_cast<std::uint32_t>(f.degree()) + 2);
    KernelBasis kb = kernel_up_to_degree(spec, kd, budgets.trunc, budgets.dim_cap);
    std::optional<PolyMod> g;
    for (const auto& b : kb.basis) {
        if (b.is_constant()) continue;
        if (!g || b.degree() < g->degree() || (b.degree() == g->degree() && poly_less(b, *g)))
            g = b;
    }
    if (!g) {
        v.answer = Verdict::Answer::Unknown;
        v.diagnostics.push_back("no nonconstant kernel element of degree <= " +
                                std::to_string(kd));
        return v;
    }
    Verdict gv = decide_variable(*g, budgets);
    if (gv.answer != Verdict::Answer::Yes) {
        v.answer = Verdict::Answer::Unknown;
        v.diagnostics.push_back("minimal kernel element not certified as a variable");
        for (const auto& dstr : gv.diagnostics) v.diagnostics.push_back("  " + dstr);
        return v;
    }
    // f must be a polynomial in g
    std::vector<PolyMod> gens{*g};
    MembershipResult mem = subalgebra_membership(
        std::vector<PolyMod>{f}, gens,
        static_cast<std::uint32_t>(std::max<std::uint64_t>(f.degree(), g->degree())) + 1,
        budgets.dim_cap);
    if (mem.status != MembershipResult::Status::Found) {
        v.answer = Verdict::Answer::Unknown;
        v.diagnostics.push_back("f not expressed in powers of the kernel variable at budget");
        return v;
    }
    UnivariatePayload payload;
    payload.g = *g;
    payload.g_cert = *gv.certificate;
    payload.expression = mem.expressions.front();
    v.answer = Verdict::Answer::Yes;
    v.univariate = std::move(payload);
    v.certificate = gv.certificate;  // certificate for g doubles as evidence
    return v;
}

}  // namespace hdjac
