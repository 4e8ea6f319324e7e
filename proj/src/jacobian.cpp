#include "hdjac/jacobian.hpp"

#include "hdjac/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace hdjac {

PolyZ DerivationZ::apply(const PolyZ& g) const {
    if (g.arity() != arity) throw std::invalid_argument("derivation arity mismatch");
    PolyZ acc(arity);
    for (std::uint32_t i = 0; i < arity; ++i) {
        if (coeffs[i].is_zero()) continue;
        acc = acc + coeffs[i] * g.derivative(i);
    }
    return acc;
}

bool DerivationZ::is_zero() const {
    for (const auto& c : coeffs)
        if (!c.is_zero()) return false;
    return true;
}

PolyMod DerivationMod::apply(const PolyMod& g) const {
    if (g.arity() != arity) throw std::invalid_argument("derivation arity mismatch");
    PolyMod acc(arity, p);
    for (std::uint32_t i = 0; i < arity; ++i) {
        if (coeffs[i].is_zero()) continue;
        acc = acc + coeffs[i] * g.derivative(i);
    }
    return acc;
}

bool DerivationMod::is_zero() const {
    for (const auto& c : coeffs)
        if (!c.is_zero()) return false;
    return true;
}

PolyZ lift_with(const PolyMod& g, LiftPolicy policy) {
    return policy == LiftPolicy::Balanced ? lift_balanced(g) : lift_canonical(g);
}

DerivationMod reduce_mod_p(const DerivationZ& d, std::uint32_t p) {
    DerivationMod r;
    r.arity = d.arity;
    r.p = p;
    for (const auto& c : d.coeffs) r.coeffs.push_back(reduce_mod_p(c, p));
    return r;
}

DerivationZ lift_with(const DerivationMod& d, LiftPolicy policy) {
    DerivationZ r;
    r.arity = d.arity;
    for (const auto& c : d.coeffs) r.coeffs.push_back(lift_with(c, policy));
    return r;
}

namespace {

// determinant of a square matrix of PolyZ by cofactor expansion; sizes here
// are tiny (n-1 <= 3 in practice)
PolyZ det_poly(const std::vector<std::vector<PolyZ>>& m, std::uint32_t arity) {
    const std::size_t n = m.size();
    if (n == 0) return PolyZ::constant(arity, 1);
    if (n == 1) return m[0][0];
    PolyZ acc(arity);
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<PolyZ>> sub;
        sub.reserve(n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<PolyZ> row;
            row.reserve(n - 1);
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            sub.push_back(std::move(row));
        }
        PolyZ term = m[0][j] * det_poly(sub, arity);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

}  // namespace

DerivationZ delta_tilde(std::span<const PolyMod> F, LiftPolicy policy) {
    if (F.empty()) throw std::invalid_argument("delta_tilde: empty tuple");
    const std::uint32_t n = F[0].arity();
    if (F.size() != n - 1)
        throw std::invalid_argument("delta_tilde: tuple must have arity-1 components");
    const std::uint32_t p = F[0].modulus();
    for (const auto& f : F)
        if (f.arity() != n || f.modulus() != p)
            throw std::invalid_argument("delta_tilde: mixed arity or modulus");

    // Jacobian rows of the lifted F
    std::vector<std::vector<PolyZ>> jac(n - 1, std::vector<PolyZ>());
    for (std::uint32_t i = 0; i < n - 1; ++i) {
        PolyZ fi = lift_with(F[i], policy);
        for (std::uint32_t j = 0; j < n; ++j) jac[i].push_back(fi.derivative(j));
    }

    DerivationZ d;
    d.arity = n;
    for (std::uint32_t j = 0; j < n; ++j) {
        std::vector<std::vector<PolyZ>> minor;
        minor.reserve(n - 1);
        for (std::uint32_t i = 0; i < n - 1; ++i) {
            std::vector<PolyZ> row;
            row.reserve(n - 1);
            for (std::uint32_t k = 0; k < n; ++k)
                if (k != j) row.push_back(jac[i][k]);
            minor.push_back(std::move(row));
        }
        PolyZ cof = det_poly(minor, n);
        // expansion along the last row (index n, 1-based): sign (-1)^(n + j+1)
        if ((n + j + 1) % 2 != 0) cof = -cof;
        d.coeffs.push_back(std::move(cof));
    }
    return d;
}

DerivationMod delta_modp(std::span<const PolyMod> F) {
    DerivationZ dz = delta_tilde(F, LiftPolicy::Balanced);
    return reduce_mod_p(dz, F[0].modulus());
}

PolyZ bracket_apply(const DerivationZ& d, const PolyZ& g) { return d.apply(g); }

PolyZ bracket_power(const DerivationZ& d, const PolyZ& g, std::uint32_t ell) {
    if (ell == 0) return g;
    PolyZ cur = g;
    for (std::uint32_t i = 0; i < ell; ++i) {
        cur = d.apply(cur);
        if (cur.is_zero()) break;
    }
    return cur;
}

std::uint64_t legendre_e(std::uint64_t ell, std::uint32_t p) {
    std::uint64_t e = 0;
    for (std::uint64_t q = p; q <= ell; q *= p) {
        e += ell / q;
        if (q > ell / p) break;  // avoid overflow of q *= p
    }
    return e;
}

std::uint32_t m_inverse_mod_p(std::uint64_t ell, std::uint32_t p) {
    return inv_mod(FactorialSplit::compute(ell, p).m_mod_p, p);
}

FactorialSplit FactorialSplit::compute(std::uint64_t ell, std::uint32_t p) {
    if (ell == 0) throw std::invalid_argument("factorial split needs ell >= 1");
    std::uint64_t m = 1;
    for (std::uint64_t i = 1; i <= ell; ++i) {
        std::uint64_t v = i;
        while (v % p == 0) v /= p;
        m = m * (v % p) % p;
    }
    FactorialSplit s;
    s.ell = ell;
    s.e = legendre_e(ell, p);
    s.m_mod_p = static_cast<std::uint32_t>(m);
    s.m_inv = inv_mod(s.m_mod_p, p);
    return s;
}

namespace {

PolyMod det_poly_mod(const std::vector<std::vector<PolyMod>>& m, std::uint32_t arity,
                     std::uint32_t p) {
    const std::size_t n = m.size();
    if (n == 0) return PolyMod::constant(arity, p, 1);
    if (n == 1) return m[0][0];
    PolyMod acc(arity, p);
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<PolyMod>> sub;
        sub.reserve(n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<PolyMod> row;
            row.reserve(n - 1);
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            sub.push_back(std::move(row));
        }
        PolyMod term = m[0][j] * det_poly_mod(sub, arity, p);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

// exponent tuples alpha with sum alpha_i * weight_i <= budget, deterministic order
std::vector<std::vector<std::uint32_t>> weighted_tuples(const std::vector<std::uint32_t>& weights,
                                                        std::uint32_t budget) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur(weights.size(), 0);
    auto rec = [&](auto&& self, std::size_t idx, std::uint32_t left) -> void {
        if (idx == weights.size()) {
            out.push_back(cur);
            return;
        }
        std::uint32_t w = std::max<std::uint32_t>(weights[idx], 1);
        for (std::uint32_t a = 0; a * w <= left; ++a) {
            cur[idx] = a;
            self(self, idx + 1, left - a * w);
        }
        cur[idx] = 0;
    };
    rec(rec, 0, budget);
    return out;
}

}  // namespace

IndependenceResult algebraic_independence(std::span<const PolyMod> F, std::uint32_t dmax) {
    IndependenceResult res;
    if (F.empty()) throw std::invalid_argument("algebraic_independence: empty tuple");
    const std::uint32_t n = F[0].arity();
    const std::uint32_t p = F[0].modulus();
    const std::uint32_t m = static_cast<std::uint32_t>(F.size());

    // constant component: immediate degree-1 relation
    for (std::uint32_t i = 0; i < m; ++i) {
        if (F[i].is_constant()) {
            PolyMod w = PolyMod::variable(m, p, i);
            std::int64_t c = F[i].is_zero() ? 0 : F[i].terms()[0].second;
            w.add_term(Monomial(m), -c);
            res.kind = IndependenceResult::Kind::Dependent;
            res.witness = w;
            res.detail = "constant component";
            return res;
        }
    }

    // Jacobian rank certificate: some (n-1)-minor nonzero mod p
    if (m == n - 1) {
        std::vector<std::vector<PolyMod>> jac(m);
        for (std::uint32_t i = 0; i < m; ++i)
            for (std::uint32_t j = 0; j < n; ++j) jac[i].push_back(F[i].derivative(j));
        for (std::uint32_t skip = 0; skip < n; ++skip) {
            std::vector<std::vector<PolyMod>> minor(m);
            for (std::uint32_t i = 0; i < m; ++i)
                for (std::uint32_t j = 0; j < n; ++j)
                    if (j != skip) minor[i].push_back(jac[i][j]);
            if (!det_poly_mod(minor, n, p).is_zero()) {
                res.kind = IndependenceResult::Kind::Independent;
                res.detail = "nonzero Jacobian minor";
                return res;
            }
        }
    }

    // bounded annihilator search: a nonzero R with R(F) = 0
    std::vector<std::uint32_t> weights;
    for (const auto& f : F) weights.push_back(static_cast<std::uint32_t>(f.degree()));
    auto tuples = weighted_tuples(weights, dmax);
    std::vector<PolyMod> prods;
    prods.reserve(tuples.size());
    {
        std::vector<std::vector<PolyMod>> pows(m);
        for (std::uint32_t i = 0; i < m; ++i) pows[i].push_back(PolyMod::constant(n, p, 1));
        for (const auto& alpha : tuples) {
            PolyMod prod = PolyMod::constant(n, p, 1);
            for (std::uint32_t i = 0; i < m; ++i) {
                while (pows[i].size() <= alpha[i]) pows[i].push_back(pows[i].back() * F[i]);
                if (alpha[i]) prod = prod * pows[i][alpha[i]];
            }
            prods.push_back(std::move(prod));
        }
    }
    // row space: ambient monomials occurring in the products
    std::vector<Monomial> row_keys;
    for (const auto& q : prods)
        for (const auto& t : q.terms()) row_keys.push_back(t.first);
    std::sort(row_keys.begin(), row_keys.end(), monomial_less);
    row_keys.erase(std::unique(row_keys.begin(), row_keys.end()), row_keys.end());
    if (row_keys.empty()) row_keys.emplace_back(n);

    ModMatrix A(row_keys.size(), prods.size(), p);
    for (std::size_t c = 0; c < prods.size(); ++c)
        for (const auto& t : prods[c].terms()) {
            auto it = std::lower_bound(row_keys.begin(), row_keys.end(), t.first, monomial_less);
            A.at(static_cast<std::size_t>(it - row_keys.begin()), c) = t.second;
        }
    auto null_vecs = nullspace(A);
    if (!null_vecs.empty()) {
        const auto& v = null_vecs.front();
        std::vector<PolyMod::Term> terms;
        for (std::size_t c = 0; c < v.size(); ++c)
            if (v[c]) terms.emplace_back(Monomial(std::vector<std::uint32_t>(tuples[c].begin(),
                                                                             tuples[c].end())),
                                         v[c]);
        PolyMod rel = PolyMod::from_terms(m, p, std::move(terms));
        // re-verify by substitution
        std::vector<PolyMod> fvec(F.begin(), F.end());
        if (rel.substitute(fvec).is_zero() && !rel.is_zero()) {
            res.kind = IndependenceResult::Kind::Dependent;
            res.witness = rel;
            res.detail = "annihilating relation of weighted degree <= " + std::to_string(dmax);
            return res;
        }
    }
    res.kind = IndependenceResult::Kind::Inconclusive;
    res.detail = "no nonzero minor; no relation up to weighted degree " + std::to_string(dmax);
    return res;
}

}  // namespace hdjac
