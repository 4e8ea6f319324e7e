#include "hdjac/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hdjac {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t Monomial::degree() const {
    std::uint64_t d = 0;
    for (auto e : exps) d += e;
    return d;
}

bool monomial_less(const Monomial& a, const Monomial& b) {
    std::uint64_t da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return std::lexicographical_compare(a.exps.begin(), a.exps.end(), b.exps.begin(), b.exps.end());
}

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
    Monomial r(a.arity());
    for (std::size_t i = 0; i < a.exps.size(); ++i) r.exps[i] = a.exps[i] + b.exps[i];
    return r;
}

namespace {

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (auto e : m.exps) h = h * 1099511628211ULL + e;
        return h;
    }
};

void check_same_arity(std::uint32_t a, std::uint32_t b) {
    if (a != b) throw std::invalid_argument("polynomial arity mismatch");
}

std::string monomial_debug(const Monomial& m) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
        if (i) os << ",";
        os << m.exps[i];
    }
    os << ")";
    return os.str();
}

constexpr std::size_t kParallelWork = 1u << 14;

}  // namespace

// ---------- PolyZ ----------

PolyZ PolyZ::constant(std::uint32_t arity, BigInt c) {
    PolyZ r(arity);
    if (c != 0) r.terms_.emplace_back(Monomial(arity), std::move(c));
    return r;
}

PolyZ PolyZ::variable(std::uint32_t arity, std::uint32_t index) {
    if (index >= arity) throw std::out_of_range("variable index out of range");
    PolyZ r(arity);
    Monomial m(arity);
    m.exps[index] = 1;
    r.terms_.emplace_back(std::move(m), 1);
    return r;
}

PolyZ PolyZ::from_terms(std::uint32_t arity, std::vector<Term> terms) {
    PolyZ r(arity);
    r.terms_ = std::move(terms);
    r.normalize();
    return r;
}

void PolyZ::normalize() {
    for (auto& t : terms_)
        if (t.first.arity() != arity_) throw std::invalid_argument("monomial arity mismatch");
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return monomial_less(a.first, b.first); });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second += t.second;
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const Term& t) { return t.second == 0; }),
              out.end());
    terms_ = std::move(out);
}

std::uint64_t PolyZ::degree() const {
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.first.degree());
    return d;
}

void PolyZ::add_term(const Monomial& m, const BigInt& c) {
    if (c == 0) return;
    terms_.emplace_back(m, c);
    normalize();
}

PolyZ PolyZ::operator-() const {
    PolyZ r(arity_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.emplace_back(t.first, -t.second);
    return r;
}

PolyZ operator+(const PolyZ& a, const PolyZ& b) {
    check_same_arity(a.arity(), b.arity());
    PolyZ r(a.arity());
    auto ia = a.terms().begin(), ea = a.terms().end();
    auto ib = b.terms().begin(), eb = b.terms().end();
    while (ia != ea || ib != eb) {
        if (ib == eb || (ia != ea && monomial_less(ia->first, ib->first))) {
            r.terms_.push_back(*ia++);
        } else if (ia == ea || monomial_less(ib->first, ia->first)) {
            r.terms_.push_back(*ib++);
        } else {
            BigInt c = ia->second + ib->second;
            if (c != 0) r.terms_.emplace_back(ia->first, std::move(c));
            ++ia;
            ++ib;
        }
    }
    return r;
}

PolyZ operator-(const PolyZ& a, const PolyZ& b) { return a + (-b); }

PolyZ mul_serial(const PolyZ& a, const PolyZ& b) {
    check_same_arity(a.arity(), b.arity());
    std::unordered_map<Monomial, BigInt, MonomialHash> acc;
    acc.reserve(a.terms().size() * 2);
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms())
            acc[monomial_mul(ta.first, tb.first)] += ta.second * tb.second;
    std::vector<PolyZ::Term> terms;
    terms.reserve(acc.size());
    for (auto& kv : acc)
        if (kv.second != 0) terms.emplace_back(kv.first, std::move(kv.second));
    return PolyZ::from_terms(a.arity(), std::move(terms));
}

PolyZ mul_parallel(const PolyZ& a, const PolyZ& b) {
#ifdef _OPENMP
    check_same_arity(a.arity(), b.arity());
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    int nthreads = omp_get_max_threads();
    std::vector<std::unordered_map<Monomial, BigInt, MonomialHash>> local(nthreads);
#pragma omp parallel num_threads(nthreads)
    {
        auto& acc = local[omp_get_thread_num()];
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(ta.size()); ++i)
            for (const auto& t2 : tb)
                acc[monomial_mul(ta[i].first, t2.first)] += ta[i].second * t2.second;
    }
    std::unordered_map<Monomial, BigInt, MonomialHash> acc;
    for (auto& m : local)
        for (auto& kv : m) acc[kv.first] += kv.second;
    std::vector<PolyZ::Term> terms;
    terms.reserve(acc.size());
    for (auto& kv : acc)
        if (kv.second != 0) terms.emplace_back(kv.first, std::move(kv.second));
    return PolyZ::from_terms(a.arity(), std::move(terms));
#else
    return mul_serial(a, b);
#endif
}

PolyZ operator*(const PolyZ& a, const PolyZ& b) {
    if (a.terms().size() * b.terms().size() >= kParallelWork) return mul_parallel(a, b);
    return mul_serial(a, b);
}

PolyZ PolyZ::scaled(const BigInt& c) const {
    PolyZ r(arity_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.emplace_back(t.first, t.second * c);
    return r;
}

PolyZ PolyZ::derivative(std::uint32_t index) const {
    if (index >= arity_) throw std::out_of_range("derivative index out of range");
    PolyZ r(arity_);
    for (const auto& t : terms_) {
        std::uint32_t e = t.first.exps[index];
        if (e == 0) continue;
        Monomial m = t.first;
        m.exps[index] = e - 1;
        r.terms_.emplace_back(std::move(m), t.second * e);
    }
    r.normalize();
    return r;
}

PolyZ PolyZ::substitute(std::span<const PolyZ> images) const {
    if (images.size() != arity_) throw std::invalid_argument("substitute: wrong image count");
    std::uint32_t out_arity = images.empty() ? arity_ : images[0].arity();
    for (const auto& im : images) check_same_arity(im.arity(), out_arity);
    // cache powers of each image
    std::vector<std::vector<PolyZ>> pow(arity_);
    for (std::uint32_t i = 0; i < arity_; ++i) pow[i].push_back(PolyZ::constant(out_arity, 1));
    PolyZ result(out_arity);
    for (const auto& t : terms_) {
        PolyZ prod = PolyZ::constant(out_arity, t.second);
        for (std::uint32_t i = 0; i < arity_; ++i) {
            std::uint32_t e = t.first.exps[i];
            while (pow[i].size() <= e) pow[i].push_back(pow[i].back() * images[i]);
            if (e) prod = prod * pow[i][e];
        }
        result = result + prod;
    }
    return result;
}

std::optional<std::uint64_t> PolyZ::min_p_valuation(std::uint32_t p) const {
    if (!is_prime(p)) throw std::invalid_argument("modulus is not prime");
    if (terms_.empty()) return std::nullopt;
    std::optional<std::uint64_t> best;
    for (const auto& t : terms_) {
        std::uint64_t v = 0;
        BigInt c = t.second;
        while (c % p == 0) {
            c /= p;
            ++v;
            if (best && v >= *best) break;
        }
        if (!best || v < *best) best = v;
        if (*best == 0) break;
    }
    return best;
}

PolyZ PolyZ::divide_exact_by_p_power(std::uint32_t p, std::uint64_t e) const {
    if (e == 0) return *this;
    BigInt q = 1;
    for (std::uint64_t i = 0; i < e; ++i) q *= p;
    PolyZ r(arity_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        if (t.second % q != 0) {
            std::ostringstream os;
            os << "insufficient p-valuation: coefficient " << t.second << " of monomial "
               << monomial_debug(t.first) << " is not divisible by " << p << "^" << e;
            throw std::domain_error(os.str());
        }
        r.terms_.emplace_back(t.first, t.second / q);
    }
    return r;
}

// ---------- PolyMod ----------

PolyMod::PolyMod(std::uint32_t arity, std::uint32_t p) : arity_(arity), p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("modulus is not prime");
}

PolyMod PolyMod::constant(std::uint32_t arity, std::uint32_t p, std::int64_t c) {
    PolyMod r(arity, p);
    r.add_term(Monomial(arity), c);
    return r;
}

PolyMod PolyMod::variable(std::uint32_t arity, std::uint32_t p, std::uint32_t index) {
    if (index >= arity) throw std::out_of_range("variable index out of range");
    PolyMod r(arity, p);
    Monomial m(arity);
    m.exps[index] = 1;
    r.terms_.emplace_back(std::move(m), 1);
    return r;
}

PolyMod PolyMod::from_terms(std::uint32_t arity, std::uint32_t p, std::vector<Term> terms) {
    PolyMod r(arity, p);
    r.terms_ = std::move(terms);
    r.normalize();
    return r;
}

void PolyMod::normalize() {
    for (auto& t : terms_) {
        if (t.first.arity() != arity_) throw std::invalid_argument("monomial arity mismatch");
        t.second %= p_;
    }
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return monomial_less(a.first, b.first); });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second = (out.back().second + t.second) % p_;
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const Term& t) { return t.second == 0; }),
              out.end());
    terms_ = std::move(out);
}

std::uint64_t PolyMod::degree() const {
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.first.degree());
    return d;
}

bool PolyMod::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.degree() == 0);
}

std::uint32_t PolyMod::coeff(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) {
                                   return monomial_less(t.first, key);
                               });
    if (it != terms_.end() && it->first == m) return it->second;
    return 0;
}

void PolyMod::add_term(const Monomial& m, std::int64_t c) {
    std::int64_t r = c % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    if (r == 0) return;
    terms_.emplace_back(m, static_cast<std::uint32_t>(r));
    normalize();
}

PolyMod PolyMod::operator-() const {
    PolyMod r(arity_, p_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.emplace_back(t.first, p_ - t.second);
    return r;
}

namespace {
void check_same_mod(const PolyMod& a, const PolyMod& b) {
    check_same_arity(a.arity(), b.arity());
    if (a.modulus() != b.modulus()) throw std::invalid_argument("modulus mismatch");
}
}  // namespace

PolyMod operator+(const PolyMod& a, const PolyMod& b) {
    check_same_mod(a, b);
    PolyMod r(a.arity(), a.modulus());
    auto ia = a.terms().begin(), ea = a.terms().end();
    auto ib = b.terms().begin(), eb = b.terms().end();
    const std::uint32_t p = a.modulus();
    while (ia != ea || ib != eb) {
        if (ib == eb || (ia != ea && monomial_less(ia->first, ib->first))) {
            r.terms_.push_back(*ia++);
        } else if (ia == ea || monomial_less(ib->first, ia->first)) {
            r.terms_.push_back(*ib++);
        } else {
            std::uint32_t c = (ia->second + ib->second) % p;
            if (c) r.terms_.emplace_back(ia->first, c);
            ++ia;
            ++ib;
        }
    }
    return r;
}

PolyMod operator-(const PolyMod& a, const PolyMod& b) { return a + (-b); }

PolyMod mul_serial(const PolyMod& a, const PolyMod& b) {
    check_same_mod(a, b);
    const std::uint64_t p = a.modulus();
    std::unordered_map<Monomial, std::uint64_t, MonomialHash> acc;
    acc.reserve(a.terms().size() * 2);
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms()) {
            auto& slot = acc[monomial_mul(ta.first, tb.first)];
            slot += static_cast<std::uint64_t>(ta.second) * tb.second;
            if (slot >= (1ULL << 62)) slot %= p;
        }
    std::vector<PolyMod::Term> terms;
    terms.reserve(acc.size());
    for (auto& kv : acc) {
        std::uint32_t c = static_cast<std::uint32_t>(kv.second % p);
        if (c) terms.emplace_back(kv.first, c);
    }
    return PolyMod::from_terms(a.arity(), a.modulus(), std::move(terms));
}

PolyMod mul_parallel(const PolyMod& a, const PolyMod& b) {
#ifdef _OPENMP
    check_same_mod(a, b);
    const std::uint64_t p = a.modulus();
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    int nthreads = omp_get_max_threads();
    std::vector<std::unordered_map<Monomial, std::uint64_t, MonomialHash>> local(nthreads);
#pragma omp parallel num_threads(nthreads)
    {
        auto& acc = local[omp_get_thread_num()];
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(ta.size()); ++i)
            for (const auto& t2 : tb) {
                auto& slot = acc[monomial_mul(ta[i].first, t2.first)];
                slot += static_cast<std::uint64_t>(ta[i].second) * t2.second;
                if (slot >= (1ULL << 62)) slot %= p;
            }
    }
    std::unordered_map<Monomial, std::uint64_t, MonomialHash> acc;
    for (auto& m : local)
        for (auto& kv : m) {
            auto& slot = acc[kv.first];
            slot += kv.second % p;
            if (slot >= (1ULL << 62)) slot %= p;
        }
    std::vector<PolyMod::Term> terms;
    terms.reserve(acc.size());
    for (auto& kv : acc) {
        std::uint32_t c = static_cast<std::uint32_t>(kv.second % p);
        if (c) terms.emplace_back(kv.first, c);
    }
    return PolyMod::from_terms(a.arity(), a.modulus(), std::move(terms));
#else
    return mul_serial(a, b);
#endif
}

PolyMod operator*(const PolyMod& a, const PolyMod& b) {
    if (a.terms().size() * b.terms().size() >= kParallelWork) return mul_parallel(a, b);
    return mul_serial(a, b);
}

PolyMod PolyMod::scaled(std::uint32_t c) const {
    PolyMod r(arity_, p_);
    c %= p_;
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        std::uint32_t v = static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(t.second) * c) % p_);
        if (v) r.terms_.emplace_back(t.first, v);
    }
    return r;
}

PolyMod PolyMod::derivative(std::uint32_t index) const {
    if (index >= arity_) throw std::out_of_range("derivative index out of range");
    PolyMod r(arity_, p_);
    for (const auto& t : terms_) {
        std::uint32_t e = t.first.exps[index];
        std::uint32_t c = static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(t.second) * (e % p_)) % p_);
        if (e == 0 || c == 0) continue;
        Monomial m = t.first;
        m.exps[index] = e - 1;
        r.terms_.emplace_back(std::move(m), c);
    }
    r.normalize();
    return r;
}

PolyMod PolyMod::substitute(std::span<const PolyMod> images) const {
    if (images.size() != arity_) throw std::invalid_argument("substitute: wrong image count");
    std::uint32_t out_arity = images.empty() ? arity_ : images[0].arity();
    for (const auto& im : images) {
        check_same_arity(im.arity(), out_arity);
        if (im.modulus() != p_) throw std::invalid_argument("modulus mismatch");
    }
    std::vector<std::vector<PolyMod>> pow(arity_);
    for (std::uint32_t i = 0; i < arity_; ++i)
        pow[i].push_back(PolyMod::constant(out_arity, p_, 1));
    PolyMod result(out_arity, p_);
    for (const auto& t : terms_) {
        PolyMod prod = PolyMod::constant(out_arity, p_, t.second);
        for (std::uint32_t i = 0; i < arity_; ++i) {
            std::uint32_t e = t.first.exps[i];
            while (pow[i].size() <= e) pow[i].push_back(pow[i].back() * images[i]);
            if (e) prod = prod * pow[i][e];
        }
        result = result + prod;
    }
    return result;
}

// ---------- conversions ----------

PolyZ lift_canonical(const PolyMod& g) {
    std::vector<PolyZ::Term> terms;
    terms.reserve(g.terms().size());
    for (const auto& t : g.terms()) terms.emplace_back(t.first, BigInt(t.second));
    return PolyZ::from_terms(g.arity(), std::move(terms));
}

PolyZ lift_balanced(const PolyMod& g) {
    const std::uint32_t p = g.modulus();
    std::vector<PolyZ::Term> terms;
    terms.reserve(g.terms().size());
    for (const auto& t : g.terms()) {
        std::int64_t c = t.second;
        if (c > p / 2) c -= p;
        terms.emplace_back(t.first, BigInt(c));
    }
    return PolyZ::from_terms(g.arity(), std::move(terms));
}

PolyMod reduce_mod_p(const PolyZ& g, std::uint32_t p) {
    PolyMod r(g.arity(), p);
    std::vector<PolyMod::Term> terms;
    terms.reserve(g.terms().size());
    for (const auto& t : g.terms()) {
        BigInt c = t.second % p;
        if (c < 0) c += p;
        std::uint32_t v = c.convert_to<std::uint32_t>();
        if (v) terms.emplace_back(t.first, v);
    }
    return PolyMod::from_terms(g.arity(), p, std::move(terms));
}

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t p) {
    std::uint64_t r = 1 % p;
    base %= p;
    while (exp) {
        if (exp & 1) r = r * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    a %= p;
    if (a == 0) throw std::domain_error("inverse of zero mod p");
    return pow_mod(a, p - 2, p);
}

}  // namespace hdjac
