#include "hdjac/series.hpp"

#include <stdexcept>

namespace hdjac {

TruncatedSeries::TruncatedSeries(std::uint32_t arity, std::uint32_t p, std::uint32_t trunc)
    : arity_(arity), p_(p), trunc_(trunc), coeffs_(trunc + 1, PolyMod(arity, p)) {}

TruncatedSeries TruncatedSeries::constant(const PolyMod& c0, std::uint32_t trunc, bool exact) {
    TruncatedSeries s(c0.arity(), c0.modulus(), trunc);
    s.coeffs_[0] = c0;
    s.exact_ = exact;
    return s;
}

std::optional<std::uint32_t> TruncatedSeries::t_degree() const {
    for (std::uint32_t i = trunc_ + 1; i-- > 0;)
        if (!coeffs_[i].is_zero()) return i;
    return std::nullopt;
}

namespace {
void check_compatible(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.trunc() != b.trunc()) throw std::invalid_argument("series truncation mismatch");
    if (a.modulus() != b.modulus()) throw std::invalid_argument("series modulus mismatch");
    if (a.arity() != b.arity()) throw std::invalid_argument("series arity mismatch");
}
}  // namespace

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_compatible(a, b);
    TruncatedSeries r(a.arity_, a.p_, a.trunc_);
    for (std::uint32_t i = 0; i <= a.trunc_; ++i) r.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
    r.exact_ = a.exact_ && b.exact_;
    return r;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_compatible(a, b);
    TruncatedSeries r(a.arity_, a.p_, a.trunc_);
    for (std::uint32_t i = 0; i <= a.trunc_; ++i) r.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
    r.exact_ = a.exact_ && b.exact_;
    return r;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_compatible(a, b);
    TruncatedSeries r(a.arity_, a.p_, a.trunc_);
    for (std::uint32_t i = 0; i <= a.trunc_; ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (std::uint32_t j = 0; i + j <= a.trunc_; ++j) {
            if (b.coeffs_[j].is_zero()) continue;
            r.coeffs_[i + j] = r.coeffs_[i + j] + a.coeffs_[i] * b.coeffs_[j];
        }
    }
    // the product is provably a polynomial only when no term can spill past T
    auto da = a.t_degree(), db = b.t_degree();
    bool no_spill = !da || !db || (*da + *db <= a.trunc_);
    r.exact_ = a.exact_ && b.exact_ && no_spill;
    return r;
}

TruncatedSeries TruncatedSeries::scaled(std::uint32_t c) const {
    TruncatedSeries r(arity_, p_, trunc_);
    for (std::uint32_t i = 0; i <= trunc_; ++i) r.coeffs_[i] = coeffs_[i].scaled(c);
    r.exact_ = exact_;
    return r;
}

TruncatedSeries series_eval(const PolyMod& g, std::span<const TruncatedSeries> images) {
    if (images.empty()) throw std::invalid_argument("series_eval: no images");
    const std::uint32_t T = images[0].trunc();
    const std::uint32_t p = images[0].modulus();
    const std::uint32_t arity = images[0].arity();
    for (const auto& im : images) {
        if (im.trunc() != T || im.modulus() != p || im.arity() != arity)
            throw std::invalid_argument("series_eval: image truncation/modulus mismatch");
    }
    if (g.arity() != images.size()) throw std::invalid_argument("series_eval: arity mismatch");
    if (g.modulus() != p) throw std::invalid_argument("series_eval: modulus mismatch");

    std::vector<std::vector<TruncatedSeries>> pow(g.arity());
    for (std::size_t i = 0; i < g.arity(); ++i)
        pow[i].push_back(TruncatedSeries::constant(PolyMod::constant(arity, p, 1), T));

    TruncatedSeries result(arity, p, T);
    result.set_exact(true);
    for (const auto& [mono, coeff] : g.terms()) {
        TruncatedSeries prod =
            TruncatedSeries::constant(PolyMod::constant(arity, p, coeff), T);
        for (std::size_t i = 0; i < g.arity(); ++i) {
            std::uint32_t e = mono.exps[i];
            while (pow[i].size() <= e) pow[i].push_back(pow[i].back() * images[i]);
            if (e) prod = prod * pow[i][e];
        }
        result = result + prod;
    }
    return result;
}

TruncatedSeries series_substitute_t(const TruncatedSeries& s, const TruncatedSeries& u) {
    if (u.modulus() != s.modulus() || u.arity() != s.arity() || u.trunc() != s.trunc())
        throw std::invalid_argument("series_substitute_t: shape mismatch");
    if (!u.coeff(0).is_zero())
        throw std::invalid_argument("series_substitute_t: substituted series must have zero constant term");
    const std::uint32_t T = s.trunc();
    // Horner from the top coefficient down
    TruncatedSeries acc =
        TruncatedSeries::constant(PolyMod::zero(s.arity(), s.modulus()), T);
    for (std::uint32_t i = T + 1; i-- > 0;) {
        acc = acc * u;
        acc = acc + TruncatedSeries::constant(s.coeff(i), T);
    }
    acc.set_exact(false);
    return acc;
}

PolyMod series_substitute_t_poly(const TruncatedSeries& s, const PolyMod& u) {
    if (!s.exact())
        throw std::invalid_argument(
            "series_substitute_t_poly: series is not exact, tail unknown");
    if (u.modulus() != s.modulus() || u.arity() != s.arity())
        throw std::invalid_argument("series_substitute_t_poly: shape mismatch");
    PolyMod acc = PolyMod::zero(s.arity(), s.modulus());
    for (std::uint32_t i = s.trunc() + 1; i-- > 0;) acc = acc * u + s.coeff(i);
    return acc;
}

// ---------- BiSeries ----------

BiSeries::BiSeries(std::uint32_t arity, std::uint32_t p, std::uint32_t trunc)
    : arity_(arity), p_(p), trunc_(trunc) {
    cells_.assign(static_cast<std::size_t>(trunc + 1) * (trunc + 2) / 2, PolyMod(arity, p));
}

std::size_t BiSeries::index(std::uint32_t i, std::uint32_t j) const {
    if (i + j > trunc_) throw std::out_of_range("BiSeries cell out of range");
    // cells with first index < i: sum_{a<i} (trunc+1-a)
    std::size_t off = 0;
    for (std::uint32_t a = 0; a < i; ++a) off += trunc_ + 1 - a;
    return off + j;
}

const PolyMod& BiSeries::cell(std::uint32_t i, std::uint32_t j) const {
    return cells_[index(i, j)];
}
PolyMod& BiSeries::cell(std::uint32_t i, std::uint32_t j) { return cells_[index(i, j)]; }

BiSeries bi_compose_generator(std::span<const TruncatedSeries> images, std::uint32_t k) {
    const auto& phi_k = images[k];
    const std::uint32_t T = phi_k.trunc();
    BiSeries out(phi_k.arity(), phi_k.modulus(), T);
    for (std::uint32_t j = 0; j <= T; ++j) {
        if (phi_k.coeff(j).is_zero()) continue;
        TruncatedSeries inner = series_eval(phi_k.coeff(j), images);  // series in s
        for (std::uint32_t i = 0; i + j <= T; ++i)
            out.cell(i, j) = out.cell(i, j) + inner.coeff(i);
    }
    return out;
}

BiSeries bi_shift_generator(std::span<const TruncatedSeries> images, std::uint32_t k) {
    const auto& phi_k = images[k];
    const std::uint32_t T = phi_k.trunc();
    const std::uint32_t p = phi_k.modulus();
    // binomial coefficients mod p up to T
    std::vector<std::vector<std::uint32_t>> ch(T + 1, std::vector<std::uint32_t>(T + 1, 0));
    for (std::uint32_t n = 0; n <= T; ++n) {
        ch[n][0] = 1 % p;
        for (std::uint32_t r = 1; r <= n; ++r)
            ch[n][r] = (ch[n - 1][r - 1] + (r <= n - 1 ? ch[n - 1][r] : 0)) % p;
    }
    BiSeries out(phi_k.arity(), p, T);
    for (std::uint32_t l = 0; l <= T; ++l) {
        const PolyMod& c = phi_k.coeff(l);
        if (c.is_zero()) continue;
        for (std::uint32_t i = 0; i <= l; ++i) {
            std::uint32_t b = ch[l][i];
            if (!b) continue;
            out.cell(i, l - i) = out.cell(i, l - i) + c.scaled(b);
        }
    }
    return out;
}

}  // namespace hdjac
