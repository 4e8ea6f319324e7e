#pragma once

#include "hdjac/poly.hpp"

#include <optional>
#include <span>
#include <vector>

namespace hdjac {

// Polynomial in t of degree <= trunc with PolyMod coefficients. `exact` means
// every coefficient above trunc is provably zero (the series is an honest
// polynomial in t); it is set by construction-time proofs only, never by
// observing zeros inside the window.
class TruncatedSeries {
public:
    TruncatedSeries(std::uint32_t arity, std::uint32_t p, std::uint32_t trunc);

    static TruncatedSeries constant(const PolyMod& c0, std::uint32_t trunc, bool exact = true);

    std::uint32_t arity() const { return arity_; }
    std::uint32_t modulus() const { return p_; }
    std::uint32_t trunc() const { return trunc_; }
    bool exact() const { return exact_; }
    void set_exact(bool e) { exact_ = e; }

    const PolyMod& coeff(std::uint32_t i) const { return coeffs_[i]; }
    PolyMod& coeff(std::uint32_t i) { return coeffs_[i]; }
    const std::vector<PolyMod>& coeffs() const { return coeffs_; }

    // largest i with nonzero coefficient; nullopt for the zero series
    std::optional<std::uint32_t> t_degree() const;

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.trunc_ == b.trunc_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) {
        return !(a == b);
    }

    TruncatedSeries scaled(std::uint32_t c) const;

private:
    std::uint32_t arity_, p_, trunc_;
    bool exact_ = false;
    std::vector<PolyMod> coeffs_;  // size trunc_+1
};

// Ring-homomorphic evaluation of g at the generator images, truncated.
// The constant term is g evaluated at the images' constant terms.
TruncatedSeries series_eval(const PolyMod& g, std::span<const TruncatedSeries> images);

// Formal substitution t -> u where u has zero constant term.
TruncatedSeries series_substitute_t(const TruncatedSeries& s, const TruncatedSeries& u);

// Full evaluation t -> u for a plain polynomial u. Requires s.exact(): the
// tail of an inexact series is unknown, so the honest value is undefined.
PolyMod series_substitute_t_poly(const TruncatedSeries& s, const PolyMod& u);

// Double series in (s, t), total degree <= trunc; cell (i, j) multiplies
// s^i t^j. Used for the iterativity (co-associativity) comparison.
class BiSeries {
public:
    BiSeries(std::uint32_t arity, std::uint32_t p, std::uint32_t trunc);

    const PolyMod& cell(std::uint32_t i, std::uint32_t j) const;
    PolyMod& cell(std::uint32_t i, std::uint32_t j);
    std::uint32_t trunc() const { return trunc_; }

    friend bool operator==(const BiSeries& a, const BiSeries& b) {
        return a.trunc_ == b.trunc_ && a.cells_ == b.cells_;
    }

private:
    std::uint32_t arity_, p_, trunc_;
    std::vector<PolyMod> cells_;  // (i, j) with i + j <= trunc, row-major by i
    std::size_t index(std::uint32_t i, std::uint32_t j) const;
};

// Phi_s(Phi_t(x_k)): apply the images coefficient-wise in a second variable s.
BiSeries bi_compose_generator(std::span<const TruncatedSeries> images, std::uint32_t k);

// Phi_{s+t}(x_k): binomial expansion of t^l -> (s+t)^l in image k.
BiSeries bi_shift_generator(std::span<const TruncatedSeries> images, std::uint32_t k);

}  // namespace hdjac
