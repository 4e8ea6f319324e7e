#include "hdjac/linalg.hpp"

#include <stdexcept>

namespace hdjac {

ModMatrix::ModMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {
    if (!is_prime(p)) throw std::invalid_argument("modulus is not prime");
}

namespace {

// Eliminate column `col` from every row except `pivot_row`, then normalize.
// The inner loop is the only place worth parallelism: rows are independent.
template <bool Parallel>
std::vector<std::size_t> rref_impl(ModMatrix& m, std::size_t pivot_limit) {
    const std::uint64_t p = m.modulus();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_limit && r < rows; ++c) {
        std::size_t sel = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (m.at(i, c) != 0) {
                sel = i;
                break;
            }
        if (sel == rows) continue;
        if (sel != r)
            for (std::size_t j = c; j < cols; ++j) std::swap(m.at(r, j), m.at(sel, j));
        const std::uint64_t inv = inv_mod(m.at(r, c), m.modulus());
        for (std::size_t j = c; j < cols; ++j)
            m.at(r, j) = static_cast<std::uint32_t>(m.at(r, j) * inv % p);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (Parallel && rows > 64)
#endif
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(rows); ++i) {
            if (static_cast<std::size_t>(i) == r) continue;
            const std::uint64_t f = m.at(i, c);
            if (f == 0) continue;
            for (std::size_t j = c; j < cols; ++j) {
                std::uint64_t v = m.at(i, j) + (p - f) * m.at(r, j) % p;
                m.at(i, j) = static_cast<std::uint32_t>(v % p);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::vector<std::size_t> rref_serial(ModMatrix& m) { return rref_impl<false>(m, m.cols()); }
std::vector<std::size_t> rref_parallel(ModMatrix& m) { return rref_impl<true>(m, m.cols()); }
std::vector<std::size_t> rref_limited(ModMatrix& m, std::size_t pivot_limit) {
    return rref_impl<true>(m, pivot_limit);
}

std::optional<std::vector<std::uint32_t>> solve(const ModMatrix& a,
                                                const std::vector<std::uint32_t>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: rhs size mismatch");
    ModMatrix aug(a.rows(), a.cols() + 1, a.modulus());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i] % a.modulus();
    }
    auto pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;  // 0 = 1 row
    std::vector<std::uint32_t> x(a.cols(), 0);
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug.at(k, a.cols());
    return x;
}

std::vector<std::vector<std::uint32_t>> nullspace(const ModMatrix& a) {
    ModMatrix m = a;
    auto pivots = m.rref();
    const std::uint32_t p = a.modulus();
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<std::uint32_t>> basis;
    for (std::size_t free_c = 0; free_c < a.cols(); ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<std::uint32_t> v(a.cols(), 0);
        v[free_c] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            std::uint32_t coef = m.at(k, free_c);
            if (coef) v[pivots[k]] = p - coef;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace hdjac
