#pragma once

#include "hdjac/poly.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hdjac {

// Dense matrix over F_p. Row-reduction is the workhorse behind kernel
// computation, slice solving and subalgebra membership.
class ModMatrix {
public:
    ModMatrix(std::size_t rows, std::size_t cols, std::uint32_t p);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t modulus() const { return p_; }

    std::uint32_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    friend bool operator==(const ModMatrix& a, const ModMatrix& b) {
        return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    // In-place reduced row echelon form. Returns pivot column indices in
    // increasing order. Pivot choice is deterministic (first nonzero row in
    // scan order), so serial and parallel variants produce identical results.
    std::vector<std::size_t> rref() { return rref_parallel(*this); }

    friend std::vector<std::size_t> rref_serial(ModMatrix& m);
    friend std::vector<std::size_t> rref_parallel(ModMatrix& m);
    friend std::vector<std::size_t> rref_limited(ModMatrix& m, std::size_t pivot_limit);

private:
    std::size_t rows_, cols_;
    std::uint32_t p_;
    std::vector<std::uint32_t> data_;
};

std::vector<std::size_t> rref_serial(ModMatrix& m);
std::vector<std::size_t> rref_parallel(ModMatrix& m);

// RREF with pivots restricted to the first pivot_limit columns; the remaining
// columns ride along as right-hand sides.
std::vector<std::size_t> rref_limited(ModMatrix& m, std::size_t pivot_limit);

// One solution of A x = b, or nullopt when inconsistent. Free variables are
// set to zero, so the result is deterministic.
std::optional<std::vector<std::uint32_t>> solve(const ModMatrix& a,
                                                const std::vector<std::uint32_t>& b);

// Basis of the null space of A, one vector per free column of the RREF,
// ordered by free-column index.
std::vector<std::vector<std::uint32_t>> nullspace(const ModMatrix& a);

}  // namespace hdjac
