#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hgsparse/common.hpp"

namespace hgsparse {

// Row-major compressed sparse matrix. Column indices are sorted within each
// row and stored as int32 so the gather kernels can consume them directly.
class CsrMatrix {
public:
    class Builder {
    public:
        Builder(Index rows, Index cols);
        // Entries must arrive in strictly increasing (row, col) order; rows
        // without entries are permitted (they become empty rows).
        void add(Index row, Index col, double value);
        CsrMatrix finish() &&;

    private:
        Index rows_ = 0;
        Index cols_ = 0;
        Index last_row_ = -1;
        Index last_col_ = -1;
        std::vector<Index> row_ptr_;
        std::vector<std::int32_t> col_;
        std::vector<double> val_;
    };

    CsrMatrix() = default;

    Index rows() const { return static_cast<Index>(row_ptr_.size()) - 1; }
    Index cols() const { return cols_n_; }
    Index nnz() const { return static_cast<Index>(col_.size()); }

    std::span<const std::int32_t> row_cols(Index r) const {
        return {col_.data() + row_ptr_[r], static_cast<std::size_t>(row_ptr_[r + 1] - row_ptr_[r])};
    }
    std::span<const double> row_vals(Index r) const {
        return {val_.data() + row_ptr_[r], static_cast<std::size_t>(row_ptr_[r + 1] - row_ptr_[r])};
    }
    Index row_nnz(Index r) const { return row_ptr_[r + 1] - row_ptr_[r]; }

    // <a_r, x> through the active kernel backend.
    double row_dot(Index r, const double* x) const;
    double row_max_abs(Index r) const;

    // y = A x; y has length rows().
    void apply(const double* x, double* y) const;
    // y = A^T diag(w) A x + ridge*x; scratch has length rows().
    void normal_apply(std::span<const double> w, const double* x, double* y, double* scratch,
                      double ridge = 0.0) const;
    // diag(A^T diag(w) A) + ridge.
    std::vector<double> normal_diagonal(std::span<const double> w, double ridge = 0.0) const;
    // out[col] += coeff[r] * val for every stored entry of every row r with
    // coeff[r] != 0; out has length cols().
    void accumulate_rows(std::span<const double> coeff, double* out) const;

    // Copy with row r multiplied by factors[r].
    CsrMatrix scaled_rows(std::span<const double> factors) const;
    // Copy keeping the listed rows in the given order.
    CsrMatrix select_rows(std::span<const Index> keep) const;

    bool all_finite() const;

private:
    Index cols_n_ = 0;
    std::vector<Index> row_ptr_{0};
    std::vector<std::int32_t> col_;
    std::vector<double> val_;
};

}  // namespace hgsparse
