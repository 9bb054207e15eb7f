#include "hgsparse/csr.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

#include "hgsparse/kernels.hpp"

namespace hgsparse {

CsrMatrix::Builder::Builder(Index rows, Index cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    if (cols > std::numeric_limits<std::int32_t>::max())
        throw std::invalid_argument("column count exceeds int32 index range");
    row_ptr_.assign(1, 0);
}

void CsrMatrix::Builder::add(Index row, Index col, double value) {
    if (row < 0 || row >= rows_ || col < 0 || col >= cols_)
        throw std::invalid_argument("matrix entry out of bounds");
    if (row < last_row_ || (row == last_row_ && col <= last_col_))
        throw std::invalid_argument("matrix entries must arrive in strictly increasing (row, col) order");
    while (static_cast<Index>(row_ptr_.size()) - 1 < row) row_ptr_.push_back(static_cast<Index>(col_.size()));
    col_.push_back(static_cast<std::int32_t>(col));
    val_.push_back(value);
    last_row_ = row;
    last_col_ = col;
}

CsrMatrix CsrMatrix::Builder::finish() && {
    while (static_cast<Index>(row_ptr_.size()) - 1 < rows_) row_ptr_.push_back(static_cast<Index>(col_.size()));
    CsrMatrix out;
    out.cols_n_ = cols_;
    out.row_ptr_ = std::move(row_ptr_);
    out.col_ = std::move(col_);
    out.val_ = std::move(val_);
    return out;
}

double CsrMatrix::row_dot(Index r, const double* x) const {
    const auto nnz = static_cast<std::size_t>(row_ptr_[r + 1] - row_ptr_[r]);
    return kernels::active().sparse_dot(col_.data() + row_ptr_[r], val_.data() + row_ptr_[r], nnz, x);
}

double CsrMatrix::row_max_abs(Index r) const {
    double best = 0.0;
    for (Index p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) best = std::max(best, std::abs(val_[p]));
    return best;
}

void CsrMatrix::apply(const double* x, double* y) const {
    const Index m = rows();
    for (Index r = 0; r < m; ++r) {
        double acc = 0.0;
        for (Index p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) acc += val_[p] * x[col_[p]];
        y[r] = acc;
    }
}

void CsrMatrix::normal_apply(std::span<const double> w, const double* x, double* y, double* scratch,
                             double ridge) const {
    const Index m = rows();
    const Index n = cols();
    for (Index r = 0; r < m; ++r) {
        double acc = 0.0;
        for (Index p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) acc += val_[p] * x[col_[p]];
        scratch[r] = acc * w[r];
    }
    if (ridge != 0.0) {
        for (Index c = 0; c < n; ++c) y[c] = ridge * x[c];
    } else {
        std::memset(y, 0, static_cast<std::size_t>(n) * sizeof(double));
    }
    for (Index r = 0; r < m; ++r) {
        const double t = scratch[r];
        if (t == 0.0) continue;
        for (Index p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) y[col_[p]] += t * val_[p];
    }
}

std::vector<double> CsrMatrix::normal_diagonal(std::span<const double> w, double ridge) const {
    std::vector<double> diag(static_cast<std::size_t>(cols()), ridge);
    const Index m = rows();
    for (Index r = 0; r < m; ++r) {
        const double wr = w[r];
        if (wr == 0.0) continue;
        for (Index p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) diag[col_[p]] += wr * val_[p] * val_[p];
    }
    return diag;
}

void CsrMatrix::accumulate_rows(std::span<const double> coeff, double* out) const {
    const Index m = rows();
    for (Index r = 0; r < m; ++r) {
        const double c = coeff[r];
        if (c == 0.0) continue;
        for (Index p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) out[col_[p]] += c * val_[p];
    }
}

CsrMatrix CsrMatrix::scaled_rows(std::span<const double> factors) const {
    CsrMatrix out = *this;
    const Index m = rows();
    for (Index r = 0; r < m; ++r) {
        const double f = factors[r];
        for (Index p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) out.val_[p] = val_[p] * f;
    }
    return out;
}

CsrMatrix CsrMatrix::select_rows(std::span<const Index> keep) const {
    Builder b(static_cast<Index>(keep.size()), cols());
    Index out_row = 0;
    for (Index r : keep) {
        for (Index p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) b.add(out_row, col_[p], val_[p]);
        ++out_row;
    }
    return std::move(b).finish();
}

bool CsrMatrix::all_finite() const {
    return std::all_of(val_.begin(), val_.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace hgsparse
