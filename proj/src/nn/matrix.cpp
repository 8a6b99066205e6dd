#include "edgecs/nn/matrix.hpp"

#include <cmath>

#include "edgecs/error.hpp"

namespace edgecs::nn {

Matrix2::Matrix2(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

Matrix2::Matrix2(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    require_size("Matrix2 value count", rows * cols, values_.size());
}

Matrix2 Matrix2::identity(std::size_t n) {
    Matrix2 m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Vector Matrix2::column(std::size_t c) const {
    if (c >= cols_) throw DimensionError("Matrix2 column index bound", cols_, c);
    Vector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

Vector Matrix2::multiply(std::span<const double> x) const {
    require_size("Matrix2::multiply input length", cols_, x.size());
    Vector y(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        const double* w = values_.data() + r * cols_;
        double acc = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) acc += w[c] * x[c];
        y[r] = acc;
    }
    return y;
}

Vector Matrix2::multiply_transposed(std::span<const double> x) const {
    require_size("Matrix2::multiply_transposed input length", rows_, x.size());
    Vector y(cols_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        const double* w = values_.data() + r * cols_;
        const double xr = x[r];
        if (xr == 0.0) continue;
        for (std::size_t c = 0; c < cols_; ++c) y[c] += w[c] * xr;
    }
    return y;
}

bool Matrix2::all_finite() const noexcept {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace edgecs::nn
