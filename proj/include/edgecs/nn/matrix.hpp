#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace edgecs::nn {

using Vector = std::vector<double>;

// Dense row-major 2-D array of doubles.
class Matrix2 {
public:
    Matrix2() = default;
    Matrix2(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix2(std::size_t rows, std::size_t cols, std::vector<double> values);

    static Matrix2 identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return values_.size(); }

    double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }
    std::span<const double> row(std::size_t r) const {
        return std::span<const double>(values_).subspan(r * cols_, cols_);
    }
    Vector column(std::size_t c) const;

    // y = A x
    Vector multiply(std::span<const double> x) const;
    // y = A^T x
    Vector multiply_transposed(std::span<const double> x) const;

    bool all_finite() const noexcept;

    friend bool operator==(const Matrix2&, const Matrix2&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

}  // namespace edgecs::nn
