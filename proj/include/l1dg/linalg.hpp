#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace l1dg {

/// Dense row-major matrix with a fixed shape.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }

    /// y = A x. Shapes must match; y may not alias x.
    void apply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> apply(std::span<const double> x) const;

    /// y = A^T x.
    void apply_transpose(std::span<const double> x, std::span<double> y) const;
    std::vector<double> apply_transpose(std::span<const double> x) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

double l1_norm(std::span<const double> v);
double l2_norm(std::span<const double> v);
double max_abs(std::span<const double> v);

} // namespace l1dg
