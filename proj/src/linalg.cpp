#include "l1dg/linalg.hpp"

#include <cassert>
#include <cmath>

namespace l1dg {

void Matrix::apply(std::span<const double> x, std::span<double> y) const {
    assert(x.size() == cols_ && y.size() == rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        double acc = 0.0;
        const double* row = data_.data() + r * cols_;
        for (std::size_t c = 0; c < cols_; ++c)
            acc += row[c] * x[c];
        y[r] = acc;
    }
}

std::vector<double> Matrix::apply(std::span<const double> x) const {
    std::vector<double> y(rows_);
    apply(x, y);
    return y;
}

void Matrix::apply_transpose(std::span<const double> x, std::span<double> y) const {
    assert(x.size() == rows_ && y.size() == cols_);
    for (std::size_t c = 0; c < cols_; ++c)
        y[c] = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
        const double* row = data_.data() + r * cols_;
        const double xr = x[r];
        for (std::size_t c = 0; c < cols_; ++c)
            y[c] += row[c] * xr;
    }
}

std::vector<double> Matrix::apply_transpose(std::span<const double> x) const {
    std::vector<double> y(cols_);
    apply_transpose(x, y);
    return y;
}

double l1_norm(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v)
        acc += std::abs(x);
    return acc;
}

double l2_norm(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v)
        acc += x * x;
    return std::sqrt(acc);
}

double max_abs(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v)
        acc = std::max(acc, std::abs(x));
    return acc;
}

} // namespace l1dg
