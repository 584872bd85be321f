#include "l1dg/pa_operator.hpp"

#include <cmath>
#include <stdexcept>

namespace l1dg {

std::vector<double> annihilation_coefficients(std::span<const double> stencil) {
    const int m = static_cast<int>(stencil.size()) - 1;
    if (m < 1)
        throw std::invalid_argument("annihilation_coefficients: need at least 2 points");

    double factorial = 1.0;
    for (int k = 2; k <= m; ++k)
        factorial *= k;

    std::vector<double> coeffs(m + 1);
    for (int j = 0; j <= m; ++j) {
        double omega = 1.0;
        for (int i = 0; i <= m; ++i) {
            if (i == j)
                continue;
            const double d = stencil[j] - stencil[i];
            if (d == 0.0)
                throw std::invalid_argument("annihilation_coefficients: duplicate stencil points");
            omega *= d;
        }
        coeffs[j] = factorial / omega;
    }
    return coeffs;
}

double normalization_factor(std::span<const double> stencil, double eval_point,
                            std::span<const double> coeffs) {
    double lo = stencil[0], hi = stencil[0];
    for (double x : stencil) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    if (eval_point < lo || eval_point > hi)
        throw std::invalid_argument("normalization_factor: eval_point outside stencil hull");

    double q = 0.0;
    for (std::size_t j = 0; j < stencil.size(); ++j)
        if (stencil[j] >= eval_point)
            q += coeffs[j];

    if (std::abs(q) < 1e-12)
        throw std::runtime_error("normalization_factor: degenerate normalization");
    return q;
}

PAMatrix build_pa_matrix(const ReferenceElement& element, int order) {
    const int p = element.degree;
    if (order < 1 || order > p)
        throw std::invalid_argument("build_pa_matrix: order must satisfy 1 <= m <= p");

    PAMatrix pa;
    pa.order = order;
    pa.degree = p;
    pa.matrix = Matrix(p, p + 1);
    pa.midpoints.resize(p);
    pa.stencils.resize(p);

    const auto& xi = element.nodes;
    for (int k = 0; k < p; ++k) {
        const double mid = 0.5 * (xi[k] + xi[k + 1]);
        pa.midpoints[k] = mid;

        // Grow the window [lo, hi] around the bracketing pair until it holds
        // m+1 points, extending toward the nearer neighbor (ties toward the
        // lower index) and clipping at the element boundaries.
        int lo = k, hi = k + 1;
        while (hi - lo < order) {
            if (lo == 0) {
                ++hi;
            } else if (hi == p) {
                --lo;
            } else {
                const double dl = mid - xi[lo - 1];
                const double dr = xi[hi + 1] - mid;
                if (dr < dl)
                    ++hi;
                else
                    --lo;
            }
        }

        std::vector<double> stencil(xi.begin() + lo, xi.begin() + hi + 1);
        const auto coeffs = annihilation_coefficients(stencil);
        const double q = normalization_factor(stencil, mid, coeffs);

        pa.stencils[k].resize(order + 1);
        for (int j = 0; j <= order; ++j) {
            pa.stencils[k][j] = lo + j;
            pa.matrix(k, lo + j) = coeffs[j] / q;
        }
    }
    return pa;
}

std::vector<double> apply_pa(const PAMatrix& pa, std::span<const double> nodal) {
    if (nodal.size() != static_cast<std::size_t>(pa.degree + 1))
        throw std::invalid_argument("apply_pa: nodal size does not match operator degree");
    return pa.matrix.apply(nodal);
}

} // namespace l1dg
