#pragma once

#include <span>
#include <vector>

#include "l1dg/element.hpp"
#include "l1dg/linalg.hpp"

namespace l1dg {

/// Polynomial-annihilation operator of order m as a p x (p+1) matrix.
///
/// Row k maps the nodal values of an element to an estimate of the jump
/// function at the midpoint xi_{k+1/2} = (xi_k + xi_{k+1}) / 2. Applied to
/// nodal samples of a polynomial of degree < m the output vanishes; at a
/// jump between two stencil points the bracketing midpoint recovers the
/// jump height.
struct PAMatrix {
    int order = 0;  // m
    int degree = 0; // p
    Matrix matrix;  // p x (p+1)
    std::vector<double> midpoints;
    std::vector<std::vector<int>> stencils; // m+1 node indices per midpoint, ascending
};

/// Stencil weights c_j = m! / prod_{i != j} (x_j - x_i) for a stencil of
/// m+1 distinct points. They satisfy sum_j c_j q(x_j) = q^(m) for every
/// polynomial q of degree <= m.
std::vector<double> annihilation_coefficients(std::span<const double> stencil);

/// Normalization q_m = sum of coefficients over stencil points >= eval_point.
/// eval_point must lie inside the stencil hull. Throws when |q_m| < 1e-12;
/// clipped Gauss-Lobatto stencils with m = 1, 3 stay clear of that for all
/// practical degrees.
double normalization_factor(std::span<const double> stencil, double eval_point,
                            std::span<const double> coeffs);

/// Assemble the order-m operator on the element's collocation points.
/// For each midpoint the stencil is the m+1 nearest collocation points,
/// ties resolved toward lower index, shifted to stay inside [0, p].
PAMatrix build_pa_matrix(const ReferenceElement& element, int order);

/// Jump-function estimate at the p midpoints: matrix times nodal values.
std::vector<double> apply_pa(const PAMatrix& pa, std::span<const double> nodal);

} // namespace l1dg
