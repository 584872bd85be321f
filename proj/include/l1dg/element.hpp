#pragma once

#include <span>
#include <vector>

#include "l1dg/linalg.hpp"

namespace l1dg {

/// Legendre polynomial P_n evaluated at x by three-term recurrence.
double legendre(int n, double x);

/// Derivative P_n'(x). Uses (x^2-1) P_n' = n (x P_n - P_{n-1}) away from
/// the endpoints and the closed-form endpoint values at x = +-1.
double legendre_derivative(int n, double x);

struct GaussLobattoRule {
    std::vector<double> nodes;   // ascending, first = -1, last = +1
    std::vector<double> weights; // positive, sum to 2
};

/// Gauss-Lobatto nodes and weights for polynomial degree p (p+1 points).
/// The rule integrates polynomials up to degree 2p-1 exactly.
GaussLobattoRule gauss_lobatto(int degree);

/// Lagrange differentiation matrix on the given nodes:
/// entry (k, i) = l_i'(x_k). Assembled from barycentric weights.
Matrix differentiation_matrix(std::span<const double> nodes);

/// All degree-p operators on the reference interval [-1, 1].
///
/// The operators satisfy the summation-by-parts identity
///   mass * diff + diff^T * mass = restriction^T * boundary * restriction,
/// which makes the weak and strong forms of the scheme equivalent.
struct ReferenceElement {
    int degree = 0;
    std::vector<double> nodes;   // p+1 Gauss-Lobatto points
    std::vector<double> weights; // quadrature weights
    Matrix mass;                 // diag(weights)
    Matrix diff;                 // (p+1)x(p+1), D(k,i) = l_i'(xi_k)
    Matrix restriction;          // 2x(p+1): row 0 left endpoint, row 1 right endpoint
    Matrix boundary;             // diag(-1, +1)
    Matrix legendre_vandermonde; // V(k,j) = P_j(xi_k)
    std::vector<double> legendre_norms; // gamma_j = sum_k w_k P_j(xi_k)^2

    /// Nodal values -> Legendre coefficients by discrete projection
    /// u_j = <u, P_j>_M / gamma_j. Exact inverse of to_nodal on P_p.
    std::vector<double> to_modal(std::span<const double> nodal) const;
    /// Legendre coefficients -> nodal values.
    std::vector<double> to_nodal(std::span<const double> modal) const;

    /// Discrete inner product <u, v>_M = sum_k w_k u_k v_k.
    double inner(std::span<const double> u, std::span<const double> v) const;
};

ReferenceElement build_reference_element(int degree);

/// Equidistant partition of [a, b] into element_count elements.
struct Mesh {
    double a = 0.0;
    double b = 0.0;
    int element_count = 0;
    std::vector<double> boundaries; // element_count + 1, ascending
    std::vector<double> jacobians;  // |Omega_i| / 2 per element

    /// Affine map from reference coordinate xi in [-1,1] to physical x.
    double physical_coordinate(int element, double xi) const {
        return boundaries[element] + jacobians[element] * (xi + 1.0);
    }
};

Mesh build_mesh(double a, double b, int element_count);

} // namespace l1dg
