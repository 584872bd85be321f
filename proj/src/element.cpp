#include "l1dg/element.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace l1dg {

double legendre(int n, double x) {
    if (n == 0) return 1.0;
    if (n == 1) return x;

    double p_prev = 1.0;
    double p_curr = x;
    for (int k = 1; k < n; ++k) {
        const double p_next = ((2.0 * k + 1.0) * x * p_curr - k * p_prev) / (k + 1.0);
        p_prev = p_curr;
        p_curr = p_next;
    }
    return p_curr;
}

double legendre_derivative(int n, double x) {
    if (n == 0) return 0.0;
    if (n == 1) return 1.0;

    if (std::abs(x) > 1.0 - 1e-12) {
        // P_n'(+-1) = (+-1)^(n-1) n (n+1) / 2
        const double val = n * (n + 1.0) / 2.0;
        return (x > 0) ? val : ((n % 2 == 0) ? -val : val);
    }
    const double pn = legendre(n, x);
    const double pnm1 = legendre(n - 1, x);
    return n * (x * pn - pnm1) / (x * x - 1.0);
}

namespace {

// Second derivative away from the endpoints, from the Legendre ODE
// (1 - x^2) P'' - 2 x P' + n (n+1) P = 0.
double legendre_second_derivative(int n, double x) {
    return (2.0 * x * legendre_derivative(n, x) - n * (n + 1.0) * legendre(n, x)) /
           (1.0 - x * x);
}

} // namespace

GaussLobattoRule gauss_lobatto(int degree) {
    if (degree < 1)
        throw std::invalid_argument("gauss_lobatto: degree must be >= 1");

    const int p = degree;
    GaussLobattoRule rule;
    rule.nodes.assign(p + 1, 0.0);
    rule.weights.assign(p + 1, 0.0);
    rule.nodes[0] = -1.0;
    rule.nodes[p] = 1.0;

    // Interior nodes are the roots of P_p'. Newton iteration with
    // Chebyshev-Lobatto initial guesses converges in a handful of steps.
    for (int k = 1; k < p; ++k) {
        double x = -std::cos(std::numbers::pi * k / p);
        for (int it = 0; it < 100; ++it) {
            const double f = legendre_derivative(p, x);
            const double df = legendre_second_derivative(p, x);
            const double dx = f / df;
            x -= dx;
            if (std::abs(dx) < 1e-14)
                break;
        }
        rule.nodes[k] = x;
    }

    // Symmetrize so that xi_k = -xi_(p-k) holds exactly.
    for (int k = 0; 2 * k < p; ++k) {
        const double v = 0.5 * (rule.nodes[k] - rule.nodes[p - k]);
        rule.nodes[k] = v;
        rule.nodes[p - k] = -v;
    }
    if (p % 2 == 0)
        rule.nodes[p / 2] = 0.0;

    for (int k = 0; k <= p; ++k) {
        const double pp = legendre(p, rule.nodes[k]);
        rule.weights[k] = 2.0 / (p * (p + 1.0) * pp * pp);
    }
    return rule;
}

Matrix differentiation_matrix(std::span<const double> nodes) {
    const std::size_t n = nodes.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (nodes[i] == nodes[j])
                throw std::invalid_argument("differentiation_matrix: duplicate nodes");

    // Barycentric weights w_i = 1 / prod_{j != i} (x_i - x_j).
    std::vector<double> w(n, 1.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (j != i)
                w[i] /= (nodes[i] - nodes[j]);

    Matrix d(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        double diag = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k)
                continue;
            d(k, i) = (w[i] / w[k]) / (nodes[k] - nodes[i]);
            diag -= d(k, i);
        }
        d(k, k) = diag; // rows sum to zero: derivative of constants vanishes
    }
    return d;
}

ReferenceElement build_reference_element(int degree) {
    ReferenceElement elem;
    elem.degree = degree;

    auto rule = gauss_lobatto(degree);
    elem.nodes = std::move(rule.nodes);
    elem.weights = std::move(rule.weights);

    const int np = degree + 1;
    elem.mass = Matrix(np, np);
    for (int k = 0; k < np; ++k)
        elem.mass(k, k) = elem.weights[k];

    elem.diff = differentiation_matrix(elem.nodes);

    elem.restriction = Matrix(2, np);
    elem.restriction(0, 0) = 1.0;
    elem.restriction(1, np - 1) = 1.0;

    elem.boundary = Matrix(2, 2);
    elem.boundary(0, 0) = -1.0;
    elem.boundary(1, 1) = 1.0;

    elem.legendre_vandermonde = Matrix(np, np);
    for (int k = 0; k < np; ++k)
        for (int j = 0; j < np; ++j)
            elem.legendre_vandermonde(k, j) = legendre(j, elem.nodes[k]);

    elem.legendre_norms.assign(np, 0.0);
    for (int j = 0; j < np; ++j) {
        double acc = 0.0;
        for (int k = 0; k < np; ++k) {
            const double pj = elem.legendre_vandermonde(k, j);
            acc += elem.weights[k] * pj * pj;
        }
        elem.legendre_norms[j] = acc;
    }
    return elem;
}

std::vector<double> ReferenceElement::to_modal(std::span<const double> nodal) const {
    const int np = degree + 1;
    std::vector<double> modal(np, 0.0);
    for (int j = 0; j < np; ++j) {
        double acc = 0.0;
        for (int k = 0; k < np; ++k)
            acc += weights[k] * legendre_vandermonde(k, j) * nodal[k];
        modal[j] = acc / legendre_norms[j];
    }
    return modal;
}

std::vector<double> ReferenceElement::to_nodal(std::span<const double> modal) const {
    return legendre_vandermonde.apply(modal);
}

double ReferenceElement::inner(std::span<const double> u, std::span<const double> v) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k)
        acc += weights[k] * u[k] * v[k];
    return acc;
}

Mesh build_mesh(double a, double b, int element_count) {
    if (!(a < b))
        throw std::invalid_argument("build_mesh: requires a < b");
    if (element_count < 1)
        throw std::invalid_argument("build_mesh: requires element_count >= 1");

    Mesh mesh;
    mesh.a = a;
    mesh.b = b;
    mesh.element_count = element_count;
    mesh.boundaries.assign(element_count + 1, 0.0);
    for (int i = 0; i <= element_count; ++i)
        mesh.boundaries[i] = a + (b - a) * i / element_count;
    mesh.boundaries[element_count] = b;
    mesh.jacobians.assign(element_count, (b - a) / (2.0 * element_count));
    return mesh;
}

} // namespace l1dg
