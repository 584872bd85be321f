#include "l1dg/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace l1dg {

namespace {

constexpr double pi = std::numbers::pi;

// Position along the characteristic from x0 after time t, minus the target.
double char_residual(double x0, double t, double x) {
    return x0 + t * std::sin(pi * x0) - x;
}

// Entropy root of x0 + t sin(pi x0) = x on [0, 1]. The target is the first
// sign change of the residual scanning from x0 = 0; later roots belong to
// characteristics that already fell into the shock at x = 1.
double solve_characteristic(double x, double t) {
    const int cells = 400;
    double lo = 0.0;
    double flo = char_residual(lo, t, x);
    if (flo >= 0.0)
        return lo;

    double hi = 1.0;
    bool bracketed = false;
    for (int c = 1; c <= cells; ++c) {
        const double xc = static_cast<double>(c) / cells;
        const double fc = char_residual(xc, t, x);
        if (fc >= 0.0) {
            hi = xc;
            bracketed = true;
            break;
        }
        lo = xc;
        flo = fc;
    }
    if (!bracketed)
        throw std::runtime_error("burgers_reference: characteristic root not bracketed");

    // Newton from the bracket midpoint, falling back to bisection whenever a
    // step leaves the bracket.
    double root = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const double f = char_residual(root, t, x);
        if (std::abs(f) < 1e-14)
            return root;
        if (f < 0.0)
            lo = root;
        else
            hi = root;

        const double df = 1.0 + t * pi * std::cos(pi * root);
        double next = df != 0.0 ? root - f / df : 0.5 * (lo + hi);
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);

        if (std::abs(next - root) < 1e-16)
            return next; // bracket exhausted at machine precision
        root = next;
    }
    if (std::abs(char_residual(root, t, x)) > 1e-13)
        throw std::runtime_error("burgers_reference: Newton iteration did not converge");
    return root;
}

} // namespace

double burgers_initial(double x) {
    return std::sin(pi * x);
}

double burgers_reference(double x, double t) {
    if (t < 0.0 || t > 0.5 + 1e-12)
        throw std::invalid_argument("burgers_reference: t must lie in [0, 0.5]");
    if (x < -1e-12 || x > 2.0 + 1e-12)
        throw std::invalid_argument("burgers_reference: x must lie in [0, 2]");

    if (t == 0.0)
        return std::sin(pi * x);
    if (x > 1.0)
        return -burgers_reference(2.0 - x, t); // odd symmetry about the shock
    return std::sin(pi * solve_characteristic(x, t));
}

double advection_initial(double x) {
    return std::sin(2.0 * pi * x);
}

double advection_reference(double x, double t) {
    return std::sin(2.0 * pi * (x - t));
}

void pc_initial(double x, std::span<double> out) {
    const double r = 0.5;
    const double d = x - 0.5;
    double bump = 0.0;
    if (std::abs(d) < r)
        bump = std::numbers::e * std::exp(-r * r / (r * r - d * d));
    out[0] = 1.0 + bump;
    out[1] = bump;
}

ErrorReport error_norms(const SolutionState& numerical,
                        const std::function<double(double, double, int)>& reference,
                        const Mesh& mesh, const ReferenceElement& element) {
    ErrorReport report;
    if (!numerical.all_finite())
        return report; // breakdown: flagged, not numeric

    double m2 = 0.0, one = 0.0, inf = 0.0;
    for (int c = 0; c < numerical.components; ++c) {
        for (int i = 0; i < mesh.element_count; ++i) {
            double local2 = 0.0, local1 = 0.0;
            for (int k = 0; k < numerical.nodes; ++k) {
                const double x = mesh.physical_coordinate(i, element.nodes[k]);
                const double e = numerical.at(c, i, k) - reference(x, numerical.time, c);
                local2 += element.weights[k] * e * e;
                local1 += element.weights[k] * std::abs(e);
                inf = std::max(inf, std::abs(e));
            }
            m2 += mesh.jacobians[i] * local2;
            one += mesh.jacobians[i] * local1;
        }
    }
    report.m_norm = std::sqrt(m2);
    report.one_norm = one;
    report.inf_norm = inf;
    report.valid = true;
    return report;
}

double energy(const SolutionState& state, const Mesh& mesh, const ReferenceElement& element) {
    double acc = 0.0;
    for (int c = 0; c < state.components; ++c)
        for (int i = 0; i < mesh.element_count; ++i) {
            double local = 0.0;
            for (int k = 0; k < state.nodes; ++k) {
                const double u = state.at(c, i, k);
                local += element.weights[k] * u * u;
            }
            acc += mesh.jacobians[i] * local;
        }
    return 0.5 * acc;
}

double total_mass(const SolutionState& state, const Mesh& mesh,
                  const ReferenceElement& element, int component) {
    double acc = 0.0;
    for (int i = 0; i < mesh.element_count; ++i) {
        double local = 0.0;
        for (int k = 0; k < state.nodes; ++k)
            local += element.weights[k] * state.at(component, i, k);
        acc += mesh.jacobians[i] * local;
    }
    return acc;
}

ProblemDef make_problem(const std::string& id, FluxMode interface_flux) {
    ProblemDef p;
    p.interface_flux = interface_flux;
    if (id == "burgers") {
        p.component_count = 1;
        p.flux = [](std::span<const double> u, std::span<double> f) { f[0] = 0.5 * u[0] * u[0]; };
        p.max_speed = [](std::span<const double> u) { return std::abs(u[0]); };
        p.initial = [](double x, std::span<double> u) { u[0] = burgers_initial(x); };
        p.reference = [](double x, double t, int) { return burgers_reference(x, t); };
        p.has_reference = true;
    } else if (id == "advection") {
        p.component_count = 1;
        p.flux = [](std::span<const double> u, std::span<double> f) { f[0] = u[0]; };
        p.max_speed = [](std::span<const double>) { return 1.0; };
        p.initial = [](double x, std::span<double> u) { u[0] = advection_initial(x); };
        p.reference = [](double x, double t, int) { return advection_reference(x, t); };
        p.has_reference = true;
    } else if (id == "pc-system") {
        p.component_count = 2;
        p.flux = [](std::span<const double> u, std::span<double> f) {
            f[0] = 0.5 * (u[0] * u[0] + u[1] * u[1]);
            f[1] = u[0] * u[1];
        };
        p.max_speed = [](std::span<const double> u) {
            return std::max(std::abs(u[0] + u[1]), std::abs(u[0] - u[1]));
        };
        p.initial = [](double x, std::span<double> u) { pc_initial(x, u); };
        p.has_reference = false;
    } else {
        throw std::invalid_argument("make_problem: unknown problem id '" + id + "'");
    }
    return p;
}

} // namespace l1dg
