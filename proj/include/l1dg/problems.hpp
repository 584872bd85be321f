#pragma once

#include <string>

#include "l1dg/element.hpp"
#include "l1dg/state.hpp"

namespace l1dg {

/// Global error norms of a run against its reference solution.
struct ErrorReport {
    double m_norm = 0.0;
    double one_norm = 0.0;
    double inf_norm = 0.0;
    bool valid = false; // false when the run broke down
};

double burgers_initial(double x);

/// Exact solution of the inviscid Burgers equation with sin(pi x) data on
/// [0, 2], valid for 0 <= t <= 0.5. Solves u = sin(pi (x - u t)) by
/// safeguarded Newton; past shock formation (t >= 1/pi) the stationary
/// shock sits at x = 1 and each side takes the branch continuous from its
/// own boundary. At x = 1 the left limit is returned.
double burgers_reference(double x, double t);

double advection_initial(double x);
double advection_reference(double x, double t);

/// Two-component initial data: a C-infinity bump of unit height on top of
/// the constant background (1, 0).
void pc_initial(double x, std::span<double> out);

/// Discrete error norms at the collocation nodes:
///   M-norm  = sqrt(sum_i J_i sum_k w_k e_k^2)
///   1-norm  = sum_i J_i sum_k w_k |e_k|
///   inf-norm = max |e_k|
ErrorReport error_norms(const SolutionState& numerical,
                        const std::function<double(double, double, int)>& reference,
                        const Mesh& mesh, const ReferenceElement& element);

/// Discrete energy 0.5 * sum_c sum_i J_i sum_k w_k u^2.
double energy(const SolutionState& state, const Mesh& mesh, const ReferenceElement& element);

/// Total mass of one component: sum_i J_i sum_k w_k u.
double total_mass(const SolutionState& state, const Mesh& mesh,
                  const ReferenceElement& element, int component);

/// Benchmark problem registry: "burgers", "advection", or "pc-system".
ProblemDef make_problem(const std::string& id, FluxMode interface_flux);

} // namespace l1dg
