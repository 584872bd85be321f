#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "l1dg/element.hpp"
#include "l1dg/pa_operator.hpp"

namespace l1dg {

/// Parameters of the alternating-direction solver for
///   argmin_v ||L v||_1 + (mu/2) ||v - u||_2^2.
struct AdmmParams {
    double mu = 5e-3;    // data fidelity weight, mu = 2 / lambda
    double beta = 20.0;  // augmentation weight
    double alpha = 1e-4; // gradient step size
    double tol = 1e-3;   // inner-loop stopping tolerance on ||v_{k+1} - v_k||
    int outer_iters = 400;
    int inner_max = 50;
};

/// Iterate quadruple: candidate nodal values, slack g ~ L v, and the two
/// Lagrangian multipliers.
struct AdmmState {
    std::vector<double> v;
    std::vector<double> g;
    std::vector<double> sigma;
    std::vector<double> delta;
};

/// Raised when an iterate turns non-finite.
class AdmmDivergence : public std::runtime_error {
public:
    AdmmDivergence(int iteration, const std::string& what)
        : std::runtime_error(what), iteration(iteration) {}
    int iteration;
};

/// Soft threshold sign(x) * max(|x| - gamma, 0); shrink(0, gamma) = 0.
double shrink(double x, double gamma);

/// Gradient of the augmented objective with respect to v:
///   mu (v - u) + beta L^T (L v - g) - L^T sigma - delta.
std::vector<double> objective_gradient(const AdmmState& state, std::span<const double> data,
                                       const PAMatrix& pa, const AdmmParams& params);

/// Value of the augmented objective
///   ||g||_1 + (mu/2)||v-u||^2 + (beta/2)||Lv-g||^2 - <Lv-g, sigma> - <v-u, delta>.
double objective_value(const AdmmState& state, std::span<const double> data,
                       const PAMatrix& pa, const AdmmParams& params);

/// Sparse reconstruction of the element data. Each outer iteration
/// alternates the exact slack minimization (shrink of L v - sigma/beta at
/// threshold 1/beta) with gradient-descent steps on v until the v-change
/// drops below tol or inner_max is reached, then updates the multipliers.
/// Starts from v = data with zero multipliers. Throws AdmmDivergence on
/// non-finite iterates.
std::vector<double> admm_solve(std::span<const double> data, const PAMatrix& pa,
                               const AdmmParams& params);

/// Legendre mean coefficient <u, P_0>_M / <P_0, P_0>_M.
double mean_coefficient(std::span<const double> nodal, const ReferenceElement& element);

/// Replace the sparse reconstruction's Legendre mean with the original's,
/// restoring the element mass. All higher coefficients are untouched.
std::vector<double> mass_correct(std::span<const double> original,
                                 std::span<const double> sparse,
                                 const ReferenceElement& element);

} // namespace l1dg
