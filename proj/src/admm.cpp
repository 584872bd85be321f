#include "l1dg/admm.hpp"

#include <cmath>
#include <string>

namespace l1dg {

namespace {

void validate(const AdmmParams& p) {
    if (!(p.mu > 0.0) || !(p.beta > 0.0) || !(p.alpha > 0.0) || !(p.tol > 0.0))
        throw std::invalid_argument("admm: mu, beta, alpha, tol must be positive");
    if (p.outer_iters < 1 || p.inner_max < 1)
        throw std::invalid_argument("admm: outer_iters and inner_max must be >= 1");
}

bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x))
            return false;
    return true;
}

} // namespace

double shrink(double x, double gamma) {
    if (x > gamma)
        return x - gamma;
    if (x < -gamma)
        return x + gamma;
    return 0.0;
}

std::vector<double> objective_gradient(const AdmmState& state, std::span<const double> data,
                                       const PAMatrix& pa, const AdmmParams& params) {
    const std::size_t n = state.v.size();
    auto lv = pa.matrix.apply(state.v);
    for (std::size_t i = 0; i < lv.size(); ++i)
        lv[i] = params.beta * (lv[i] - state.g[i]) - state.sigma[i];

    auto grad = pa.matrix.apply_transpose(lv);
    for (std::size_t k = 0; k < n; ++k)
        grad[k] += params.mu * (state.v[k] - data[k]) - state.delta[k];
    return grad;
}

double objective_value(const AdmmState& state, std::span<const double> data,
                       const PAMatrix& pa, const AdmmParams& params) {
    const auto lv = pa.matrix.apply(state.v);

    double value = l1_norm(state.g);
    double fidelity = 0.0, augment = 0.0, coupling = 0.0, anchor = 0.0;
    for (std::size_t k = 0; k < state.v.size(); ++k) {
        const double d = state.v[k] - data[k];
        fidelity += d * d;
        anchor += d * state.delta[k];
    }
    for (std::size_t i = 0; i < lv.size(); ++i) {
        const double r = lv[i] - state.g[i];
        augment += r * r;
        coupling += r * state.sigma[i];
    }
    value += 0.5 * params.mu * fidelity + 0.5 * params.beta * augment - coupling - anchor;
    return value;
}

std::vector<double> admm_solve(std::span<const double> data, const PAMatrix& pa,
                               const AdmmParams& params) {
    validate(params);
    const std::size_t np = data.size();
    if (np != static_cast<std::size_t>(pa.degree + 1))
        throw std::invalid_argument("admm_solve: data size does not match operator degree");

    AdmmState s;
    s.v.assign(data.begin(), data.end());
    s.g = pa.matrix.apply(s.v);
    s.sigma.assign(pa.degree, 0.0);
    s.delta.assign(np, 0.0);

    std::vector<double> lv(pa.degree), lt(np);
    const double inv_beta = 1.0 / params.beta;

    for (int outer = 0; outer < params.outer_iters; ++outer) {
        for (int inner = 0; inner < params.inner_max; ++inner) {
            pa.matrix.apply(s.v, lv);

            for (std::size_t i = 0; i < lv.size(); ++i)
                s.g[i] = shrink(lv[i] - s.sigma[i] * inv_beta, inv_beta);

            // Gradient step on v with the fresh slack.
            for (std::size_t i = 0; i < lv.size(); ++i)
                lv[i] = params.beta * (lv[i] - s.g[i]) - s.sigma[i];
            pa.matrix.apply_transpose(lv, lt);

            double change2 = 0.0;
            for (std::size_t k = 0; k < np; ++k) {
                const double step =
                    params.alpha * (lt[k] + params.mu * (s.v[k] - data[k]) - s.delta[k]);
                s.v[k] -= step;
                change2 += step * step;
            }
            if (std::sqrt(change2) <= params.tol)
                break;
        }

        pa.matrix.apply(s.v, lv);
        for (std::size_t i = 0; i < lv.size(); ++i)
            s.sigma[i] -= params.beta * (lv[i] - s.g[i]);
        for (std::size_t k = 0; k < np; ++k)
            s.delta[k] -= params.mu * (s.v[k] - data[k]);

        if (!all_finite(s.v) || !all_finite(s.sigma) || !all_finite(s.delta))
            throw AdmmDivergence(outer, "admm_solve: non-finite iterate at outer iteration " +
                                            std::to_string(outer));
    }
    return s.v;
}

double mean_coefficient(std::span<const double> nodal, const ReferenceElement& element) {
    double num = 0.0;
    for (std::size_t k = 0; k < nodal.size(); ++k)
        num += element.weights[k] * nodal[k];
    return num / element.legendre_norms[0];
}

std::vector<double> mass_correct(std::span<const double> original,
                                 std::span<const double> sparse,
                                 const ReferenceElement& element) {
    auto modal = element.to_modal(sparse);
    modal[0] = mean_coefficient(original, element);
    return element.to_nodal(modal);
}

} // namespace l1dg
