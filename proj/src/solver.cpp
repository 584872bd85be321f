#include "l1dg/solver.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace l1dg {

std::string to_string(RegMode mode) {
    switch (mode) {
    case RegMode::none: return "none";
    case RegMode::l1: return "l1";
    case RegMode::l1_mass_corrected: return "l1-mc";
    }
    return "?";
}

std::vector<double> llf_flux(std::span<const double> u_left, std::span<const double> u_right,
                             const ProblemDef& problem) {
    const std::size_t n = u_left.size();
    std::vector<double> fl(n), fr(n), out(n);
    problem.flux(u_left, fl);
    problem.flux(u_right, fr);
    const double a = std::max(problem.max_speed(u_left), problem.max_speed(u_right));
    for (std::size_t k = 0; k < n; ++k)
        out[k] = 0.5 * (fr[k] + fl[k]) - 0.5 * a * (u_right[k] - u_left[k]);
    return out;
}

namespace {

double llf_flux_scalar(double ul, double ur, const ProblemDef& problem) {
    double fl, fr;
    problem.flux({&ul, 1}, {&fl, 1});
    problem.flux({&ur, 1}, {&fr, 1});
    const double a = std::max(problem.max_speed({&ul, 1}), problem.max_speed({&ur, 1}));
    return 0.5 * (fr + fl) - 0.5 * a * (ur - ul);
}

// W = M^{-1} D^T M, the weak-form volume operator.
Matrix weak_volume_operator(const ReferenceElement& elem) {
    const int np = elem.degree + 1;
    Matrix w(np, np);
    for (int k = 0; k < np; ++k)
        for (int i = 0; i < np; ++i)
            w(k, i) = elem.weights[i] * elem.diff(i, k) / elem.weights[k];
    return w;
}

} // namespace

void dg_rhs_scalar(const SolutionState& state, const ReferenceElement& element,
                   const Mesh& mesh, const ProblemDef& problem, SolutionState& rates,
                   Exec exec) {
    assert(state.components == 1);
    const int count = mesh.element_count;
    const int np = state.nodes;
    [[maybe_unused]] const bool par = exec == Exec::parallel;

    const Matrix w = weak_volume_operator(element);

    // fnum[i] holds the numerical flux at the left face of element i.
    std::vector<double> fnum(count);
#pragma omp parallel for if (par) schedule(static)
    for (int i = 0; i < count; ++i) {
        const int left = (i + count - 1) % count;
        fnum[i] = llf_flux_scalar(state.at(0, left, np - 1), state.at(0, i, 0), problem);
    }

#pragma omp parallel for if (par) schedule(static)
    for (int i = 0; i < count; ++i) {
        const auto u = state.element(0, i);
        std::vector<double> f(np);
        for (int k = 0; k < np; ++k)
            problem.flux(u.subspan(k, 1), {&f[k], 1});

        const double inv_j = 1.0 / mesh.jacobians[i];
        const double f_left = fnum[i];
        const double f_right = fnum[(i + 1) % count];
        auto rate = rates.element(0, i);
        for (int k = 0; k < np; ++k) {
            double acc = 0.0;
            for (int l = 0; l < np; ++l)
                acc += w(k, l) * f[l];
            if (k == 0)
                acc += f_left / element.weights[0];
            if (k == np - 1)
                acc -= f_right / element.weights[np - 1];
            rate[k] = inv_j * acc;
        }
    }
    rates.time = state.time;
}

std::array<std::array<std::array<double, 2>, 2>, 2> pc_triple_products() {
    std::array<std::array<std::array<double, 2>, 2>, 2> t{};
    t[0][0][0] = 1.0;
    t[0][1][1] = 1.0;
    t[1][0][1] = 1.0;
    t[1][1][0] = 1.0;
    return t;
}

double pc_max_speed(std::span<const double> u) {
    return std::max(std::abs(u[0] + u[1]), std::abs(u[0] - u[1]));
}

std::array<double, 2> pc_interface_flux(std::span<const double> u_left,
                                        std::span<const double> u_right, FluxMode mode) {
    const double a0 = u_left[0], a1 = u_left[1];
    const double b0 = u_right[0], b1 = u_right[1];

    if (mode == FluxMode::llf) {
        const double speed = std::max(pc_max_speed(u_left), pc_max_speed(u_right));
        const std::array<double, 2> fl = {0.5 * (a0 * a0 + a1 * a1), a0 * a1};
        const std::array<double, 2> fr = {0.5 * (b0 * b0 + b1 * b1), b0 * b1};
        return {0.5 * (fr[0] + fl[0]) - 0.5 * speed * (b0 - a0),
                0.5 * (fr[1] + fl[1]) - 0.5 * speed * (b1 - a1)};
    }

    // Quadratic-split entropy-conservative flux. The groupings keep the
    // result bitwise symmetric under exchange of the two states.
    const auto split = [](double a, double b) { return (a * a + b * b) + a * b; };
    std::array<double, 2> f = {
        (split(a0, b0) + split(a1, b1)) / 6.0,
        (2.0 * (a0 * a1 + b0 * b1) + (a0 * b1 + b0 * a1)) / 6.0,
    };

    if (mode == FluxMode::entropy_stable) {
        const double speed = std::max(pc_max_speed(u_left), pc_max_speed(u_right));
        f[0] -= 0.5 * speed * (b0 - a0);
        f[1] -= 0.5 * speed * (b1 - a1);
    }
    return f;
}

void pc_system_rhs(const SolutionState& state, const ReferenceElement& element,
                   const Mesh& mesh, const ProblemDef& problem, SolutionState& rates,
                   Exec exec) {
    assert(state.components == 2);
    const int count = mesh.element_count;
    const int np = state.nodes;
    [[maybe_unused]] const bool par = exec == Exec::parallel;

    std::vector<std::array<double, 2>> fnum(count);
#pragma omp parallel for if (par) schedule(static)
    for (int i = 0; i < count; ++i) {
        const int left = (i + count - 1) % count;
        const double ul[2] = {state.at(0, left, np - 1), state.at(1, left, np - 1)};
        const double ur[2] = {state.at(0, i, 0), state.at(1, i, 0)};
        fnum[i] = pc_interface_flux({ul, 2}, {ur, 2}, problem.interface_flux);
    }

#pragma omp parallel for if (par) schedule(static)
    for (int i = 0; i < count; ++i) {
        const auto u0 = state.element(0, i);
        const auto u1 = state.element(1, i);

        std::vector<double> w00(np), w01(np), w11(np);
        for (int k = 0; k < np; ++k) {
            w00[k] = u0[k] * u0[k];
            w01[k] = u0[k] * u1[k];
            w11[k] = u1[k] * u1[k];
        }
        const auto dw00 = element.diff.apply(w00);
        const auto dw01 = element.diff.apply(w01);
        const auto dw11 = element.diff.apply(w11);
        const auto du0 = element.diff.apply(u0);
        const auto du1 = element.diff.apply(u1);

        const double inv_j = 1.0 / mesh.jacobians[i];
        auto rate0 = rates.element(0, i);
        auto rate1 = rates.element(1, i);
        for (int k = 0; k < np; ++k) {
            rate0[k] = -(dw00[k] + u0[k] * du0[k] + dw11[k] + u1[k] * du1[k]) / 3.0;
            rate1[k] = -(2.0 * dw01[k] + u1[k] * du0[k] + u0[k] * du1[k]) / 3.0;
        }

        // Boundary correction: f_num minus the (1/3, 1/6) split of the
        // volume flux restricted to the faces.
        const auto& fl = fnum[i];
        const auto& fr = fnum[(i + 1) % count];
        const int last = np - 1;
        const double inner0_l = (w00[0] + w11[0]) / 3.0 + (u0[0] * u0[0] + u1[0] * u1[0]) / 6.0;
        const double inner0_r =
            (w00[last] + w11[last]) / 3.0 + (u0[last] * u0[last] + u1[last] * u1[last]) / 6.0;
        const double inner1_l = 2.0 * (w01[0] / 3.0 + (u0[0] * u1[0]) / 6.0);
        const double inner1_r = 2.0 * (w01[last] / 3.0 + (u0[last] * u1[last]) / 6.0);

        rate0[0] += (fl[0] - inner0_l) / element.weights[0];
        rate0[last] -= (fr[0] - inner0_r) / element.weights[last];
        rate1[0] += (fl[1] - inner1_l) / element.weights[0];
        rate1[last] -= (fr[1] - inner1_r) / element.weights[last];

        for (int k = 0; k < np; ++k) {
            rate0[k] *= inv_j;
            rate1[k] *= inv_j;
        }
    }
    rates.time = state.time;
}

SolutionState ssprk33_step(const SolutionState& state, const RhsFn& rhs, double dt) {
    if (!(dt > 0.0))
        throw std::invalid_argument("ssprk33_step: dt must be positive");

    const std::size_t n = state.values.size();
    SolutionState k = state;
    SolutionState stage = state;

    rhs(state, k);
    for (std::size_t m = 0; m < n; ++m)
        stage.values[m] = state.values[m] + dt * k.values[m];
    stage.time = state.time + dt;

    rhs(stage, k);
    for (std::size_t m = 0; m < n; ++m)
        stage.values[m] = 0.75 * state.values[m] + 0.25 * (stage.values[m] + dt * k.values[m]);
    stage.time = state.time + 0.5 * dt;

    rhs(stage, k);
    SolutionState out = state;
    for (std::size_t m = 0; m < n; ++m)
        out.values[m] =
            (1.0 / 3.0) * state.values[m] + (2.0 / 3.0) * (stage.values[m] + dt * k.values[m]);
    out.time = state.time + dt;
    return out;
}

double compute_dt(const SolutionState& state, const Mesh& mesh,
                  const ReferenceElement& element, const ProblemDef& problem, double cfl,
                  double t_end) {
    if (!(cfl > 0.0))
        throw std::invalid_argument("compute_dt: cfl must be positive");

    double speed = 0.0;
    std::vector<double> u(state.components);
    for (int i = 0; i < state.elements; ++i)
        for (int k = 0; k < state.nodes; ++k) {
            for (int c = 0; c < state.components; ++c)
                u[c] = state.at(c, i, k);
            speed = std::max(speed, problem.max_speed(u));
        }

    const double jmin = *std::min_element(mesh.jacobians.begin(), mesh.jacobians.end());
    double dt;
    if (speed < 1e-14)
        dt = cfl * 2.0 * jmin;
    else
        dt = cfl * 2.0 * jmin / ((2.0 * element.degree + 1.0) * speed);

    const double remaining = t_end - state.time;
    if (std::isfinite(remaining) && dt > remaining)
        dt = remaining;
    return dt;
}

long regularize_state(SolutionState& state, const ReferenceElement& element,
                      const PAMatrix& pa_low, const PAMatrix& pa_high, RegMode mode,
                      const SensorConfig& sensor, const AdmmParams& admm, long step,
                      std::vector<SensorRow>& log, Exec exec) {
    const int n = state.components;
    const long total = static_cast<long>(state.elements) * n;
    [[maybe_unused]] const bool par = exec == Exec::parallel;

    std::vector<SensorRow> rows(total);
    std::vector<char> diverged(total, 0);
    long troubled = 0;

#pragma omp parallel for if (par) schedule(dynamic) reduction(+ : troubled)
    for (long idx = 0; idx < total; ++idx) {
        const int i = static_cast<int>(idx / n);
        const int c = static_cast<int>(idx % n);
        auto u = state.element(c, i);

        const auto [s1, s3] = sensor_values(u, pa_low, pa_high);
        const auto reading = regularization_strength(s1, s3, sensor, max_abs(u));
        rows[idx] = {step, i, c, reading.s1, reading.s3, reading.ratio, reading.lambda};

        if (reading.lambda > 0.0) {
            AdmmParams params = admm;
            params.mu = 2.0 / reading.lambda;
            try {
                auto sparse = admm_solve(u, pa_high, params);
                if (mode == RegMode::l1_mass_corrected)
                    sparse = mass_correct(u, sparse, element);
                std::copy(sparse.begin(), sparse.end(), u.begin());
                ++troubled;
            } catch (const AdmmDivergence&) {
                diverged[idx] = 1; // leave the element untouched; flag breakdown
            }
        }
    }

    log.insert(log.end(), rows.begin(), rows.end());
    for (char flag : diverged)
        if (flag)
            return -1;
    return troubled;
}

RunReport run_simulation(const RunConfig& config) {
    const ReferenceElement element = build_reference_element(config.degree);
    const Mesh mesh = build_mesh(config.domain_a, config.domain_b, config.elements);
    const ProblemDef problem = make_problem(config.problem, config.flux);

    const int n = problem.component_count;
    const int np = config.degree + 1;
    SolutionState state = SolutionState::zeros(n, config.elements, np);

    std::vector<double> point(n);
    for (int i = 0; i < config.elements; ++i)
        for (int k = 0; k < np; ++k) {
            problem.initial(mesh.physical_coordinate(i, element.nodes[k]), point);
            for (int c = 0; c < n; ++c)
                state.at(c, i, k) = point[c];
        }

    const RhsFn rhs = [&](const SolutionState& s, SolutionState& rates) {
        if (n == 1)
            dg_rhs_scalar(s, element, mesh, problem, rates, config.exec);
        else
            pc_system_rhs(s, element, mesh, problem, rates, config.exec);
    };

    PAMatrix pa_low, pa_high;
    if (config.mode != RegMode::none) {
        pa_low = build_pa_matrix(element, config.sensor.order_low);
        pa_high = build_pa_matrix(element, config.sensor.order_high);
    }

    RunReport report;
    const auto record = [&](long step, double dt, long troubled) {
        DiagnosticsRow row;
        row.step = step;
        row.time = state.time;
        row.dt = dt;
        row.mass.resize(n);
        for (int c = 0; c < n; ++c)
            row.mass[c] = total_mass(state, mesh, element, c);
        row.energy = energy(state, mesh, element);
        row.troubled = troubled;
        report.diagnostics.push_back(std::move(row));
    };
    record(0, 0.0, 0);

    const double t_end = config.t_end;
    const double t_eps = 1e-12 * std::max(1.0, std::abs(t_end));
    long step = 0;

    while (t_end - state.time > t_eps) {
        if (!state.all_finite()) {
            report.breakdown = true;
            report.breakdown_time = state.time;
            break;
        }

        const double remaining = t_end - state.time;
        double dt = compute_dt(state, mesh, element, problem, config.cfl, t_end);
        if (!(dt > 0.0) || !std::isfinite(dt) || state.time + dt == state.time) {
            // dt collapsed below the time resolution: the wave speed has
            // blown up and the run cannot advance
            report.breakdown = true;
            report.breakdown_time = state.time;
            break;
        }
        const bool final_step = dt >= remaining;

        state = ssprk33_step(state, rhs, dt);
        if (final_step)
            state.time = t_end;
        ++step;

        if (!state.all_finite()) {
            report.breakdown = true;
            report.breakdown_time = state.time;
            break;
        }

        long troubled = 0;
        if (config.mode != RegMode::none && step % config.apply_every == 0) {
            troubled = regularize_state(state, element, pa_low, pa_high, config.mode,
                                        config.sensor, config.admm, step, report.sensor_log,
                                        config.exec);
            if (troubled < 0 || !state.all_finite()) {
                report.breakdown = true;
                report.breakdown_time = state.time;
                break;
            }
        }
        record(step, dt, troubled);
    }

    if (problem.has_reference && !report.breakdown)
        report.errors = error_norms(state, problem.reference, mesh, element);
    report.final_state = std::move(state);
    return report;
}

} // namespace l1dg
