// Timing harness for the element-parallel kernels: semidiscrete right-hand
// sides and the sparse-reconstruction sweep, serial vs OpenMP. The two
// execution policies must agree bitwise; the harness checks that too.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "l1dg/solver.hpp"

using namespace l1dg;

namespace {

using clock_type = std::chrono::steady_clock;

double ms_per_iter(const std::function<void()>& body, int iters) {
    body(); // warm up
    const auto start = clock_type::now();
    for (int i = 0; i < iters; ++i)
        body();
    const std::chrono::duration<double, std::milli> elapsed = clock_type::now() - start;
    return elapsed.count() / iters;
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-24s %10.3f ms %10.3f ms %8.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, identical ? "bitwise equal" : "MISMATCH");
}

// Square-wave data: many troubled elements so the sweep does real work.
SolutionState shocky_state(int components, int elements, int nodes, const ReferenceElement& elem,
                           const Mesh& mesh) {
    auto state = SolutionState::zeros(components, elements, nodes);
    for (int c = 0; c < components; ++c)
        for (int i = 0; i < elements; ++i)
            for (int k = 0; k < nodes; ++k) {
                const double x = mesh.physical_coordinate(i, elem.nodes[k]);
                state.at(c, i, k) =
                    (std::sin(12.0 * x + c) > 0.0 ? 1.0 : -1.0) + 0.3 * std::sin(3.0 * x + c);
            }
    return state;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kernel benchmark: serial vs OpenMP execution"};
    int degree = 6;
    int elements = 256;
    int iters = 200;
    app.add_option("--degree", degree, "Polynomial degree");
    app.add_option("--elements", elements, "Element count");
    app.add_option("--iters", iters, "Iterations per measurement");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both columns run serially\n");
#endif
    std::printf("degree=%d elements=%d iters=%d\n\n", degree, elements, iters);
    std::printf("%-24s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    const auto elem = build_reference_element(degree);
    const auto mesh = build_mesh(0.0, 2.0, elements);
    const int nodes = degree + 1;

    { // scalar RHS
        const auto problem = make_problem("burgers", FluxMode::llf);
        const auto state = shocky_state(1, elements, nodes, elem, mesh);
        auto rates_s = SolutionState::zeros(1, elements, nodes);
        auto rates_p = rates_s;
        const double ts = ms_per_iter(
            [&] { dg_rhs_scalar(state, elem, mesh, problem, rates_s, Exec::serial); }, iters);
        const double tp = ms_per_iter(
            [&] { dg_rhs_scalar(state, elem, mesh, problem, rates_p, Exec::parallel); }, iters);
        report("scalar rhs", ts, tp, rates_s.values == rates_p.values);
    }

    { // system RHS
        const auto problem = make_problem("pc-system", FluxMode::entropy_stable);
        const auto state = shocky_state(2, elements, nodes, elem, mesh);
        auto rates_s = SolutionState::zeros(2, elements, nodes);
        auto rates_p = rates_s;
        const double ts = ms_per_iter(
            [&] { pc_system_rhs(state, elem, mesh, problem, rates_s, Exec::serial); }, iters);
        const double tp = ms_per_iter(
            [&] { pc_system_rhs(state, elem, mesh, problem, rates_p, Exec::parallel); }, iters);
        report("system rhs", ts, tp, rates_s.values == rates_p.values);
    }

    { // regularization sweep (mutates the state; run on fresh copies)
        const auto pa1 = build_pa_matrix(elem, 1);
        const auto pa3 = build_pa_matrix(elem, 3);
        const SensorConfig sensor;
        const AdmmParams admm;
        const auto base = shocky_state(1, elements, nodes, elem, mesh);
        const int sweep_iters = std::max(1, iters / 20);

        SolutionState out_s = base, out_p = base;
        std::vector<SensorRow> log;
        const double ts = ms_per_iter(
            [&] {
                out_s = base;
                log.clear();
                regularize_state(out_s, elem, pa1, pa3, RegMode::l1_mass_corrected, sensor,
                                 admm, 0, log, Exec::serial);
            },
            sweep_iters);
        const double tp = ms_per_iter(
            [&] {
                out_p = base;
                log.clear();
                regularize_state(out_p, elem, pa1, pa3, RegMode::l1_mass_corrected, sensor,
                                 admm, 0, log, Exec::parallel);
            },
            sweep_iters);
        report("regularization sweep", ts, tp, out_s.values == out_p.values);
    }

    return 0;
}
