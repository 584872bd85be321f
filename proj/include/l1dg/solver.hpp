#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "l1dg/admm.hpp"
#include "l1dg/element.hpp"
#include "l1dg/problems.hpp"
#include "l1dg/sensor.hpp"
#include "l1dg/state.hpp"

namespace l1dg {

enum class RegMode { none, l1, l1_mass_corrected };

std::string to_string(RegMode mode);

/// Full experiment description.
struct RunConfig {
    std::string problem = "burgers";
    int degree = 4;
    int elements = 15;
    double domain_a = 0.0;
    double domain_b = 2.0;
    double t_end = 0.345;
    double cfl = 0.5;
    RegMode mode = RegMode::none;
    SensorConfig sensor;
    AdmmParams admm; // admm.mu is ignored; each solve uses mu = 2 / lambda
    FluxMode flux = FluxMode::llf;
    int apply_every = 1;
    std::string output_dir = ".";
    int precision = 17; // significant digits in output files
    Exec exec = Exec::parallel;
};

struct DiagnosticsRow {
    long step = 0;
    double time = 0.0;
    double dt = 0.0;
    std::vector<double> mass; // one entry per component
    double energy = 0.0;
    long troubled = 0;
};

struct SensorRow {
    long step = 0;
    int element = 0;
    int variable = 0;
    double s1 = 0.0, s3 = 0.0, ratio = 0.0, lambda = 0.0;
};

struct RunReport {
    SolutionState final_state;
    ErrorReport errors;
    bool breakdown = false;
    double breakdown_time = 0.0;
    std::vector<DiagnosticsRow> diagnostics;
    std::vector<SensorRow> sensor_log;
};

/// Local Lax-Friedrichs flux
///   (f(u+) + f(u-)) / 2 - (a_max / 2) (u+ - u-)
/// with a_max the larger of the two local characteristic speeds.
std::vector<double> llf_flux(std::span<const double> u_left, std::span<const double> u_right,
                             const ProblemDef& problem);

/// Weak-form semidiscrete rate for a scalar law with periodic coupling:
/// per element, (1/J_i) M^{-1} (D^T M f - R^T B f_num).
void dg_rhs_scalar(const SolutionState& state, const ReferenceElement& element,
                   const Mesh& mesh, const ProblemDef& problem, SolutionState& rates,
                   Exec exec = Exec::parallel);

/// Triple products <phi_i phi_j phi_k> of the first two normalized
/// probabilists' Hermite polynomials.
std::array<std::array<std::array<double, 2>, 2>, 2> pc_triple_products();

/// Largest absolute eigenvalue of the system Jacobian: max |u0 +- u1|.
double pc_max_speed(std::span<const double> u);

/// Interface flux of the two-component system in the requested mode.
std::array<double, 2> pc_interface_flux(std::span<const double> u_left,
                                        std::span<const double> u_right, FluxMode mode);

/// Skew-symmetric semidiscrete rate for the two-component system, with the
/// (1/3, 1/6) boundary split and the configured interface flux.
void pc_system_rhs(const SolutionState& state, const ReferenceElement& element,
                   const Mesh& mesh, const ProblemDef& problem, SolutionState& rates,
                   Exec exec = Exec::parallel);

using RhsFn = std::function<void(const SolutionState&, SolutionState&)>;

/// One step of the three-stage Shu-Osher scheme:
///   u1 = u + dt F(u)
///   u2 = 3/4 u + 1/4 (u1 + dt F(u1))
///   u+ = 1/3 u + 2/3 (u2 + dt F(u2)).
SolutionState ssprk33_step(const SolutionState& state, const RhsFn& rhs, double dt);

/// CFL time step cfl * min(2 J_i) / ((2p+1) * max nodal speed), capped so
/// the final step lands exactly on t_end. Falls back to cfl * min(2 J_i)
/// when the wave speed vanishes.
double compute_dt(const SolutionState& state, const Mesh& mesh,
                  const ReferenceElement& element, const ProblemDef& problem, double cfl,
                  double t_end = std::numeric_limits<double>::infinity());

/// Sparse-reconstruction sweep over all elements and conserved variables:
/// sensor reading, then an ADMM solve with mu = 2/lambda wherever lambda > 0,
/// optionally followed by the mass correction. Returns the number of
/// regularized (element, variable) pairs, or -1 if a solve diverged.
/// Sensor readings are appended to log in (element, variable) order.
long regularize_state(SolutionState& state, const ReferenceElement& element,
                      const PAMatrix& pa_low, const PAMatrix& pa_high, RegMode mode,
                      const SensorConfig& sensor, const AdmmParams& admm, long step,
                      std::vector<SensorRow>& log, Exec exec = Exec::parallel);

/// Run the configured experiment to t_end (or breakdown) and collect
/// per-step diagnostics. A non-finite state is a reported outcome, never a
/// crash.
RunReport run_simulation(const RunConfig& config);

} // namespace l1dg
