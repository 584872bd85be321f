#pragma once

#include <string>
#include <vector>

#include "l1dg/solver.hpp"

namespace l1dg {

/// Scientific notation with the requested number of significant digits
/// (17 round-trips a double losslessly).
std::string format_float(double x, int significant);

/// One row of the error table.
struct ErrorTableRow {
    int degree = 0;
    int elements = 0;
    std::string mode;
    ErrorReport errors;
    bool breakdown = false;
};

/// solution.csv: x, u0[, u1][, reference], one row per global node,
/// elements in order. The reference column is present when the problem
/// carries an exact solution.
void write_solution_csv(const std::string& path, const SolutionState& state, const Mesh& mesh,
                        const ReferenceElement& element, const ProblemDef& problem,
                        int precision);

/// errors.csv: p, I, mode, m_norm, one_norm, inf_norm, breakdown. Norm
/// fields stay empty for breakdown runs and runs without a reference.
void write_error_table(const std::string& path, const std::vector<ErrorTableRow>& rows,
                       int precision);

/// diagnostics.csv: step, time, dt, mass_0[, mass_1], energy, troubled_count.
void write_diagnostics(const std::string& path, const RunReport& report, int components,
                       int precision);

/// sensor.csv: step, element, variable, s1, s3, ratio, lambda.
void write_sensor_log(const std::string& path, const RunReport& report, int precision);

} // namespace l1dg
