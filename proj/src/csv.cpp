#include "l1dg/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace l1dg {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary); // binary keeps newlines as LF
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out)
        throw std::runtime_error("write to '" + path + "' failed");
}

} // namespace

std::string format_float(double x, int significant) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*e", significant - 1, x);
    return buf;
}

void write_solution_csv(const std::string& path, const SolutionState& state, const Mesh& mesh,
                        const ReferenceElement& element, const ProblemDef& problem,
                        int precision) {
    auto out = open_out(path);
    out << "x";
    for (int c = 0; c < state.components; ++c)
        out << ",u" << c;
    if (problem.has_reference)
        out << ",reference";
    out << "\n";

    for (int i = 0; i < state.elements; ++i)
        for (int k = 0; k < state.nodes; ++k) {
            const double x = mesh.physical_coordinate(i, element.nodes[k]);
            out << format_float(x, precision);
            for (int c = 0; c < state.components; ++c)
                out << "," << format_float(state.at(c, i, k), precision);
            if (problem.has_reference)
                out << "," << format_float(problem.reference(x, state.time, 0), precision);
            out << "\n";
        }
    finish(out, path);
}

void write_error_table(const std::string& path, const std::vector<ErrorTableRow>& rows,
                       int precision) {
    auto out = open_out(path);
    out << "p,I,mode,m_norm,one_norm,inf_norm,breakdown\n";
    for (const auto& row : rows) {
        out << row.degree << "," << row.elements << "," << row.mode << ",";
        if (row.errors.valid) {
            out << format_float(row.errors.m_norm, precision) << ","
                << format_float(row.errors.one_norm, precision) << ","
                << format_float(row.errors.inf_norm, precision);
        } else {
            out << ",,";
        }
        out << "," << (row.breakdown ? "true" : "false") << "\n";
    }
    finish(out, path);
}

void write_diagnostics(const std::string& path, const RunReport& report, int components,
                       int precision) {
    auto out = open_out(path);
    out << "step,time,dt";
    for (int c = 0; c < components; ++c)
        out << ",mass_" << c;
    out << ",energy,troubled_count\n";

    for (const auto& row : report.diagnostics) {
        out << row.step << "," << format_float(row.time, precision) << ","
            << format_float(row.dt, precision);
        for (int c = 0; c < components; ++c)
            out << "," << format_float(row.mass[c], precision);
        out << "," << format_float(row.energy, precision) << "," << row.troubled << "\n";
    }
    finish(out, path);
}

void write_sensor_log(const std::string& path, const RunReport& report, int precision) {
    auto out = open_out(path);
    out << "step,element,variable,s1,s3,ratio,lambda\n";
    for (const auto& row : report.sensor_log) {
        out << row.step << "," << row.element << "," << row.variable << ","
            << format_float(row.s1, precision) << "," << format_float(row.s3, precision) << ","
            << format_float(row.ratio, precision) << "," << format_float(row.lambda, precision)
            << "\n";
    }
    finish(out, path);
}

} // namespace l1dg
