#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "l1dg/config.hpp"
#include "l1dg/csv.hpp"
#include "l1dg/solver.hpp"

namespace {

int run(const std::string& config_path, const std::string& output_dir,
        const std::vector<std::string>& overrides, bool quiet) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: cannot read config file '" << config_path << "'\n";
        return 2;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();

    l1dg::RunConfig config = l1dg::parse_config(buffer.str(), overrides);
    if (!output_dir.empty())
        config.output_dir = output_dir;

    std::filesystem::create_directories(config.output_dir);
    const auto file = [&](const char* name) {
        return (std::filesystem::path(config.output_dir) / name).string();
    };

    {
        std::ofstream echo(file("config_echo.json"), std::ios::binary);
        echo << l1dg::effective_config_json(config);
    }

    const auto report = l1dg::run_simulation(config);

    const auto element = l1dg::build_reference_element(config.degree);
    const auto mesh = l1dg::build_mesh(config.domain_a, config.domain_b, config.elements);
    const auto problem = l1dg::make_problem(config.problem, config.flux);

    l1dg::write_solution_csv(file("solution.csv"), report.final_state, mesh, element, problem,
                             config.precision);
    l1dg::write_error_table(file("errors.csv"),
                            {{config.degree, config.elements, l1dg::to_string(config.mode),
                              report.errors, report.breakdown}},
                            config.precision);
    l1dg::write_diagnostics(file("diagnostics.csv"), report, problem.component_count,
                            config.precision);
    l1dg::write_sensor_log(file("sensor.csv"), report, config.precision);

    if (!quiet) {
        std::cout << "problem=" << config.problem << " p=" << config.degree
                  << " I=" << config.elements << " mode=" << l1dg::to_string(config.mode)
                  << " steps=" << report.diagnostics.back().step
                  << " t=" << report.final_state.time << "\n";
        if (report.breakdown)
            std::cout << "breakdown at t=" << report.breakdown_time << "\n";
        else if (report.errors.valid)
            std::cout << "errors: M=" << report.errors.m_norm
                      << " 1=" << report.errors.one_norm << " inf=" << report.errors.inf_norm
                      << "\n";
        std::cout << "outputs written to " << config.output_dir << "\n";
    }
    return report.breakdown ? 3 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"One-dimensional nodal DG solver with sensor-driven sparse reconstruction"};

    std::string config_path;
    std::string output_dir;
    std::vector<std::string> overrides;
    bool quiet = false;

    app.add_option("--config", config_path, "Path to the JSON experiment description")
        ->required();
    app.add_option("--output-dir", output_dir, "Directory for the CSV outputs");
    app.add_option("--override", overrides,
                   "Config override of the form key.path=value (repeatable)");
    app.add_flag("--quiet", quiet, "Suppress the run summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        return run(config_path, output_dir, overrides, quiet);
    } catch (const l1dg::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
