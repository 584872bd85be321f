#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace l1dg {

enum class FluxMode { llf, entropy_conservative, entropy_stable };

/// Execution policy for the element-parallel kernels. Results are bitwise
/// identical either way; every element writes only its own slice.
enum class Exec { serial, parallel };

/// Nodal degrees of freedom for every component and element at one time
/// instant. Layout: component-major, then element, then node.
struct SolutionState {
    int components = 1;
    int elements = 0;
    int nodes = 0; // p + 1
    double time = 0.0;
    std::vector<double> values;

    static SolutionState zeros(int components, int elements, int nodes) {
        SolutionState s;
        s.components = components;
        s.elements = elements;
        s.nodes = nodes;
        s.values.assign(static_cast<std::size_t>(components) * elements * nodes, 0.0);
        return s;
    }

    std::size_t index(int c, int i, int k) const {
        return (static_cast<std::size_t>(c) * elements + i) * nodes + k;
    }
    double& at(int c, int i, int k) { return values[index(c, i, k)]; }
    double at(int c, int i, int k) const { return values[index(c, i, k)]; }

    std::span<double> element(int c, int i) {
        return {values.data() + index(c, i, 0), static_cast<std::size_t>(nodes)};
    }
    std::span<const double> element(int c, int i) const {
        return {values.data() + index(c, i, 0), static_cast<std::size_t>(nodes)};
    }

    bool all_finite() const {
        for (double x : values)
            if (!std::isfinite(x))
                return false;
        return true;
    }
};

/// A conservation law with periodic boundaries: physical flux, maximum
/// characteristic speed, initial condition, and (optionally) an exact
/// reference solution.
struct ProblemDef {
    int component_count = 1;
    std::function<void(std::span<const double>, std::span<double>)> flux;
    std::function<double(std::span<const double>)> max_speed;
    std::function<void(double, std::span<double>)> initial;
    std::function<double(double, double, int)> reference; // (x, t, component)
    bool has_reference = false;
    FluxMode interface_flux = FluxMode::llf;
};

} // namespace l1dg
