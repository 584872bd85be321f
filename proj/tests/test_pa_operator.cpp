#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "l1dg/admm.hpp"
#include "l1dg/pa_operator.hpp"

using namespace l1dg;

namespace {

double horner(std::span<const double> coeffs, double x) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

// Direct evaluation of the jump estimate at one midpoint from the defining
// sums, bypassing the matrix assembly.
double brute_force_pa(std::span<const double> stencil, std::span<const double> values,
                      double eval_point) {
    const auto coeffs = annihilation_coefficients(stencil);
    double q = 0.0, acc = 0.0;
    for (std::size_t j = 0; j < stencil.size(); ++j) {
        if (stencil[j] >= eval_point)
            q += coeffs[j];
        acc += coeffs[j] * values[j];
    }
    return acc / q;
}

} // namespace

TEST_SUITE_BEGIN("pa_operator");

TEST_CASE("annihilation coefficients closed form") {
    const double s1[] = {0.0, 1.0};
    auto c1 = annihilation_coefficients(s1);
    CHECK(c1[0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(c1[1] == doctest::Approx(1.0).epsilon(1e-15));

    const double s2[] = {-1.0, 0.0, 1.0};
    auto c2 = annihilation_coefficients(s2);
    CHECK(c2[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c2[1] == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(c2[2] == doctest::Approx(1.0).epsilon(1e-15));

    const double s3[] = {0.0, 1.0, 2.0, 3.0};
    auto c3 = annihilation_coefficients(s3);
    CHECK(c3[0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(c3[1] == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(c3[2] == doctest::Approx(-3.0).epsilon(1e-15));
    CHECK(c3[3] == doctest::Approx(1.0).epsilon(1e-15));

    const double dup[] = {0.0, 1.0, 1.0};
    CHECK_THROWS_AS(annihilation_coefficients(dup), std::invalid_argument);
}

TEST_CASE("coefficients reproduce the m-th derivative of degree-m polynomials") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::uniform_real_distribution<double> lead(0.5, 1.5);

    for (int m = 1; m <= 5; ++m) {
        for (int rep = 0; rep < 20; ++rep) {
            // sorted stencil with a guaranteed gap
            std::vector<double> stencil(m + 1);
            double x = unif(rng);
            for (int j = 0; j <= m; ++j) {
                stencil[j] = x;
                x += 0.1 + 0.4 * std::abs(unif(rng));
            }
            auto coeffs = annihilation_coefficients(stencil);

            std::vector<double> poly(m + 1);
            for (auto& c : poly)
                c = unif(rng);
            poly[m] = lead(rng) * (unif(rng) > 0 ? 1.0 : -1.0);

            double mth = poly[m];
            for (int k = 2; k <= m; ++k)
                mth *= k;
            double lhs = 0.0;
            for (int j = 0; j <= m; ++j)
                lhs += coeffs[j] * horner(poly, stencil[j]);
            CHECK(std::abs(lhs - mth) < 1e-8 * std::max(1.0, std::abs(mth)));
        }
    }
}

TEST_CASE("normalization factor") {
    const double s1[] = {0.0, 1.0};
    const double c1[] = {-1.0, 1.0};
    CHECK(normalization_factor(s1, 0.5, c1) == doctest::Approx(1.0).epsilon(1e-15));

    const double s3[] = {0.0, 1.0, 2.0, 3.0};
    const double c3[] = {-1.0, 3.0, -3.0, 1.0};
    CHECK(normalization_factor(s3, 1.5, c3) == doctest::Approx(-2.0).epsilon(1e-15));

    const double s2[] = {-1.0, 0.0, 1.0};
    const double c2[] = {1.0, -2.0, 1.0};
    CHECK(normalization_factor(s2, -0.5, c2) == doctest::Approx(-1.0).epsilon(1e-15));

    // eval at 0 on (0, 1) counts both points; the first difference sums to 0
    CHECK_THROWS_AS(normalization_factor(s1, 0.0, c1), std::runtime_error);
    CHECK_THROWS_AS(normalization_factor(s1, 2.0, c1), std::invalid_argument);
}

TEST_CASE("matrix rows have exactly m+1 nonzeros and kill constants") {
    for (int p : {3, 7, 13}) {
        auto elem = build_reference_element(p);
        for (int m : {1, 2, 3}) {
            auto pa = build_pa_matrix(elem, m);
            for (int k = 0; k < p; ++k) {
                int nonzeros = 0;
                for (int j = 0; j <= p; ++j)
                    if (pa.matrix(k, j) != 0.0)
                        ++nonzeros;
                CHECK(nonzeros == m + 1);
                CHECK(static_cast<int>(pa.stencils[k].size()) == m + 1);
            }
            const std::vector<double> ones(p + 1, 1.0);
            for (double v : apply_pa(pa, ones))
                CHECK(std::abs(v) < 1e-10);
        }
        CHECK_THROWS_AS(build_pa_matrix(elem, 0), std::invalid_argument);
        CHECK_THROWS_AS(build_pa_matrix(elem, p + 1), std::invalid_argument);
    }
}

TEST_CASE("unit step at the element center is recovered exactly") {
    auto elem = build_reference_element(7);
    auto pa = build_pa_matrix(elem, 3);

    std::vector<double> step(8);
    for (int k = 0; k <= 7; ++k)
        step[k] = elem.nodes[k] > 0.0 ? 1.0 : 0.0;

    auto jumps = apply_pa(pa, step);
    // midpoint 3 sits exactly at the step location (symmetric nodes)
    CHECK(pa.midpoints[3] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(jumps[3] - 1.0) < 1e-10);

    // against direct evaluation of the defining sums
    std::vector<double> stencil, values;
    for (int idx : pa.stencils[3]) {
        stencil.push_back(elem.nodes[idx]);
        values.push_back(step[idx]);
    }
    CHECK(jumps[3] ==
          doctest::Approx(brute_force_pa(stencil, values, pa.midpoints[3])).epsilon(1e-14));
}

TEST_CASE("sensor contrast: smooth data decays from m=1 to m=3") {
    auto elem = build_reference_element(7);
    auto pa1 = build_pa_matrix(elem, 1);
    auto pa3 = build_pa_matrix(elem, 3);

    std::vector<double> smooth(8);
    for (int k = 0; k <= 7; ++k)
        smooth[k] = std::cos(elem.nodes[k]) + 0.5 * std::sin(2.0 * elem.nodes[k]);

    CHECK(max_abs(apply_pa(pa3, smooth)) < max_abs(apply_pa(pa1, smooth)));
}

TEST_CASE("apply_pa basics") {
    auto elem = build_reference_element(9);
    auto pa2 = build_pa_matrix(elem, 2);

    const std::vector<double> zero(10, 0.0);
    for (double v : apply_pa(pa2, zero))
        CHECK(v == 0.0);

    std::vector<double> linear(10);
    for (int k = 0; k <= 9; ++k)
        linear[k] = elem.nodes[k];
    for (double v : apply_pa(pa2, linear))
        CHECK(std::abs(v) < 1e-10);

    const std::vector<double> wrong(5, 0.0);
    CHECK_THROWS_AS(apply_pa(pa2, wrong), std::invalid_argument);
}

TEST_CASE("annihilation of random low-degree polynomials") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    auto elem = build_reference_element(11);
    for (int m = 1; m <= 5; ++m) {
        auto pa = build_pa_matrix(elem, m);
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<double> coeffs(m); // degree m-1
            for (auto& c : coeffs)
                c = unif(rng);
            std::vector<double> samples(12);
            for (int k = 0; k <= 11; ++k)
                samples[k] = horner(coeffs, elem.nodes[k]);
            CHECK(max_abs(apply_pa(pa, samples)) < 1e-9);
        }
    }
}

TEST_CASE("order-3 decay on smooth data under dyadic shrinking") {
    auto elem = build_reference_element(7);
    auto pa3 = build_pa_matrix(elem, 3);

    auto smooth = [](double x) { return std::sin(2.0 * x + 0.3); };
    std::vector<double> maxima;
    for (int level = 0; level < 4; ++level) {
        const double h = std::pow(0.5, level);
        std::vector<double> samples(8);
        for (int k = 0; k <= 7; ++k)
            samples[k] = smooth(h * elem.nodes[k]);
        maxima.push_back(max_abs(apply_pa(pa3, samples)));
    }
    // one halving: decay close to 2^3 (factor-2 tolerance either way)
    const double ratio = maxima[1] / maxima[2];
    CHECK(ratio > 4.0);
    CHECK(ratio < 16.0);
    // least-squares slope over the three refinements
    const double slope = std::log2(maxima[0] / maxima[3]) / 3.0;
    CHECK(slope >= 2.5);
}

TEST_CASE("decay order saturates at the smoothness of the data") {
    auto elem = build_reference_element(7);
    auto pa3 = build_pa_matrix(elem, 3);

    // x|x| has a second-derivative jump at 0; the order-3 operator cannot
    // do better than the data allows
    std::vector<double> maxima;
    for (int level = 0; level < 4; ++level) {
        const double h = std::pow(0.5, level);
        std::vector<double> samples(8);
        for (int k = 0; k <= 7; ++k) {
            const double x = h * elem.nodes[k];
            samples[k] = x * std::abs(x) + 0.2 * std::sin(x);
        }
        maxima.push_back(max_abs(apply_pa(pa3, samples)));
    }
    const double slope = std::log2(maxima[0] / maxima[3]) / 3.0;
    CHECK(slope >= 0.5);
    CHECK(slope <= 2.6); // well below the smooth-data order 3
}

TEST_CASE("jump recovery stays first order with a smooth background") {
    auto elem = build_reference_element(7);
    auto pa1 = build_pa_matrix(elem, 1);

    const double jump_height = 2.0;
    std::vector<double> errors;
    for (int level = 0; level < 4; ++level) {
        const double h = std::pow(0.5, level);
        std::vector<double> samples(8);
        for (int k = 0; k <= 7; ++k) {
            const double x = h * elem.nodes[k];
            samples[k] = (x > 0.0 ? jump_height : 0.0) + 0.4 * std::sin(1.3 * x + 0.4);
        }
        auto jumps = apply_pa(pa1, samples);
        errors.push_back(std::abs(jumps[3] - jump_height));
    }
    const double slope = std::log2(errors[0] / errors[3]) / 3.0;
    CHECK(slope >= 0.8);

    // piecewise-constant data alone is exact
    std::vector<double> pure(8);
    for (int k = 0; k <= 7; ++k)
        pure[k] = elem.nodes[k] > 0.0 ? jump_height : 0.0;
    CHECK(std::abs(apply_pa(pa1, pure)[3] - jump_height) < 1e-9);
}

TEST_CASE("l1 norm of the transform is the ADMM regularization term") {
    auto elem = build_reference_element(9);
    auto pa = build_pa_matrix(elem, 3);
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    std::vector<double> v(10);
    for (auto& x : v)
        x = unif(rng);

    const auto transform = apply_pa(pa, v);
    const auto direct = pa.matrix.apply(v);
    REQUIRE(transform.size() == direct.size());
    for (std::size_t k = 0; k < transform.size(); ++k)
        CHECK(transform[k] == direct[k]); // bitwise: same path the solver uses
    CHECK(l1_norm(transform) == l1_norm(direct));

    // at the warm start (v = data, g = L v, zero multipliers) the solver
    // objective reduces to exactly the regularization term
    AdmmState state;
    state.v = v;
    state.g = direct;
    state.sigma.assign(9, 0.0);
    state.delta.assign(10, 0.0);
    AdmmParams params;
    params.mu = 0.005;
    CHECK(objective_value(state, v, pa, params) == l1_norm(transform));
}

TEST_SUITE_END();
