#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>

#include "l1dg/sensor.hpp"

using namespace l1dg;

TEST_SUITE_BEGIN("sensor");

TEST_CASE("constant data produces zero sensor values") {
    auto elem = build_reference_element(6);
    auto pa1 = build_pa_matrix(elem, 1);
    auto pa3 = build_pa_matrix(elem, 3);
    std::vector<double> flat(7, 3.7);
    auto [s1, s3] = sensor_values(flat, pa1, pa3);
    CHECK(s1 < 1e-12);
    CHECK(s3 < 1e-12);
}

TEST_CASE("centered unit step: both orders recover the jump within 10%") {
    auto elem = build_reference_element(7);
    auto pa1 = build_pa_matrix(elem, 1);
    auto pa3 = build_pa_matrix(elem, 3);
    std::vector<double> step(8);
    for (int k = 0; k <= 7; ++k)
        step[k] = elem.nodes[k] > 0.0 ? 1.0 : 0.0;
    auto [s1, s3] = sensor_values(step, pa1, pa3);
    CHECK(s1 == doctest::Approx(1.0).epsilon(0.1));
    CHECK(s3 == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("reference sensor-value pairs classify as expected (kappa = 0.8)") {
    SensorConfig cfg;
    cfg.kappa = 0.8;

    struct Row {
        double s1, s3;
        bool troubled;
    };
    const Row rows[] = {
        {1.58, 1.99, true}, {1.07, 0.60, false}, {1.07, 1.38, true},
        {2.79, 3.00, true}, {0.38, 0.17, false},
    };
    for (const auto& row : rows) {
        auto r = regularization_strength(row.s1, row.s3, cfg);
        CHECK(r.troubled == row.troubled);
    }

    // ratio beyond 1 saturates, ratio below kappa switches off
    CHECK(regularization_strength(2.79, 3.00, cfg).lambda == cfg.lambda_max);
    CHECK(regularization_strength(1.07, 0.60, cfg).lambda == 0.0);
}

TEST_CASE("linear ramp midvalue") {
    SensorConfig cfg;
    cfg.kappa = 0.8;
    cfg.lambda_max = 400.0;
    auto r = regularization_strength(1.0, 0.9, cfg);
    CHECK(r.lambda == doctest::Approx(200.0).epsilon(1e-12));
    CHECK(r.troubled);
}

TEST_CASE("floor rule absorbs the constant element") {
    SensorConfig cfg;
    auto r = regularization_strength(0.0, 0.0, cfg, 5.0);
    CHECK(r.lambda == 0.0);
    CHECK(r.ratio == 0.0);
    CHECK_FALSE(r.troubled);

    auto tiny = regularization_strength(1e-14, 2e-14, cfg, 1.0);
    CHECK_FALSE(tiny.troubled);
}

TEST_CASE("ramp is continuous, nondecreasing, and pinned at both ends") {
    SensorConfig cfg;
    cfg.kappa = 0.7;
    cfg.lambda_max = 123.0;
    CHECK(regularization_strength(1.0, cfg.kappa, cfg).lambda == 0.0);
    CHECK(regularization_strength(1.0, 1.0, cfg).lambda == cfg.lambda_max);

    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
        const double ratio = 1.5 * i / 1000.0;
        const double lam = regularization_strength(1.0, ratio, cfg).lambda;
        CHECK(lam >= prev);
        prev = lam;
    }
    // continuity at the ramp corners
    const double eps = 1e-9;
    CHECK(regularization_strength(1.0, cfg.kappa + eps, cfg).lambda < 1e-5);
    CHECK(regularization_strength(1.0, 1.0 - eps, cfg).lambda >
          cfg.lambda_max - 1e-5);
}

TEST_CASE("decision is scale invariant") {
    auto elem = build_reference_element(8);
    auto pa1 = build_pa_matrix(elem, 1);
    auto pa3 = build_pa_matrix(elem, 3);
    SensorConfig cfg;

    std::vector<double> base(9);
    for (int k = 0; k <= 8; ++k)
        base[k] = (elem.nodes[k] > 0.2 ? 1.0 : 0.0) + 0.3 * std::sin(3.0 * elem.nodes[k]);
    auto [b1, b3] = sensor_values(base, pa1, pa3);
    const auto ref = regularization_strength(b1, b3, cfg, max_abs(base));

    for (double c : {-1.0, 1e-3, 0.5, 7.0, 1e3}) {
        std::vector<double> scaled(base);
        for (auto& x : scaled)
            x *= c;
        auto [s1, s3] = sensor_values(scaled, pa1, pa3);
        const auto r = regularization_strength(s1, s3, cfg, max_abs(scaled));
        CHECK(r.ratio == doctest::Approx(ref.ratio).epsilon(1e-12));
        CHECK(r.lambda == doctest::Approx(ref.lambda).epsilon(1e-10));
        CHECK(r.troubled == ref.troubled);
    }
}

TEST_CASE("smooth sine stays silent for p >= 4 on elements of width <= 1/4") {
    SensorConfig cfg;
    cfg.kappa = 0.8;
    for (int p = 4; p <= 7; ++p) {
        auto elem = build_reference_element(p);
        auto pa1 = build_pa_matrix(elem, 1);
        auto pa3 = build_pa_matrix(elem, 3);
        const int elements = 8; // width 1/4 on [0, 2]
        for (int i = 0; i < elements; ++i) {
            const double left = 2.0 * i / elements;
            const double jac = 1.0 / elements;
            std::vector<double> data(p + 1);
            for (int k = 0; k <= p; ++k)
                data[k] = std::sin(2.0 * std::numbers::pi *
                                   (left + jac * (elem.nodes[k] + 1.0)));
            auto [s1, s3] = sensor_values(data, pa1, pa3);
            auto r = regularization_strength(s1, s3, cfg, max_abs(data));
            CHECK(r.lambda == 0.0);
        }
    }
}

TEST_SUITE_END();
