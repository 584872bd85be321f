#pragma once

#include <span>
#include <utility>

#include "l1dg/pa_operator.hpp"

namespace l1dg {

struct SensorConfig {
    double kappa = 0.8;       // ramp parameter, in [0, 1)
    double lambda_max = 4e2;  // fully activated regularization strength
    int order_low = 1;
    int order_high = 3;
    double s1_floor = 1e-10;  // scaled by (1 + max|nodal|) of the element
};

struct SensorReading {
    double s1 = 0.0;
    double s3 = 0.0;
    double ratio = 0.0;
    double lambda = 0.0;
    bool troubled = false;
};

/// Sensor values S_m = max_k |L_m[u](xi_{k+1/2})| for the two orders.
std::pair<double, double> sensor_values(std::span<const double> nodal,
                                        const PAMatrix& pa_low,
                                        const PAMatrix& pa_high);

/// Map the sensor ratio S_high / S_low to a regularization strength.
///
/// lambda ramps linearly from 0 at ratio = kappa to lambda_max at ratio = 1.
/// When s1 falls below the floor the element carries no detectable jump and
/// is declared smooth (ratio = 0, lambda = 0). data_scale is max|nodal| of
/// the element and only feeds the floor.
SensorReading regularization_strength(double s1, double s3, const SensorConfig& cfg,
                                      double data_scale = 0.0);

} // namespace l1dg
