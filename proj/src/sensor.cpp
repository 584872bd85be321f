#include "l1dg/sensor.hpp"

#include "l1dg/linalg.hpp"

namespace l1dg {

std::pair<double, double> sensor_values(std::span<const double> nodal,
                                        const PAMatrix& pa_low,
                                        const PAMatrix& pa_high) {
    const auto low = apply_pa(pa_low, nodal);
    const auto high = apply_pa(pa_high, nodal);
    return {max_abs(low), max_abs(high)};
}

SensorReading regularization_strength(double s1, double s3, const SensorConfig& cfg,
                                      double data_scale) {
    SensorReading r;
    r.s1 = s1;
    r.s3 = s3;

    const double floor = cfg.s1_floor * (1.0 + data_scale);
    if (s1 <= floor) {
        // No detectable jump at all; nothing to regularize.
        return r;
    }

    r.ratio = s3 / s1;
    if (r.ratio <= cfg.kappa)
        r.lambda = 0.0;
    else if (r.ratio >= 1.0)
        r.lambda = cfg.lambda_max;
    else
        r.lambda = cfg.lambda_max * (r.ratio - cfg.kappa) / (1.0 - cfg.kappa);
    r.troubled = r.lambda > 0.0;
    return r;
}

} // namespace l1dg
