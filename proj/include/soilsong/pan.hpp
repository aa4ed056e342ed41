#pragma once

#include <utility>

namespace soilsong::dsp {

/// Constant-power pan dial: -45 deg = full left, 0 = center, +45 = full right.
struct PanPosition {
    double angle_deg = 0.0;
};

struct StereoGains {
    double left = 0.0;
    double right = 0.0;
};

/// Gains satisfy left^2 + right^2 == 1 for any position in [-45, +45].
StereoGains pan_gains(const PanPosition& position);

std::pair<double, double> pan(double x, const PanPosition& position);

} // namespace soilsong::dsp
