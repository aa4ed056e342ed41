#include "soilsong/pan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace soilsong::dsp {

StereoGains pan_gains(const PanPosition& position) {
    const double angle = std::clamp(position.angle_deg, -45.0, 45.0);
    const double theta = (angle + 45.0) / 90.0 * std::numbers::pi / 2.0;
    return {std::cos(theta), std::sin(theta)};
}

std::pair<double, double> pan(double x, const PanPosition& position) {
    const StereoGains g = pan_gains(position);
    return {x * g.left, x * g.right};
}

} // namespace soilsong::dsp
