#include "soilsong/biquad.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace soilsong::dsp {

BiquadCoeffs lowpass_coeffs(const FilterSpec& spec, double sample_rate) {
    if (!(spec.cutoff_hz > 0.0) || spec.cutoff_hz >= sample_rate / 2.0)
        throw std::invalid_argument("filter cutoff must be in (0, sample_rate/2)");
    if (!(spec.q > 0.0))
        throw std::invalid_argument("filter q must be positive");

    const double w0 = 2.0 * std::numbers::pi * spec.cutoff_hz / sample_rate;
    const double cw = std::cos(w0);
    const double alpha = std::sin(w0) / (2.0 * spec.q);
    const double a0 = 1.0 + alpha;

    BiquadCoeffs c;
    c.b0 = (1.0 - cw) / 2.0 / a0;
    c.b1 = (1.0 - cw) / a0;
    c.b2 = c.b0;
    c.a1 = -2.0 * cw / a0;
    c.a2 = (1.0 - alpha) / a0;
    return c;
}

double biquad_tick(const BiquadCoeffs& c, BiquadState& s, double x) {
    const double y = c.b0 * x + s.z1;
    s.z1 = c.b1 * x - c.a1 * y + s.z2;
    s.z2 = c.b2 * x - c.a2 * y;
    return y;
}

double biquad_magnitude(const BiquadCoeffs& c, double freq_hz, double sample_rate) {
    const double w = 2.0 * std::numbers::pi * freq_hz / sample_rate;
    const std::complex<double> z1 = std::polar(1.0, -w);
    const std::complex<double> z2 = z1 * z1;
    return std::abs((c.b0 + c.b1 * z1 + c.b2 * z2) / (1.0 + c.a1 * z1 + c.a2 * z2));
}

} // namespace soilsong::dsp
