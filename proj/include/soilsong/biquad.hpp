#pragma once

namespace soilsong::dsp {

struct FilterSpec {
    double cutoff_hz = 4000.0;
    double q = 0.5;
};

/// Normalized (a0 = 1) coefficients of a second-order resonant low-pass,
/// audio-cookbook form.
struct BiquadCoeffs {
    double b0 = 1.0, b1 = 0.0, b2 = 0.0;
    double a1 = 0.0, a2 = 0.0;
};

/// Transposed direct form II memory; one instance per signal path.
struct BiquadState {
    double z1 = 0.0, z2 = 0.0;
};

/// Throws std::invalid_argument if cutoff is not in (0, sample_rate/2) or
/// q <= 0.
BiquadCoeffs lowpass_coeffs(const FilterSpec& spec, double sample_rate);

double biquad_tick(const BiquadCoeffs& c, BiquadState& s, double x);

/// Magnitude of the filter's transfer function at freq_hz.
double biquad_magnitude(const BiquadCoeffs& c, double freq_hz, double sample_rate);

} // namespace soilsong::dsp
