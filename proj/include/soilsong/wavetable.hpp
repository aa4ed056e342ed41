#pragma once

#include <string>
#include <vector>

namespace soilsong::dsp {

enum class WaveShape { Sine, AdditiveSaw, NaiveRamp };

std::string to_string(WaveShape shape);

/// One single-cycle waveform. Samples are normalized to [-1, 1] with the
/// peak at exactly 1.0; the table is read circularly, so samples[size-1]
/// wraps to samples[0].
struct Wavetable {
    std::vector<double> samples;
    WaveShape shape = WaveShape::Sine;
    int partials = 1;

    int length() const { return static_cast<int>(samples.size()); }
};

/// Single-cycle sine: samples[i] = sin(2*pi*i/length). Throws
/// std::invalid_argument for length < 4.
Wavetable gen_sine_table(int length = 512);

/// Bandlimited falling sawtooth built up from n_partials harmonic sine
/// components, then peak-normalized to 1.0. Throws std::invalid_argument
/// for length < 4 or n_partials < 1.
Wavetable gen_saw_table(int length = 512, int n_partials = 17);

/// Plain 512-point line from +1 to -1. Deliberately not bandlimited; kept
/// as an aliasing fixture for the spectrum analyzer.
Wavetable gen_naive_ramp_table(int length = 512);

/// Per-partial peak amplitudes used when accumulating the saw table,
/// before normalization. Each stays within 1/n_partials of full scale so
/// the running sum can never leave [-1, 1].
std::vector<double> saw_partial_gains(int n_partials);

/// Largest N such that N * f_max_hz stays strictly below sample_rate / 2.
/// Throws std::invalid_argument if f_max_hz is not in (0, Nyquist).
int max_safe_partials(double f_max_hz, double sample_rate);

/// Linear interpolation at a fractional table index, wrapping the last
/// sample to the first. phase must lie in [0, length).
double table_lookup(const Wavetable& table, double phase);

/// 2-point crossfade a*(1-k) + b*k for k in [0, 1].
double interp_tables(double a, double b, double k);

} // namespace soilsong::dsp
