#include "soilsong/wavetable.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace soilsong::dsp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void normalize_peak(std::vector<double>& samples) {
    double peak = 0.0;
    for (double s : samples) peak = std::max(peak, std::abs(s));
    if (peak <= 0.0) return;
    for (double& s : samples) s /= peak;
}

} // namespace

std::string to_string(WaveShape shape) {
    switch (shape) {
        case WaveShape::Sine: return "sine";
        case WaveShape::AdditiveSaw: return "additive_saw";
        case WaveShape::NaiveRamp: return "naive_ramp";
    }
    return "unknown";
}

Wavetable gen_sine_table(int length) {
    if (length < 4) throw std::invalid_argument("table length must be >= 4");
    Wavetable t;
    t.samples.resize(length);
    for (int i = 0; i < length; ++i)
        t.samples[i] = std::sin(kTwoPi * i / length);
    t.shape = WaveShape::Sine;
    t.partials = 1;
    return t;
}

std::vector<double> saw_partial_gains(int n_partials) {
    if (n_partials < 1) throw std::invalid_argument("n_partials must be >= 1");
    // Harmonic n carries 1/n of the fundamental's weight; the whole stack is
    // scaled so even the fundamental fits in a 1/N slice of full scale.
    std::vector<double> gains(n_partials);
    for (int n = 1; n <= n_partials; ++n)
        gains[n - 1] = 1.0 / (n_partials * n);
    return gains;
}

Wavetable gen_saw_table(int length, int n_partials) {
    if (length < 4) throw std::invalid_argument("table length must be >= 4");
    if (n_partials < 1) throw std::invalid_argument("n_partials must be >= 1");

    const std::vector<double> gains = saw_partial_gains(n_partials);
    Wavetable t;
    t.samples.assign(length, 0.0);
    for (int n = 1; n <= n_partials; ++n) {
        // (-1)^n * (-1) = (-1)^(n+1): odd partials add, even subtract.
        const double sign = (n % 2 == 1) ? 1.0 : -1.0;
        const double amp = sign * gains[n - 1];
        for (int i = 0; i < length; ++i)
            t.samples[i] += amp * std::sin(kTwoPi * n * i / length);
    }
    normalize_peak(t.samples);
    t.shape = WaveShape::AdditiveSaw;
    t.partials = n_partials;
    return t;
}

Wavetable gen_naive_ramp_table(int length) {
    if (length < 4) throw std::invalid_argument("table length must be >= 4");
    Wavetable t;
    t.samples.resize(length);
    for (int i = 0; i < length; ++i)
        t.samples[i] = 1.0 - 2.0 * i / length;
    t.shape = WaveShape::NaiveRamp;
    t.partials = length / 2;
    return t;
}

int max_safe_partials(double f_max_hz, double sample_rate) {
    const double nyquist = sample_rate / 2.0;
    if (!(f_max_hz > 0.0) || f_max_hz >= nyquist)
        throw std::invalid_argument("f_max_hz must be in (0, sample_rate/2)");
    int n = static_cast<int>(nyquist / f_max_hz);
    while (n > 1 && n * f_max_hz >= nyquist) --n;
    return n;
}

double table_lookup(const Wavetable& table, double phase) {
    const int len = table.length();
    if (!(phase >= 0.0) || phase >= len)
        throw std::invalid_argument("phase out of range [0, table length)");
    const int i0 = static_cast<int>(phase);
    const int i1 = (i0 + 1) % len;
    const double frac = phase - i0;
    return table.samples[i0] + frac * (table.samples[i1] - table.samples[i0]);
}

double interp_tables(double a, double b, double k) {
    if (!(k >= 0.0 && k <= 1.0))
        throw std::invalid_argument("interpolation weight must be in [0, 1]");
    return a * (1.0 - k) + b * k;
}

} // namespace soilsong::dsp
