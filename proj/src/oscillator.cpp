#include "soilsong/oscillator.hpp"

#include <stdexcept>

namespace soilsong::dsp {

double phase_increment_for(double freq_hz, int table_length, double sample_rate) {
    if (!(freq_hz > 0.0) || !(sample_rate > 0.0))
        throw std::invalid_argument("frequency and sample rate must be positive");
    return freq_hz * table_length / sample_rate;
}

double osc_tick(OscillatorState& state, const Wavetable& table_a,
                const Wavetable& table_b, double k) {
    if (table_a.length() != table_b.length())
        throw std::invalid_argument("wavetables must have matching lengths");
    const double a = table_lookup(table_a, state.phase);
    const double b = table_lookup(table_b, state.phase);
    const double out = interp_tables(a, b, k);
    const int len = table_a.length();
    state.phase += state.phase_increment;
    while (state.phase >= len) state.phase -= len;
    return out;
}

} // namespace soilsong::dsp
