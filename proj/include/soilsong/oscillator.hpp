#pragma once

#include "soilsong/wavetable.hpp"

namespace soilsong::dsp {

/// Phase runs in table-index units, [0, table length).
struct OscillatorState {
    double phase = 0.0;
    double phase_increment = 0.0;
};

/// Table indices to advance per output sample for a tone at freq_hz.
double phase_increment_for(double freq_hz, int table_length, double sample_rate);

/// Reads both tables at the current phase, crossfades with weight k
/// (0 = pure A, 1 = pure B) and advances the phase. Tables must have equal
/// lengths; throws std::invalid_argument otherwise.
double osc_tick(OscillatorState& state, const Wavetable& table_a,
                const Wavetable& table_b, double k);

} // namespace soilsong::dsp
