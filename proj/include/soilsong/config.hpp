#pragma once

#include <string>

#include "soilsong/biquad.hpp"
#include "soilsong/envelope.hpp"
#include "soilsong/pan.hpp"

namespace soilsong::engine {

/// Every constant the synthesis pipeline needs. Defaults reproduce the
/// reference device: 16-bit stereo at 48 kHz, 512-sample tables, 17 saw
/// partials, one-octave inverted pitch map topping out at G4.
struct SonifierConfig {
    double sample_rate = 48000.0;
    int bit_depth = 16;
    int channels = 2;
    int table_len = 512;
    int n_partials = 17;

    double pitch_high_midi = 67.0;
    double pitch_range_semitones = 12.0;
    bool quantize_semitones = false;

    dsp::EnvelopeSpec envelope;
    dsp::FilterSpec filter;
    dsp::PanPosition pan_root{0.0};
    dsp::PanPosition pan_third{-45.0};
    dsp::PanPosition pan_fifth{45.0};

    double history_rate_hz = 1.0;
    double log_rate_hz = 1.0;
    double master_gain = 0.3;

    /// Event timing and timbre updates quantize to this many frames.
    int block_frames = 256;

    /// Debug: swap the bandlimited saw for a plain ramp table. Aliases on
    /// purpose; exists so `analyze` has a failing fixture.
    bool naive_saw = false;
};

/// Fundamental of the highest note the pitch map can produce (the fifth at
/// m = 0); its partials must stay under Nyquist.
double highest_chord_freq(const SonifierConfig& config);

/// Throws std::invalid_argument describing the first violated constraint.
void validate(const SonifierConfig& config);

/// Applies `key = value` overrides to a config, then validates. Unknown
/// keys are rejected with their line number.
SonifierConfig apply_config_overrides(SonifierConfig config, const std::string& text);

/// Reads an override file and applies it to the defaults.
SonifierConfig load_config_file(const std::string& path);

} // namespace soilsong::engine
