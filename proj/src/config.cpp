#include "soilsong/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "soilsong/mapping.hpp"
#include "soilsong/wavetable.hpp"
#include "kv_util.hpp"

namespace soilsong::engine {

double highest_chord_freq(const SonifierConfig& config) {
    return mapping::midi_to_freq(config.pitch_high_midi + 7.0);
}

void validate(const SonifierConfig& config) {
    if (config.sample_rate != 44100.0 && config.sample_rate != 48000.0)
        throw std::invalid_argument("sample_rate must be 44100 or 48000");
    if (config.bit_depth != 16)
        throw std::invalid_argument("bit_depth must be 16");
    if (config.channels != 2)
        throw std::invalid_argument("channels must be 2");
    if (config.table_len < 4)
        throw std::invalid_argument("table_len must be >= 4");
    if (config.n_partials < 1)
        throw std::invalid_argument("n_partials must be >= 1");

    const double f_max = highest_chord_freq(config);
    const int safe = dsp::max_safe_partials(f_max, config.sample_rate);
    if (config.n_partials > safe)
        throw std::invalid_argument(
            "n_partials=" + std::to_string(config.n_partials) + " would alias: max safe is " +
            std::to_string(safe) + " at " + std::to_string(f_max) + " Hz");

    if (!(config.envelope.attack_s > 0.0) || !(config.envelope.decay_s > 0.0))
        throw std::invalid_argument("envelope attack and decay must be positive");
    if (!(config.envelope.floor_db < 0.0))
        throw std::invalid_argument("envelope floor_db must be negative");

    dsp::lowpass_coeffs(config.filter, config.sample_rate); // throws on bad cutoff/q

    for (const auto* p : {&config.pan_root, &config.pan_third, &config.pan_fifth})
        if (p->angle_deg < -45.0 || p->angle_deg > 45.0)
            throw std::invalid_argument("pan angles must be within [-45, +45] degrees");

    if (!(config.history_rate_hz > 0.0) || config.history_rate_hz > 100.0)
        throw std::invalid_argument("history_rate_hz must be in (0, 100]");
    if (!(config.log_rate_hz > 0.0) || config.log_rate_hz > 1000.0)
        throw std::invalid_argument("log_rate_hz must be in (0, 1000]");
    if (!(config.master_gain > 0.0) || config.master_gain > 1.0)
        throw std::invalid_argument("master_gain must be in (0, 1]");
    if (config.block_frames < 16 || config.block_frames > 8192)
        throw std::invalid_argument("block_frames must be in [16, 8192]");

    if (!(config.pitch_high_midi - config.pitch_range_semitones >= 0.0) ||
        config.pitch_high_midi + 7.0 > 127.0)
        throw std::invalid_argument("pitch map leaves the MIDI range");
}

SonifierConfig apply_config_overrides(SonifierConfig config, const std::string& text) {
    for (const auto& kv : detail::parse_kv(text)) {
        const std::string ctx = "line " + std::to_string(kv.line) + " (" + kv.key + ")";
        if (kv.key == "sample_rate") config.sample_rate = detail::parse_double(kv.value, ctx);
        else if (kv.key == "bit_depth") config.bit_depth = detail::parse_int(kv.value, ctx);
        else if (kv.key == "n_partials") config.n_partials = detail::parse_int(kv.value, ctx);
        else if (kv.key == "pitch_high_midi") config.pitch_high_midi = detail::parse_double(kv.value, ctx);
        else if (kv.key == "pitch_range_semitones") config.pitch_range_semitones = detail::parse_double(kv.value, ctx);
        else if (kv.key == "quantize_semitones") config.quantize_semitones = detail::parse_bool(kv.value, ctx);
        else if (kv.key == "attack_s") config.envelope.attack_s = detail::parse_double(kv.value, ctx);
        else if (kv.key == "decay_s") config.envelope.decay_s = detail::parse_double(kv.value, ctx);
        else if (kv.key == "floor_db") config.envelope.floor_db = detail::parse_double(kv.value, ctx);
        else if (kv.key == "cutoff_hz") config.filter.cutoff_hz = detail::parse_double(kv.value, ctx);
        else if (kv.key == "q") config.filter.q = detail::parse_double(kv.value, ctx);
        else if (kv.key == "pan_root_deg") config.pan_root.angle_deg = detail::parse_double(kv.value, ctx);
        else if (kv.key == "pan_third_deg") config.pan_third.angle_deg = detail::parse_double(kv.value, ctx);
        else if (kv.key == "pan_fifth_deg") config.pan_fifth.angle_deg = detail::parse_double(kv.value, ctx);
        else if (kv.key == "history_rate_hz") config.history_rate_hz = detail::parse_double(kv.value, ctx);
        else if (kv.key == "log_rate_hz") config.log_rate_hz = detail::parse_double(kv.value, ctx);
        else if (kv.key == "master_gain") config.master_gain = detail::parse_double(kv.value, ctx);
        else if (kv.key == "block_frames") config.block_frames = detail::parse_int(kv.value, ctx);
        else if (kv.key == "naive_saw") config.naive_saw = detail::parse_bool(kv.value, ctx);
        else
            throw std::runtime_error("line " + std::to_string(kv.line) +
                                     ": unknown config key '" + kv.key + "'");
    }
    validate(config);
    return config;
}

SonifierConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return apply_config_overrides(SonifierConfig{}, buf.str());
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

} // namespace soilsong::engine
