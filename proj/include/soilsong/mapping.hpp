#pragma once

#include <filesystem>
#include <string>

namespace soilsong::mapping {

/// Per-soil raw ADC extremes used to stretch readings over the full [0, 1]
/// moisture range. raw_min is the driest observed count and must stay below
/// raw_max; sensors whose counts fall as moisture rises set `inverted`
/// instead of swapping the bounds.
struct CalibrationProfile {
    int raw_min = 0;
    int raw_max = 1023;
    bool inverted = false;
    std::string soil_label;

    bool valid() const {
        return raw_min >= 0 && raw_min < raw_max && raw_max <= 1023;
    }
};

struct MoistureReading {
    double m = 0.0;      // 0 = calibrated dry, 1 = calibrated wet
    bool clamped = false; // raw fell outside the calibrated bounds
};

/// Affine remap of a raw count into [0, 1], clamped at the calibration
/// bounds. Out-of-range readings never fail (field sensors drift); they
/// clamp and set the flag. Throws std::invalid_argument on a bad profile.
MoistureReading normalize_raw(int raw, const CalibrationProfile& cal);

/// Major triad as fractional MIDI notes plus frequencies.
struct ChordSpec {
    double root_midi = 0.0, third_midi = 0.0, fifth_midi = 0.0;
    double root_hz = 0.0, third_hz = 0.0, fifth_hz = 0.0;
};

/// Inverted one-octave pitch map: m = 0 puts the root at high_midi, m = 1
/// an octave (range_semitones) below. Third and fifth ride 4 and 7
/// semitones over the root. quantize snaps the root to the nearest
/// semitone before the intervals are added.
ChordSpec chord_for_moisture(double m, double high_midi = 67.0,
                             double range_semitones = 12.0,
                             bool quantize = false);

/// Crossfade weight toward the saw table: dry soil (m = 0) sounds buzzy
/// (k = 1), wet soil pure sine (k = 0).
double timbre_for_moisture(double m);

/// 12-TET: 440 * 2^((midi - 69)/12). midi must be in [0, 127].
double midi_to_freq(double midi);

/// `key = value` calibration file, keys raw_min / raw_max / soil_label /
/// inverted. Parse errors and invalid profiles throw std::runtime_error
/// naming the offending line.
CalibrationProfile load_calibration(const std::filesystem::path& path);
CalibrationProfile parse_calibration(const std::string& text);
std::string format_calibration(const CalibrationProfile& cal);
void save_calibration(const CalibrationProfile& cal, const std::filesystem::path& path);

} // namespace soilsong::mapping
