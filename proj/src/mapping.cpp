#include "soilsong/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "kv_util.hpp"

namespace soilsong::mapping {

MoistureReading normalize_raw(int raw, const CalibrationProfile& cal) {
    if (!cal.valid())
        throw std::invalid_argument("calibration profile requires 0 <= raw_min < raw_max <= 1023");
    const double span = cal.raw_max - cal.raw_min;
    const double unclamped = (raw - cal.raw_min) / span;
    MoistureReading r;
    r.m = std::clamp(unclamped, 0.0, 1.0);
    r.clamped = unclamped != r.m;
    if (cal.inverted) r.m = 1.0 - r.m;
    return r;
}

ChordSpec chord_for_moisture(double m, double high_midi, double range_semitones,
                             bool quantize) {
    if (!(m >= 0.0 && m <= 1.0))
        throw std::invalid_argument("moisture must be in [0, 1]");
    double root = high_midi - range_semitones * m;
    if (quantize) root = std::round(root);
    ChordSpec c;
    c.root_midi = root;
    c.third_midi = root + 4.0;
    c.fifth_midi = root + 7.0;
    c.root_hz = midi_to_freq(c.root_midi);
    c.third_hz = midi_to_freq(c.third_midi);
    c.fifth_hz = midi_to_freq(c.fifth_midi);
    return c;
}

double timbre_for_moisture(double m) {
    if (!(m >= 0.0 && m <= 1.0))
        throw std::invalid_argument("moisture must be in [0, 1]");
    return 1.0 - m;
}

double midi_to_freq(double midi) {
    if (!(midi >= 0.0 && midi <= 127.0))
        throw std::invalid_argument("midi note must be in [0, 127]");
    return 440.0 * std::pow(2.0, (midi - 69.0) / 12.0);
}

CalibrationProfile parse_calibration(const std::string& text) {
    CalibrationProfile cal;
    bool have_min = false, have_max = false;
    for (const auto& kv : detail::parse_kv(text)) {
        const std::string ctx = "line " + std::to_string(kv.line);
        if (kv.key == "raw_min") {
            cal.raw_min = detail::parse_int(kv.value, ctx);
            have_min = true;
        } else if (kv.key == "raw_max") {
            cal.raw_max = detail::parse_int(kv.value, ctx);
            have_max = true;
        } else if (kv.key == "inverted") {
            cal.inverted = detail::parse_bool(kv.value, ctx);
        } else if (kv.key == "soil_label") {
            cal.soil_label = kv.value;
        } else {
            throw std::runtime_error(ctx + ": unknown calibration key '" + kv.key + "'");
        }
    }
    if (!have_min || !have_max)
        throw std::runtime_error("calibration file must set raw_min and raw_max");
    if (!cal.valid())
        throw std::runtime_error("calibration requires 0 <= raw_min < raw_max <= 1023");
    return cal;
}

std::string format_calibration(const CalibrationProfile& cal) {
    std::ostringstream out;
    out << "raw_min = " << cal.raw_min << "\n";
    out << "raw_max = " << cal.raw_max << "\n";
    if (cal.inverted) out << "inverted = true\n";
    if (!cal.soil_label.empty()) out << "soil_label = " << cal.soil_label << "\n";
    return out.str();
}

CalibrationProfile load_calibration(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open calibration file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_calibration(buf.str());
    } catch (const std::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

void save_calibration(const CalibrationProfile& cal, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write calibration file: " + path.string());
    out << format_calibration(cal);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

} // namespace soilsong::mapping
