#include "soilsong/sensor_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "kv_util.hpp"

namespace soilsong::sensors {

namespace {

long long to_int(std::string_view token, int line, const std::string& what) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(line, "expected an integer " + what + ", got '" +
                                   std::string(token) + "'");
    return value;
}

int to_raw(std::string_view token, int line) {
    const long long raw = to_int(token, line, "raw value");
    if (raw < 0 || raw > kRawMax)
        throw ParseError(line, "raw value out of range 0..1023 (" +
                                   std::to_string(raw) + ")");
    return static_cast<int>(raw);
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

} // namespace

std::vector<SensorSample> parse_log(const std::string& text) {
    std::vector<SensorSample> samples;
    std::istringstream in(text);
    std::string raw_line;
    int line_no = 0;
    while (std::getline(in, raw_line)) {
        ++line_no;
        const std::string_view line = detail::trim(raw_line);
        if (line.empty() || line.front() == '#') continue;

        SensorSample s;
        const auto comma = line.find(',');
        if (comma == std::string_view::npos) {
            // Raw-only form: one reading per second.
            s.t_ms = static_cast<std::int64_t>(samples.size()) * 1000;
            s.raw = to_raw(line, line_no);
        } else {
            if (line.find(',', comma + 1) != std::string_view::npos)
                throw ParseError(line_no, "expected '<t_ms>,<raw>'");
            const std::int64_t t = to_int(detail::trim(line.substr(0, comma)), line_no, "timestamp");
            if (t < 0) throw ParseError(line_no, "timestamp must be non-negative");
            s.t_ms = t;
            s.raw = to_raw(detail::trim(line.substr(comma + 1)), line_no);
        }
        if (!samples.empty() && s.t_ms <= samples.back().t_ms)
            throw ParseError(line_no, "non-increasing timestamp " + std::to_string(s.t_ms));
        samples.push_back(s);
    }
    return samples;
}

std::string write_log(const std::vector<SensorSample>& samples) {
    std::ostringstream out;
    for (const SensorSample& s : samples)
        out << s.t_ms << ',' << s.raw << '\n';
    return out.str();
}

SensorProfile parse_profile(const std::string& text) {
    SensorProfile profile;
    std::istringstream in(text);
    std::string raw_line;
    int line_no = 0;
    while (std::getline(in, raw_line)) {
        ++line_no;
        const std::string_view line = detail::trim(raw_line);
        if (line.empty() || line.front() == '#') continue;

        if (line.find('=') != std::string_view::npos) {
            const auto eq = line.find('=');
            const auto key = detail::trim(line.substr(0, eq));
            const auto value = detail::trim(line.substr(eq + 1));
            if (key != "interpolation")
                throw ParseError(line_no, "unknown profile key '" + std::string(key) + "'");
            if (value == "step")
                profile.interpolation = SensorProfile::Interpolation::Step;
            else if (value == "linear")
                profile.interpolation = SensorProfile::Interpolation::Linear;
            else
                throw ParseError(line_no, "interpolation must be step or linear");
            continue;
        }

        const auto comma = line.find(',');
        if (comma == std::string_view::npos)
            throw ParseError(line_no, "expected '<t_ms>,<raw>' breakpoint");
        SensorSample bp;
        bp.t_ms = to_int(detail::trim(line.substr(0, comma)), line_no, "timestamp");
        if (bp.t_ms < 0) throw ParseError(line_no, "timestamp must be non-negative");
        bp.raw = to_raw(detail::trim(line.substr(comma + 1)), line_no);
        if (!profile.breakpoints.empty() && bp.t_ms <= profile.breakpoints.back().t_ms)
            throw ParseError(line_no, "breakpoints must have increasing timestamps");
        profile.breakpoints.push_back(bp);
    }
    if (profile.breakpoints.empty())
        throw std::invalid_argument("profile has no breakpoints");
    return profile;
}

int profile_value_at(const SensorProfile& profile, std::int64_t t_ms) {
    const auto& bps = profile.breakpoints;
    if (bps.empty()) throw std::invalid_argument("profile has no breakpoints");
    if (t_ms <= bps.front().t_ms) return bps.front().raw;
    if (t_ms >= bps.back().t_ms) return bps.back().raw;

    const auto next = std::upper_bound(
        bps.begin(), bps.end(), t_ms,
        [](std::int64_t t, const SensorSample& s) { return t < s.t_ms; });
    const auto prev = next - 1;
    double value = prev->raw;
    if (profile.interpolation == SensorProfile::Interpolation::Linear) {
        const double frac = static_cast<double>(t_ms - prev->t_ms) /
                            static_cast<double>(next->t_ms - prev->t_ms);
        value = prev->raw + frac * (next->raw - prev->raw);
    }
    const long long rounded = std::llround(value);
    return static_cast<int>(std::clamp(rounded, 0LL, static_cast<long long>(kRawMax)));
}

std::vector<SensorSample> simulate_profile(const SensorProfile& profile,
                                           double rate_hz,
                                           std::int64_t duration_ms) {
    if (!(rate_hz > 0.0) || rate_hz > 1000.0)
        throw std::invalid_argument("rate_hz must be in (0, 1000]");
    if (profile.breakpoints.empty())
        throw std::invalid_argument("profile has no breakpoints");

    std::vector<SensorSample> samples;
    for (std::int64_t i = 0;; ++i) {
        const std::int64_t t = std::llround(i * 1000.0 / rate_hz);
        if (t >= duration_ms) break;
        samples.push_back({t, profile_value_at(profile, t)});
    }
    return samples;
}

std::vector<InteractionEvent> parse_event_script(const std::string& text) {
    std::vector<InteractionEvent> events;
    std::istringstream in(text);
    std::string raw_line;
    int line_no = 0;
    bool pressed = false;
    while (std::getline(in, raw_line)) {
        ++line_no;
        const std::string_view line = detail::trim(raw_line);
        if (line.empty() || line.front() == '#') continue;

        const auto tokens = split_ws(line);
        if (tokens.size() < 2)
            throw ParseError(line_no, "expected '<t_ms> press|release|sensor [raw]'");

        InteractionEvent ev;
        ev.t_ms = to_int(tokens[0], line_no, "timestamp");
        if (ev.t_ms < 0) throw ParseError(line_no, "timestamp must be non-negative");

        const std::string_view kind = tokens[1];
        if (kind == "press") {
            if (tokens.size() != 2) throw ParseError(line_no, "press takes no argument");
            if (pressed) throw ParseError(line_no, "'press' while already pressed");
            ev.kind = InteractionEvent::Kind::Press;
            pressed = true;
        } else if (kind == "release") {
            if (tokens.size() != 2) throw ParseError(line_no, "release takes no argument");
            if (!pressed) throw ParseError(line_no, "'release' without a preceding press");
            ev.kind = InteractionEvent::Kind::Release;
            pressed = false;
        } else if (kind == "sensor") {
            if (tokens.size() != 3)
                throw ParseError(line_no, "expected 'sensor <raw>'");
            ev.kind = InteractionEvent::Kind::Sensor;
            ev.raw = to_raw(tokens[2], line_no);
        } else {
            throw ParseError(line_no, "unknown event kind '" + std::string(kind) + "'");
        }

        if (!events.empty() && ev.t_ms < events.back().t_ms)
            throw ParseError(line_no, "events must be sorted by timestamp");
        events.push_back(ev);
    }
    return events;
}

void validate_events(const std::vector<InteractionEvent>& events) {
    bool pressed = false;
    std::int64_t last_t = 0;
    for (size_t i = 0; i < events.size(); ++i) {
        const InteractionEvent& ev = events[i];
        const std::string at = "event " + std::to_string(i);
        if (ev.t_ms < 0) throw std::invalid_argument(at + ": negative timestamp");
        if (i > 0 && ev.t_ms < last_t)
            throw std::invalid_argument(at + ": events must be sorted by timestamp");
        last_t = ev.t_ms;
        switch (ev.kind) {
            case InteractionEvent::Kind::Press:
                if (pressed) throw std::invalid_argument(at + ": 'press' while already pressed");
                pressed = true;
                break;
            case InteractionEvent::Kind::Release:
                if (!pressed)
                    throw std::invalid_argument(at + ": 'release' without a preceding press");
                pressed = false;
                break;
            case InteractionEvent::Kind::Sensor:
                if (ev.raw < 0 || ev.raw > kRawMax)
                    throw std::invalid_argument(at + ": raw value out of range");
                break;
        }
    }
}

} // namespace soilsong::sensors
