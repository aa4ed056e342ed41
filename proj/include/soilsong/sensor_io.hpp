#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace soilsong::sensors {

/// One 10-bit ADC reading. Timestamps are milliseconds from stream start
/// and strictly increase within a stream.
struct SensorSample {
    std::int64_t t_ms = 0;
    int raw = 0;

    friend bool operator==(const SensorSample&, const SensorSample&) = default;
};

constexpr int kRawMax = 1023;

/// Parse failure carrying the 1-based line number it happened on.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Datalog text: one sample per line, either `<raw>` (timestamp inferred at
/// 1 Hz from the sample's position) or `<t_ms>,<raw>`. Blank lines and lines
/// starting with '#' are skipped.
std::vector<SensorSample> parse_log(const std::string& text);

/// Emits `<t_ms>,<raw>` lines, LF-terminated. parse_log(write_log(s)) == s.
std::string write_log(const std::vector<SensorSample>& samples);

/// Desk-scale stand-in for the hygrometer: a piecewise curve of raw counts.
struct SensorProfile {
    enum class Interpolation { Step, Linear };
    std::vector<SensorSample> breakpoints; // sorted by t_ms
    Interpolation interpolation = Interpolation::Linear;
};

/// Profile text: `<t_ms>,<raw>` breakpoints plus an optional
/// `interpolation = step|linear` line.
SensorProfile parse_profile(const std::string& text);

/// Raw count the profile reads at time t_ms (held flat outside the
/// breakpoint span, rounded and clamped to [0, 1023]).
int profile_value_at(const SensorProfile& profile, std::int64_t t_ms);

/// Samples the profile every 1000/rate_hz ms for duration_ms. rate_hz must
/// be in (0, 1000]; the profile must have breakpoints.
std::vector<SensorSample> simulate_profile(const SensorProfile& profile,
                                           double rate_hz,
                                           std::int64_t duration_ms);

/// Timestamped live-mode input: button presses/releases and sensor updates.
struct InteractionEvent {
    enum class Kind { Press, Release, Sensor };
    std::int64_t t_ms = 0;
    Kind kind = Kind::Press;
    int raw = 0; // Sensor events only

    friend bool operator==(const InteractionEvent&, const InteractionEvent&) = default;
};

/// Script lines: `<t_ms> press`, `<t_ms> release`, `<t_ms> sensor <raw>`.
/// Events must be sorted by time and presses/releases must alternate
/// starting with a press.
std::vector<InteractionEvent> parse_event_script(const std::string& text);

/// Same ordering/alternation rules as the script parser, for events built
/// programmatically. Throws std::invalid_argument naming the event index.
void validate_events(const std::vector<InteractionEvent>& events);

} // namespace soilsong::sensors
