#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <vector>

#include "soilsong/config.hpp"
#include "soilsong/mapping.hpp"
#include "soilsong/sensor_io.hpp"

namespace soilsong::engine {

struct StereoBuffer {
    double sample_rate = 48000.0;
    std::vector<double> left;
    std::vector<double> right;

    std::size_t frames() const { return left.size(); }
    double duration_s() const {
        return sample_rate > 0.0 ? static_cast<double>(frames()) / sample_rate : 0.0;
    }
    /// (L + R) / 2 fold-down for spectral checks.
    std::vector<double> mono() const;
};

struct RenderDiagnostics {
    long clamped_readings = 0; // raw values outside the calibration bounds
};

/// One enveloped three-voice chord: pitches and timbre from m, voices
/// filtered then panned (root center, third left, fifth right), summed with
/// master gain. duration_s must cover at least attack + decay.
StereoBuffer render_chord_impulse(double m, const SonifierConfig& config,
                                  double duration_s);

/// One impulse per logged sample, onsets spaced 1/history_rate_hz apart,
/// earliest sample first. Overlapping tails are summed.
StereoBuffer render_historical(const std::vector<sensors::SensorSample>& samples,
                               const mapping::CalibrationProfile& cal,
                               const SonifierConfig& config,
                               RenderDiagnostics* diag = nullptr);

/// Replays an interaction script: each press latches the chord of the
/// moisture at press time and holds it until release, while the timbre keeps
/// tracking the latest sensor value at block boundaries. Before the first
/// sensor event the stream reads as calibrated dry. A press still held at
/// the end of the script is released at the final event's timestamp.
StereoBuffer render_live(const std::vector<sensors::InteractionEvent>& events,
                         const mapping::CalibrationProfile& cal,
                         const SonifierConfig& config,
                         RenderDiagnostics* diag = nullptr);

using SampleSource = std::function<int(std::int64_t t_ms)>;

SampleSource constant_source(int raw);
SampleSource profile_source(sensors::SensorProfile profile);

/// Polls the source every 1000/rate_hz ms for duration_ms and appends
/// `<t_ms>,<raw>` lines to the sink, flushing per line so a failed write
/// leaves the partial log behind. Returns the sample count.
long run_datalog(const SampleSource& source, std::ostream& sink, double rate_hz,
                 std::int64_t duration_ms);

struct QuantizedPcm {
    std::vector<std::int16_t> frames; // interleaved L,R
    long clipped = 0;
};

/// Symmetric scaling to signed 16-bit (-32767..32767, half away from zero).
/// Out-of-range input clips and is counted.
QuantizedPcm quantize_pcm(const StereoBuffer& buffer, int bit_depth = 16);

/// Block-pull live renderer behind render_live and the interactive CLI.
/// One producer pushes events, one consumer pulls blocks; the consumer
/// never waits on the producer. Events timestamped inside already-rendered
/// blocks take effect at the next block boundary.
class LiveSession {
public:
    LiveSession(const mapping::CalibrationProfile& cal, const SonifierConfig& config);
    ~LiveSession();

    LiveSession(const LiveSession&) = delete;
    LiveSession& operator=(const LiveSession&) = delete;

    /// Producer side. Throws if the queue backs up past its bound.
    void push_event(const sensors::InteractionEvent& event);
    /// Producer is done; after pending notes decay the session finishes.
    void finish();

    /// Renders the next block_frames frames into left/right (overwriting).
    /// Returns false once finished, in which case nothing was rendered.
    bool render_block(std::vector<double>& left, std::vector<double>& right);

    std::int64_t frames_rendered() const;
    long clamped_readings() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace soilsong::engine
