#include "soilsong/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "soilsong/biquad.hpp"
#include "soilsong/envelope.hpp"
#include "soilsong/oscillator.hpp"
#include "soilsong/pan.hpp"
#include "soilsong/wavetable.hpp"

namespace soilsong::engine {

namespace {

constexpr std::int64_t kHeld = std::numeric_limits<std::int64_t>::max();

struct Voice {
    dsp::OscillatorState osc;
    dsp::BiquadState filter;
    dsp::StereoGains pan_g;
};

struct Note {
    mapping::ChordSpec chord;
    double k = 0.0;                // smoothed crossfade weight, updated per block
    std::int64_t gate_on = 0;      // absolute frames, block aligned
    std::int64_t gate_off = kHeld;
    std::array<Voice, 3> voices;
};

/// Shared block math for all render paths; offline and streaming renders go
/// through the exact same per-block operations.
class BlockRenderer {
public:
    explicit BlockRenderer(const SonifierConfig& cfg)
        : cfg_(cfg),
          sine_(dsp::gen_sine_table(cfg.table_len)),
          saw_(cfg.naive_saw ? dsp::gen_naive_ramp_table(cfg.table_len)
                             : dsp::gen_saw_table(cfg.table_len, cfg.n_partials)),
          coeffs_(dsp::lowpass_coeffs(cfg.filter, cfg.sample_rate)) {}

    const SonifierConfig& cfg() const { return cfg_; }

    std::int64_t block_of_ms(std::int64_t t_ms) const {
        const double frames = static_cast<double>(t_ms) / 1000.0 * cfg_.sample_rate;
        return std::llround(frames / cfg_.block_frames);
    }

    std::int64_t attack_frames() const {
        const double blocks = cfg_.envelope.attack_s * cfg_.sample_rate / cfg_.block_frames;
        return std::llround(blocks) * cfg_.block_frames;
    }

    std::int64_t decay_frames() const {
        const double frames = cfg_.envelope.decay_s * cfg_.sample_rate;
        const auto blocks = static_cast<std::int64_t>(
            std::ceil(frames / cfg_.block_frames));
        return blocks * cfg_.block_frames;
    }

    std::int64_t note_end(const Note& note) const {
        return note.gate_off == kHeld ? kHeld : note.gate_off + decay_frames();
    }

    Note make_note(std::int64_t gate_on, double m) const {
        Note n;
        n.chord = mapping::chord_for_moisture(m, cfg_.pitch_high_midi,
                                              cfg_.pitch_range_semitones,
                                              cfg_.quantize_semitones);
        n.k = mapping::timbre_for_moisture(m);
        n.gate_on = gate_on;
        const double freqs[3] = {n.chord.root_hz, n.chord.third_hz, n.chord.fifth_hz};
        const dsp::PanPosition pans[3] = {cfg_.pan_root, cfg_.pan_third, cfg_.pan_fifth};
        for (int v = 0; v < 3; ++v) {
            n.voices[v].osc.phase = 0.0;
            n.voices[v].osc.phase_increment =
                dsp::phase_increment_for(freqs[v], cfg_.table_len, cfg_.sample_rate);
            n.voices[v].pan_g = dsp::pan_gains(pans[v]);
        }
        return n;
    }

    /// Accumulates one block of the note into left/right (master gain not
    /// applied here). k ramps linearly from the note's current value to
    /// k_target across the block.
    void add_note_block(Note& note, std::int64_t start, int n_frames,
                        double k_target, double* left, double* right) const {
        const double fs = cfg_.sample_rate;
        const double gate_off_s =
            note.gate_off == kHeld
                ? std::numeric_limits<double>::infinity()
                : static_cast<double>(note.gate_off - note.gate_on) / fs;
        const double k0 = note.k;
        const double dk = k_target - k0;
        for (int i = 0; i < n_frames; ++i) {
            const std::int64_t f = start + i;
            if (f < note.gate_on) continue;
            const double t = static_cast<double>(f - note.gate_on) / fs;
            const double env = dsp::gated_gain(cfg_.envelope, t, gate_off_s);
            const double k = k0 + dk * (i + 1) / n_frames;
            for (Voice& v : note.voices) {
                const double s = dsp::osc_tick(v.osc, sine_, saw_, k);
                const double shaped = dsp::biquad_tick(coeffs_, v.filter, s * env);
                left[i] += shaped * v.pan_g.left;
                right[i] += shaped * v.pan_g.right;
            }
        }
        note.k = k_target;
    }

    void apply_master(double* left, double* right, int n_frames) const {
        for (int i = 0; i < n_frames; ++i) {
            left[i] *= cfg_.master_gain;
            right[i] *= cfg_.master_gain;
        }
    }

private:
    SonifierConfig cfg_;
    dsp::Wavetable sine_;
    dsp::Wavetable saw_;
    dsp::BiquadCoeffs coeffs_;
};

double moisture_of(int raw, const mapping::CalibrationProfile& cal, long& clamped) {
    const auto r = mapping::normalize_raw(raw, cal);
    if (r.clamped) ++clamped;
    return r.m;
}

} // namespace

std::vector<double> StereoBuffer::mono() const {
    std::vector<double> out(frames());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = 0.5 * (left[i] + right[i]);
    return out;
}

StereoBuffer render_chord_impulse(double m, const SonifierConfig& config,
                                  double duration_s) {
    validate(config);
    if (duration_s < config.envelope.impulse_length_s())
        throw std::invalid_argument("duration_s must cover attack + decay");

    BlockRenderer br(config);
    Note note = br.make_note(0, m);
    note.gate_off = br.attack_frames();
    const double k = note.k;

    const auto frames = static_cast<std::int64_t>(
        std::llround(duration_s * config.sample_rate));
    const int block = config.block_frames;
    const std::int64_t blocks = (frames + block - 1) / block;

    StereoBuffer out;
    out.sample_rate = config.sample_rate;
    out.left.assign(blocks * block, 0.0);
    out.right.assign(blocks * block, 0.0);
    const std::int64_t end = br.note_end(note);
    for (std::int64_t b = 0; b < blocks; ++b) {
        const std::int64_t start = b * block;
        if (start < end)
            br.add_note_block(note, start, block, k, &out.left[start], &out.right[start]);
        br.apply_master(&out.left[start], &out.right[start], block);
    }
    out.left.resize(frames);
    out.right.resize(frames);
    return out;
}

StereoBuffer render_historical(const std::vector<sensors::SensorSample>& samples,
                               const mapping::CalibrationProfile& cal,
                               const SonifierConfig& config,
                               RenderDiagnostics* diag) {
    validate(config);
    if (samples.empty())
        throw std::invalid_argument("historical render needs at least one sample");

    BlockRenderer br(config);
    const int block = config.block_frames;
    const std::int64_t gate_len = br.attack_frames();
    const std::int64_t note_len = gate_len + br.decay_frames();

    long clamped = 0;
    struct Sched {
        std::int64_t onset = 0;
        double m = 0.0;
    };
    std::vector<Sched> sched(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double onset_frames =
            static_cast<double>(i) * config.sample_rate / config.history_rate_hz;
        sched[i].onset = std::llround(onset_frames / block) * block;
        sched[i].m = moisture_of(samples[i].raw, cal, clamped);
    }

    const std::int64_t total = sched.back().onset + note_len;
    StereoBuffer out;
    out.sample_rate = config.sample_rate;
    out.left.assign(total, 0.0);
    out.right.assign(total, 0.0);

    std::deque<Note> active;
    std::size_t next = 0;
    for (std::int64_t start = 0; start < total; start += block) {
        while (next < sched.size() && sched[next].onset <= start) {
            Note n = br.make_note(sched[next].onset, sched[next].m);
            n.gate_off = n.gate_on + gate_len;
            active.push_back(std::move(n));
            ++next;
        }
        while (!active.empty() && br.note_end(active.front()) <= start)
            active.pop_front();
        for (Note& n : active)
            br.add_note_block(n, start, block, n.k, &out.left[start], &out.right[start]);
        br.apply_master(&out.left[start], &out.right[start], block);
    }
    if (diag) diag->clamped_readings += clamped;
    return out;
}

// ---------------------------------------------------------------------------
// LiveSession

struct LiveSession::Impl {
    static constexpr std::size_t kQueueBound = 65536;

    mapping::CalibrationProfile cal;
    BlockRenderer br;

    mutable std::mutex mu;
    std::deque<sensors::InteractionEvent> queue;
    bool producer_done = false;
    bool push_pressed = false;
    std::int64_t last_push_ms = 0;

    // Consumer state, only touched from render_block.
    std::int64_t next_block = 0;
    std::int64_t watermark_block = 0; // render at least until the last event
    double current_m = 0.0;           // calibrated dry until the first sensor event
    std::vector<Note> notes;
    long clamped = 0;
    std::int64_t frames_done = 0;
    bool done = false;

    Impl(const mapping::CalibrationProfile& c, const SonifierConfig& cfg)
        : cal(c), br(cfg) {}
};

LiveSession::LiveSession(const mapping::CalibrationProfile& cal,
                         const SonifierConfig& config)
    : impl_(std::make_unique<Impl>(cal, config)) {
    validate(config);
    if (!cal.valid())
        throw std::invalid_argument("calibration profile requires 0 <= raw_min < raw_max <= 1023");
}

LiveSession::~LiveSession() = default;

void LiveSession::push_event(const sensors::InteractionEvent& event) {
    std::lock_guard lock(impl_->mu);
    if (impl_->producer_done)
        throw std::logic_error("push_event after finish()");
    if (impl_->queue.size() >= Impl::kQueueBound)
        throw std::runtime_error("live event queue overflow");
    if (event.t_ms < impl_->last_push_ms)
        throw std::invalid_argument("events must be pushed in timestamp order");
    using Kind = sensors::InteractionEvent::Kind;
    if (event.kind == Kind::Press) {
        if (impl_->push_pressed) throw std::invalid_argument("'press' while already pressed");
        impl_->push_pressed = true;
    } else if (event.kind == Kind::Release) {
        if (!impl_->push_pressed)
            throw std::invalid_argument("'release' without a preceding press");
        impl_->push_pressed = false;
    } else if (event.raw < 0 || event.raw > sensors::kRawMax) {
        throw std::invalid_argument("sensor raw value out of range");
    }
    impl_->last_push_ms = event.t_ms;
    impl_->queue.push_back(event);
    impl_->watermark_block =
        std::max(impl_->watermark_block, impl_->br.block_of_ms(event.t_ms));
}

void LiveSession::finish() {
    std::lock_guard lock(impl_->mu);
    if (impl_->producer_done) return;
    if (impl_->push_pressed) {
        // A press still held at the end of the script releases at the final
        // event's timestamp.
        sensors::InteractionEvent rel;
        rel.t_ms = impl_->last_push_ms;
        rel.kind = sensors::InteractionEvent::Kind::Release;
        impl_->queue.push_back(rel);
        impl_->push_pressed = false;
    }
    impl_->producer_done = true;
}

bool LiveSession::render_block(std::vector<double>& left, std::vector<double>& right) {
    std::lock_guard lock(impl_->mu);
    Impl& s = *impl_;
    if (s.done) return false;

    const int block = s.br.cfg().block_frames;
    const std::int64_t start = s.next_block * block;

    // Events due at or before this boundary take effect now; late arrivals
    // clamp forward rather than rewriting rendered audio.
    using Kind = sensors::InteractionEvent::Kind;
    while (!s.queue.empty() && s.br.block_of_ms(s.queue.front().t_ms) <= s.next_block) {
        const auto ev = s.queue.front();
        s.queue.pop_front();
        switch (ev.kind) {
            case Kind::Press: {
                Note n = s.br.make_note(start, s.current_m);
                s.notes.push_back(std::move(n));
                break;
            }
            case Kind::Release:
                for (Note& n : s.notes)
                    if (n.gate_off == kHeld) n.gate_off = start;
                break;
            case Kind::Sensor:
                s.current_m = moisture_of(ev.raw, s.cal, s.clamped);
                break;
        }
    }

    const bool notes_alive = std::any_of(s.notes.begin(), s.notes.end(), [&](const Note& n) {
        return s.br.note_end(n) > start;
    });
    if (s.producer_done && s.queue.empty() && !notes_alive &&
        s.next_block >= s.watermark_block) {
        s.done = true;
        return false;
    }

    left.assign(block, 0.0);
    right.assign(block, 0.0);
    const double k_target = mapping::timbre_for_moisture(s.current_m);
    std::erase_if(s.notes, [&](const Note& n) { return s.br.note_end(n) <= start; });
    for (Note& n : s.notes)
        s.br.add_note_block(n, start, block, k_target, left.data(), right.data());
    s.br.apply_master(left.data(), right.data(), block);

    ++s.next_block;
    s.frames_done += block;
    return true;
}

std::int64_t LiveSession::frames_rendered() const {
    std::lock_guard lock(impl_->mu);
    return impl_->frames_done;
}

long LiveSession::clamped_readings() const {
    std::lock_guard lock(impl_->mu);
    return impl_->clamped;
}

StereoBuffer render_live(const std::vector<sensors::InteractionEvent>& events,
                         const mapping::CalibrationProfile& cal,
                         const SonifierConfig& config,
                         RenderDiagnostics* diag) {
    validate(config);
    sensors::validate_events(events);

    LiveSession session(cal, config);
    for (const auto& ev : events) session.push_event(ev);
    session.finish();

    StereoBuffer out;
    out.sample_rate = config.sample_rate;
    std::vector<double> left, right;
    while (session.render_block(left, right)) {
        out.left.insert(out.left.end(), left.begin(), left.end());
        out.right.insert(out.right.end(), right.begin(), right.end());
    }
    if (diag) diag->clamped_readings += session.clamped_readings();
    return out;
}

// ---------------------------------------------------------------------------

SampleSource constant_source(int raw) {
    if (raw < 0 || raw > sensors::kRawMax)
        throw std::invalid_argument("raw value out of range 0..1023");
    return [raw](std::int64_t) { return raw; };
}

SampleSource profile_source(sensors::SensorProfile profile) {
    if (profile.breakpoints.empty())
        throw std::invalid_argument("profile has no breakpoints");
    return [p = std::move(profile)](std::int64_t t_ms) {
        return sensors::profile_value_at(p, t_ms);
    };
}

long run_datalog(const SampleSource& source, std::ostream& sink, double rate_hz,
                 std::int64_t duration_ms) {
    if (!(rate_hz > 0.0) || rate_hz > 1000.0)
        throw std::invalid_argument("rate_hz must be in (0, 1000]");
    long count = 0;
    for (std::int64_t i = 0;; ++i) {
        const std::int64_t t = std::llround(i * 1000.0 / rate_hz);
        if (t >= duration_ms) break;
        const int raw = source(t);
        if (raw < 0 || raw > sensors::kRawMax)
            throw std::invalid_argument("sample source produced raw value out of range");
        sink << t << ',' << raw << '\n';
        sink.flush();
        if (!sink)
            throw std::runtime_error("datalog write failed after " +
                                     std::to_string(count) + " samples");
        ++count;
    }
    return count;
}

QuantizedPcm quantize_pcm(const StereoBuffer& buffer, int bit_depth) {
    if (bit_depth != 16)
        throw std::invalid_argument("only 16-bit output is supported");
    const double scale = 32767.0;
    QuantizedPcm out;
    out.frames.reserve(buffer.frames() * 2);
    auto convert = [&](double x) {
        if (x > 1.0 || x < -1.0) {
            ++out.clipped;
            x = std::clamp(x, -1.0, 1.0);
        }
        return static_cast<std::int16_t>(std::llround(x * scale));
    };
    for (std::size_t i = 0; i < buffer.frames(); ++i) {
        out.frames.push_back(convert(buffer.left[i]));
        out.frames.push_back(convert(buffer.right[i]));
    }
    return out;
}

} // namespace soilsong::engine
