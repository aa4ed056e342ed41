#pragma once

namespace soilsong::dsp {

/// Pulse shape for one note: linear attack to full gain, then an
/// exponential decay that lands on floor_db at the end of the decay
/// window and is silent afterwards.
struct EnvelopeSpec {
    double attack_s = 0.2;
    double decay_s = 0.8;
    double floor_db = -60.0;

    double impulse_length_s() const { return attack_s + decay_s; }
};

/// Gain at t seconds after note-on for a one-shot impulse (decay starts
/// the moment the attack completes).
double envelope_gain(const EnvelopeSpec& spec, double t);

/// Gated variant: the gain ramps up over the attack, holds at 1 while the
/// gate is open, and decays once the gate closes at gate_off_s. A gate that
/// closes mid-attack decays from the gain it had reached, so the curve
/// stays continuous. envelope_gain(spec, t) == gated_gain(spec, t, attack_s).
double gated_gain(const EnvelopeSpec& spec, double t, double gate_off_s);

} // namespace soilsong::dsp
