#include "soilsong/envelope.hpp"

#include <algorithm>
#include <cmath>

namespace soilsong::dsp {

double gated_gain(const EnvelopeSpec& spec, double t, double gate_off_s) {
    if (t < 0.0) return 0.0;
    const double off = std::max(gate_off_s, 0.0);
    if (t < off) {
        return std::min(t / spec.attack_s, 1.0);
    }
    const double release_from = std::min(off / spec.attack_s, 1.0);
    const double t_rel = t - off;
    if (t_rel > spec.decay_s) return 0.0;
    return release_from * std::pow(10.0, spec.floor_db / 20.0 * t_rel / spec.decay_s);
}

double envelope_gain(const EnvelopeSpec& spec, double t) {
    return gated_gain(spec, t, spec.attack_s);
}

} // namespace soilsong::dsp
