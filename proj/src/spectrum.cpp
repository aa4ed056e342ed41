#include "soilsong/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace soilsong::dsp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSilenceDb = -200.0;

bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

size_t largest_pow2_at_most(size_t n) {
    size_t p = 1;
    while (p * 2 <= n) p *= 2;
    return p;
}

double hann(size_t i, size_t n) {
    return 0.5 * (1.0 - std::cos(kTwoPi * i / n));
}

double to_db(double mag, double ref) {
    if (!(mag > 0.0) || !(ref > 0.0)) return kSilenceDb;
    return 20.0 * std::log10(mag / ref);
}

// Parabolic vertex through (k-1, k, k+1) in log magnitude; returns the
// fractional bin offset in [-0.5, 0.5].
double parabolic_offset(double m_prev, double m_peak, double m_next) {
    const double eps = 1e-30;
    const double a = std::log(std::max(m_prev, eps));
    const double b = std::log(std::max(m_peak, eps));
    const double c = std::log(std::max(m_next, eps));
    const double denom = a - 2.0 * b + c;
    if (denom == 0.0) return 0.0;
    return std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
}

std::vector<SpectralPeak> local_peaks(const std::vector<double>& mag,
                                      double bin_hz, double ref) {
    std::vector<SpectralPeak> peaks;
    const size_t n = mag.size();
    for (size_t k = 2; k + 2 < n; ++k) {
        if (mag[k] > mag[k - 1] && mag[k] >= mag[k + 1] &&
            mag[k] > mag[k - 2] && mag[k] > mag[k + 2]) {
            const double off = parabolic_offset(mag[k - 1], mag[k], mag[k + 1]);
            peaks.push_back({(k + off) * bin_hz, to_db(mag[k], ref)});
        }
    }
    return peaks;
}

} // namespace

void fft(std::vector<std::complex<double>>& buf) {
    const size_t n = buf.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft size must be a power of two");

    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(buf[i], buf[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = -kTwoPi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = buf[i + j];
                const std::complex<double> v = buf[i + j + len / 2] * w;
                buf[i + j] = u + v;
                buf[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

std::vector<double> magnitude_spectrum(std::span<const double> x, int window) {
    if (window < 4 || !is_pow2(static_cast<size_t>(window)))
        throw std::invalid_argument("window must be a power of two >= 4");
    if (x.size() < static_cast<size_t>(window))
        throw std::invalid_argument("buffer shorter than analysis window");

    std::vector<std::complex<double>> buf(window);
    for (int i = 0; i < window; ++i)
        buf[i] = x[i] * hann(i, window);
    fft(buf);

    std::vector<double> mag(window / 2 + 1);
    for (size_t k = 0; k < mag.size(); ++k)
        mag[k] = std::abs(buf[k]);
    return mag;
}

std::vector<SpectralPeak> dominant_peaks(std::span<const double> x,
                                         double sample_rate,
                                         double min_level_db) {
    const size_t window = std::min(largest_pow2_at_most(x.size()), size_t{65536});
    const auto mag = magnitude_spectrum(x, static_cast<int>(window));
    const double ref = *std::max_element(mag.begin(), mag.end());
    const double bin_hz = sample_rate / static_cast<double>(window);

    auto peaks = local_peaks(mag, bin_hz, ref);
    std::erase_if(peaks, [&](const SpectralPeak& p) { return p.level_db < min_level_db; });
    return peaks;
}

double dominant_frequency(std::span<const double> x, double sample_rate) {
    const size_t window = std::min(largest_pow2_at_most(x.size()), size_t{65536});
    const auto mag = magnitude_spectrum(x, static_cast<int>(window));
    const double bin_hz = sample_rate / static_cast<double>(window);

    size_t k = std::max_element(mag.begin(), mag.end()) - mag.begin();
    if (k == 0 || k + 1 >= mag.size()) return k * bin_hz;
    const double off = parabolic_offset(mag[k - 1], mag[k], mag[k + 1]);
    return (k + off) * bin_hz;
}

double spectral_centroid(std::span<const double> x, double sample_rate) {
    const size_t window = std::min(largest_pow2_at_most(x.size()), size_t{65536});
    const auto mag = magnitude_spectrum(x, static_cast<int>(window));
    const double bin_hz = sample_rate / static_cast<double>(window);

    double num = 0.0, den = 0.0;
    for (size_t k = 1; k < mag.size(); ++k) {
        num += k * bin_hz * mag[k];
        den += mag[k];
    }
    return den > 0.0 ? num / den : 0.0;
}

double tone_level_db(std::span<const double> x, double sample_rate, double freq_hz) {
    const size_t n = x.size();
    if (n < 4) throw std::invalid_argument("buffer too short");
    double re = 0.0, im = 0.0, wsum = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double w = hann(i, n);
        const double ph = kTwoPi * freq_hz * static_cast<double>(i) / sample_rate;
        re += x[i] * w * std::cos(ph);
        im -= x[i] * w * std::sin(ph);
        wsum += w;
    }
    // A full-scale sine projects to wsum/2.
    const double mag = 2.0 * std::hypot(re, im) / wsum;
    return to_db(mag, 1.0);
}

BandlimitReport verify_bandlimit(std::span<const double> pcm, double f0,
                                 int n_partials, double sample_rate,
                                 double threshold_db) {
    if (pcm.size() < static_cast<size_t>(sample_rate))
        throw std::invalid_argument("need at least one second of audio");
    if (n_partials < 1) throw std::invalid_argument("n_partials must be >= 1");
    if (!(f0 > 0.0) || f0 * n_partials >= sample_rate / 2.0)
        throw std::invalid_argument("f0 * n_partials must stay below Nyquist");

    const size_t window = std::min(largest_pow2_at_most(pcm.size()), size_t{65536});
    const size_t hop = window / 2;
    const double bin_hz = sample_rate / static_cast<double>(window);

    BandlimitReport report;
    report.cutoff_hz = f0 * (n_partials + 0.5);
    report.bin_width_hz = bin_hz;
    report.threshold_db = threshold_db;

    // Window offsets at half-overlap hops, with a final window flush against
    // the end so no tail goes unanalyzed.
    std::vector<size_t> starts;
    for (size_t start = 0; start + window <= pcm.size(); start += hop)
        starts.push_back(start);
    if (starts.back() + window < pcm.size())
        starts.push_back(pcm.size() - window);

    // Pass 1: global reference = strongest bin in any window.
    double ref = 0.0;
    for (size_t start : starts) {
        const auto mag = magnitude_spectrum(pcm.subspan(start), static_cast<int>(window));
        ref = std::max(ref, *std::max_element(mag.begin(), mag.end()));
    }
    if (ref <= 0.0) { // all-silent buffer: nothing above the cutoff either
        report.pass = true;
        return report;
    }

    // Pass 2: spurious content and the highest surviving partial.
    const double floor_mag = ref * std::pow(10.0, threshold_db / 20.0);
    const size_t cutoff_bin = static_cast<size_t>(report.cutoff_hz / bin_hz);
    for (size_t start : starts) {
        const auto mag = magnitude_spectrum(pcm.subspan(start), static_cast<int>(window));
        for (size_t k = cutoff_bin + 1; k < mag.size(); ++k) {
            if (mag[k] > floor_mag) ++report.spurious_bins;
            if (mag[k] > 0.0)
                report.spurious_db = std::max(report.spurious_db, to_db(mag[k], ref));
        }
        for (const auto& p : local_peaks(mag, bin_hz, ref)) {
            if (p.level_db >= threshold_db)
                report.highest_partial_hz = std::max(report.highest_partial_hz, p.freq_hz);
        }
    }

    report.pass = report.spurious_bins == 0;
    return report;
}

} // namespace soilsong::dsp
