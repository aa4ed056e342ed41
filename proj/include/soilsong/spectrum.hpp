#pragma once

#include <complex>
#include <span>
#include <vector>

namespace soilsong::dsp {

/// In-place iterative radix-2 FFT. Size must be a power of two.
void fft(std::vector<std::complex<double>>& buf);

/// Hann-windowed magnitude spectrum of the first `window` samples of x.
/// Returns window/2 + 1 bins; bin k sits at k * sample_rate / window.
std::vector<double> magnitude_spectrum(std::span<const double> x, int window);

struct SpectralPeak {
    double freq_hz = 0.0;
    double level_db = 0.0; // relative to the strongest bin in the same analysis
};

/// Local spectral maxima at or above min_level_db (relative to the strongest
/// bin), sorted by frequency. Peak frequencies are parabolic-interpolated.
std::vector<SpectralPeak> dominant_peaks(std::span<const double> x,
                                         double sample_rate,
                                         double min_level_db);

/// Interpolated frequency of the strongest bin.
double dominant_frequency(std::span<const double> x, double sample_rate);

/// Magnitude-weighted mean frequency of the spectrum (DC excluded).
double spectral_centroid(std::span<const double> x, double sample_rate);

/// Hann-windowed level at an arbitrary frequency, in dB relative to a
/// full-scale sine analyzed the same way. Exact-frequency projection, not
/// bin-quantized.
double tone_level_db(std::span<const double> x, double sample_rate, double freq_hz);

struct BandlimitReport {
    bool pass = false;
    double highest_partial_hz = 0.0; // highest spectral peak above the -60 dB floor
    double spurious_db = -200.0;     // strongest content above cutoff, dB rel global peak
    int spurious_bins = 0;           // bins above cutoff exceeding the threshold
    double cutoff_hz = 0.0;          // f0 * (n_partials + 0.5)
    double bin_width_hz = 0.0;
    double threshold_db = -60.0;
};

/// Scans the buffer in overlapping Hann windows and checks that everything
/// above f0 * (n_partials + 0.5) stays below threshold_db relative to the
/// strongest bin seen anywhere. Needs at least one second of audio and
/// f0 * n_partials below Nyquist; throws std::invalid_argument otherwise.
BandlimitReport verify_bandlimit(std::span<const double> pcm, double f0,
                                 int n_partials, double sample_rate,
                                 double threshold_db = -60.0);

} // namespace soilsong::dsp
