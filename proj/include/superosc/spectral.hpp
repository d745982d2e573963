#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "superosc/signal.hpp"

namespace superosc::spectral {

enum class Window {
    None,
    Taper,  // C-infinity bump-shaped taper over the full record
};

// Physically scaled DFT estimate: amplitudes[k] ~ H(f_k) = dt * sum h_n e^{-i 2 pi f_k t_n},
// with f_k running over the two-sided grid (negative half mapped the usual way).
struct SpectrumEstimate {
    double df = 0.0;
    double nyquist = 0.0;
    Window window = Window::None;
    std::vector<std::complex<double>> amplitudes;
    double total_energy = 0.0;  // time-side sum |h|^2 dt of the (windowed) record

    std::size_t size() const { return amplitudes.size(); }
    double freq_at(std::size_t k) const {
        const std::size_t n = amplitudes.size();
        const double idx = (k <= n / 2) ? static_cast<double>(k)
                                        : static_cast<double>(k) - static_cast<double>(n);
        return idx * df;
    }
    // sum |H|^2 df; equals total_energy to rounding when unwindowed.
    double spectral_energy() const;
};

SpectrumEstimate spectrum(const SampledSignal& sig, Window window = Window::None);

// Fraction of spectral energy beyond |f| > f_max. Requires f_max < nyquist.
double out_of_band_energy(const SpectrumEstimate& est, double f_max);

struct OutOfBandReport {
    double fraction = 0.0;
    // Energy fraction the finite record is expected to leak purely from
    // cutting the tails: |h(T)|^2 T / ((2q-1) E) from a fitted tail power q.
    double truncation_floor = 0.0;
};

OutOfBandReport out_of_band_report(const SpectrumEstimate& est, const SampledSignal& sig, double f_max);

// Trapezoidal signal energy over the native channel; points whose
// authoritative channel is the log one are skipped and counted.
double energy(const SampledSignal& sig, std::size_t* excluded = nullptr);

// Least-squares slope of ln(upper envelope of |h|) against ln t over
// [t_lo, t_hi] (positive times).
double decay_order(const SampledSignal& sig, double t_lo, double t_hi);

}  // namespace superosc::spectral
