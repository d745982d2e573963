#pragma once

#include "superosc/signal.hpp"

namespace superosc::yield_bound {

// Superoscillation profile: h(t) ~ a_s cos(2 pi f_s t) over (t0, t0+tau_s),
// hosted by a signal band-limited to |f| <= f_max < f_s.
struct SoProfile {
    double a_s = 1.0;
    double f_s = 50.0;
    double tau_s = 1.0;
    double t0 = 0.0;
    double f_max = 1.0;

    void validate() const;                       // throws on f_s <= f_max etc.
    bool well_conditioned() const { return f_s * tau_s >= 10.0; }
};

// Compactly supported filter q_tau(t) = exp{1/[(2t/tau)^2-1]} rect(t/tau) cos(2 pi f_s t).
struct FilterSpec {
    double tau = 0.5;
    double f_s = 50.0;
    double delta_f = 0.0;  // descriptive bandwidth, metadata only

    void validate() const;
};

// E_s = a_s^2 tau_s / 2.
double so_energy(const SoProfile& p);

double filter_impulse(const FilterSpec& fs, double t);

// Q_tau(f) = (tau/4) { Qhat[tau(f-f_s)/2] + Qhat[tau(f+f_s)/2] }, with Qhat
// the bump transform; both shifted copies always evaluated.
double filter_spectrum(const FilterSpec& fs, double f);

// Windowed sinusoid output energy, 0.0121 tau^2 [1 - tau/tau_s] E_s.
double window_energy(const FilterSpec& fs, const SoProfile& p);

// Closed-form yield bound exp{9 - 5 [tau (f_s - f_max)]^0.47} / (1 - tau/tau_s).
double yield_bound_value(const SoProfile& p, double tau);

// Same chain without the paper's rounding of the two constants.
double yield_bound_unrounded(const SoProfile& p, double tau);

// Strict variant with the numerically exact Qhat tail instead of the fit.
double yield_bound_exact_qhat(const SoProfile& p, double tau);

struct BoundOptimum {
    double tau_star = 0.0;
    double bound_star = 0.0;
};

// Minimizes yield_bound_value over tau in (0, tau_s): 64 log-spaced bracket
// candidates, then golden section to 1e-5 * tau_s.
BoundOptimum optimize_bound(const SoProfile& p);

struct YieldMeasurement {
    double direct_ratio = 0.0;     // window energy / total energy from the samples
    double conv_energy = 0.0;      // filter output energy via discrete convolution
    double spectral_energy = 0.0;  // same, via the spectral product
    double eq8_tail_bound = 0.0;   // (tau/4)^2 Qhat^2[tau(f_s-f_max)/2] E_h
};

// Measures the yield of a sampled signal and pushes it through the filter
// both ways; throws if the filter support exceeds the record or the two
// output energies disagree beyond 1e-6 relative.
YieldMeasurement empirical_yield(const SampledSignal& sig, const SoProfile& p, const FilterSpec& fs);

}  // namespace superosc::yield_bound
