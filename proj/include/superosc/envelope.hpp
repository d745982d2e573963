#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "superosc/logsigned.hpp"

namespace superosc::envelope {

// Base spectrum families. Every family has an even, real, compactly
// supported spectrum G(f); the composed envelope is [g(t/(nu*eta))]^nu,
// whose spectrum again fits inside |f| <= base halfwidth / eta.
enum class Family {
    Sinc,                // G = rect(f)
    PolySpectrum,        // G = (3/4)(1 - f^2) rect(f/2)
    GegenbauerSpectrum,  // G = (1 - f^2)^kappa rect(f/2), kappa > -1
    CosPowerSpectrum,    // G = cos^kappa(f) rect(f/pi), kappa > -2
    BumpSpectrum,        // G = exp[f^2m/(f^2n - 1) - 1] rect(f/2)
};

struct EnvelopeSpec {
    Family family = Family::Sinc;
    double kappa = 0.0;  // Gegenbauer / CosPower parameter
    int bump_m = 1;
    int bump_n = 1;
    int power = 1;           // nu >= 1
    double freq_scale = 1.0;  // eta > 0; spectrum scaled as eta G(eta f)

    void validate() const;
    double base_halfwidth() const;   // support of the unscaled base G
    double band_halfwidth() const;   // base_halfwidth / eta
    // Spectrum edge exponent alpha: G ~ (halfwidth - |f|)^alpha at the edge.
    // Infinity for the bump family. Drives the validity bookkeeping.
    double edge_exponent() const;
};

// Exact base-family spectrum (before powering); requires power == 1.
double spectrum_value(const EnvelopeSpec& spec, double f);

// Composed envelope [g(t/(nu*eta))]^nu. The log-domain variant is what the
// waveform composition uses; the plain one is a convenience wrapper.
double time_value(const EnvelopeSpec& spec, double t);
LogSigned time_value_log(const EnvelopeSpec& spec, double t);

// Unscaled base-family g(u) (nu = 1, eta = 1), log-domain.
LogSigned base_time_value_log(const EnvelopeSpec& spec, double u);

namespace detail {
// The two bump inverse-transform branches, exposed so the overlap band can
// be cross-checked; production code picks the branch by |t|.
LogSigned bump_time_log_real_axis(int m, int n, double t);
LogSigned bump_time_log_contour(int m, int n, double t);
}  // namespace detail

struct TabulatedEnvelope {
    double t0 = 0.0;  // first grid point
    double dt = 0.0;
    int interp_order = 6;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double time_at(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
    double t_max() const { return time_at(values.size() - 1); }
    bool covers(double t) const { return t >= t0 && t <= t_max(); }
    // Local Lagrange interpolation of degree interp_order.
    double value_at(double t) const;
};

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical inverse transform of the bump spectrum on [-t_max, t_max].
// The table is exactly even by construction (G is even and real).
TabulatedEnvelope tabulate_bump(const EnvelopeSpec& spec, double t_max, double oversample = 4.0);

struct TailFit {
    double a = 0.0;  // ln|g| ~ a - b * t^p
    double b = 0.0;
    double p = 0.0;
    int points_used = 0;
    double rms_residual = 0.0;
};

// Least-squares fit of the upper envelope of ln|g| over [t_lo, t_hi].
// Uses the local maxima of |g| (parabolically refined); a non-oscillatory
// positive signal falls back to using every sample.
TailFit fit_tail_decay(const TabulatedEnvelope& env, double t_lo, double t_hi);

}  // namespace superosc::envelope
