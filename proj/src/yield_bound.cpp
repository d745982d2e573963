#include "superosc/yield_bound.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "superosc/envelope.hpp"
#include "superosc/spectral.hpp"

namespace superosc::yield_bound {

namespace {

constexpr double kPi = std::numbers::pi;

// Qhat = Fourier transform of exp[1/(t^2-1)] rect(t/2): the basic bump shape
// with the variable read as frequency. ln|Qhat(x)| stays meaningful far past
// the double underflow point of the value itself.
LogSigned qhat_log(double x) {
    static const envelope::EnvelopeSpec bump{envelope::Family::BumpSpectrum, 0.0, 1, 1, 1, 1.0};
    return envelope::base_time_value_log(bump, x);
}

double qhat(double x) { return qhat_log(x).value(); }

}  // namespace

void SoProfile::validate() const {
    if (!(a_s > 0.0)) throw std::invalid_argument("SoProfile: a_s must be > 0");
    if (!(tau_s > 0.0)) throw std::invalid_argument("SoProfile: tau_s must be > 0");
    if (!(f_max > 0.0)) throw std::invalid_argument("SoProfile: f_max must be > 0");
    if (!(f_s > f_max)) throw std::invalid_argument("SoProfile: need f_s > f_max");
}

void FilterSpec::validate() const {
    if (!(tau > 0.0)) throw std::invalid_argument("FilterSpec: tau must be > 0");
    if (!(f_s > 0.0)) throw std::invalid_argument("FilterSpec: f_s must be > 0");
}

double so_energy(const SoProfile& p) {
    p.validate();
    return 0.5 * p.a_s * p.a_s * p.tau_s;
}

double filter_impulse(const FilterSpec& fs, double t) {
    fs.validate();
    const double x = 2.0 * t / fs.tau;
    if (std::fabs(x) >= 1.0) return 0.0;
    return std::exp(1.0 / (x * x - 1.0)) * std::cos(2.0 * kPi * fs.f_s * t);
}

double filter_spectrum(const FilterSpec& fs, double f) {
    fs.validate();
    const double lo = qhat(0.5 * fs.tau * (f - fs.f_s));
    const double hi = qhat(0.5 * fs.tau * (f + fs.f_s));
    return 0.25 * fs.tau * (lo + hi);
}

double window_energy(const FilterSpec& fs, const SoProfile& p) {
    p.validate();
    fs.validate();
    if (!(fs.tau <= p.tau_s)) throw std::invalid_argument("window_energy: need tau <= tau_s");
    return 0.0121 * fs.tau * fs.tau * (1.0 - fs.tau / p.tau_s) * so_energy(p);
}

double yield_bound_value(const SoProfile& p, double tau) {
    p.validate();
    if (!(tau > 0.0 && tau < p.tau_s)) throw std::domain_error("yield_bound: tau outside (0, tau_s)");
    const double x = tau * (p.f_s - p.f_max);
    return std::exp(9.0 - 5.0 * std::pow(x, 0.47)) / (1.0 - tau / p.tau_s);
}

double yield_bound_unrounded(const SoProfile& p, double tau) {
    p.validate();
    if (!(tau > 0.0 && tau < p.tau_s)) throw std::domain_error("yield_bound: tau outside (0, tau_s)");
    // exp(2a - ln 0.1936) and 2b/2^p from the tail fit exp(a - b|f|^p),
    // a = 3.70153, b = 3.45055, p = 0.47; the paper rounds these to 9 and 5.
    const double ca = 2.0 * 3.70153 - std::log(0.1936);
    const double cb = 2.0 * 3.45055 * std::pow(0.5, 0.47);
    const double x = tau * (p.f_s - p.f_max);
    return std::exp(ca - cb * std::pow(x, 0.47)) / (1.0 - tau / p.tau_s);
}

double yield_bound_exact_qhat(const SoProfile& p, double tau) {
    p.validate();
    if (!(tau > 0.0 && tau < p.tau_s)) throw std::domain_error("yield_bound: tau outside (0, tau_s)");
    const LogSigned q = qhat_log(0.5 * tau * (p.f_s - p.f_max));
    const double ln_bound = 2.0 * q.log_mag - std::log(0.1936) - std::log1p(-tau / p.tau_s);
    return std::exp(ln_bound);
}

BoundOptimum optimize_bound(const SoProfile& p) {
    p.validate();
    auto f = [&](double tau) { return std::log(yield_bound_value(p, tau)); };

    // Log-spaced bracket sweep, then golden section between the neighbours
    // of the best candidate.
    constexpr int kCand = 64;
    const double lo0 = 1e-4 * p.tau_s, hi0 = (1.0 - 1e-7) * p.tau_s;
    std::vector<double> cand(kCand);
    for (int i = 0; i < kCand; ++i)
        cand[i] = lo0 * std::pow(hi0 / lo0, static_cast<double>(i) / (kCand - 1));
    int best_i = 0;
    double best_val = f(cand[0]);
    for (int i = 1; i < kCand; ++i) {
        const double v = f(cand[i]);
        if (v < best_val) {
            best_val = v;
            best_i = i;
        }
    }
    double lo = cand[std::max(0, best_i - 1)];
    double hi = cand[std::min(kCand - 1, best_i + 1)];
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > 1e-5 * p.tau_s) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = f(x2);
        }
    }
    BoundOptimum out;
    out.tau_star = 0.5 * (lo + hi);
    out.bound_star = yield_bound_value(p, out.tau_star);
    return out;
}

namespace {

std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& in, int dir) {
    std::vector<std::complex<double>> out(in.size());
    fftw_plan plan = fftw_plan_dft_1d(
        static_cast<int>(in.size()),
        reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data())),
        reinterpret_cast<fftw_complex*>(out.data()), dir, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    return out;
}

}  // namespace

YieldMeasurement empirical_yield(const SampledSignal& sig, const SoProfile& p, const FilterSpec& fs) {
    p.validate();
    fs.validate();
    if (!sig.fully_native())
        throw std::invalid_argument("empirical_yield: signal has out-of-range points");
    const std::size_t n = sig.size();
    const double dt = sig.dt;
    const std::size_t m = static_cast<std::size_t>(std::floor(fs.tau / dt)) + 1;
    if (m >= n) throw std::invalid_argument("empirical_yield: filter support exceeds the record");
    if (p.t0 < sig.t0 || p.t0 + p.tau_s > sig.t_end())
        throw std::invalid_argument("empirical_yield: superoscillation window outside the record");

    YieldMeasurement out;

    // (a) direct window / total energy ratio
    long double e_win = 0.0L, e_tot = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const long double v2 = static_cast<long double>(sig.values[i]) * sig.values[i];
        e_tot += v2;
        const double t = sig.time_at(i);
        if (t >= p.t0 && t <= p.t0 + p.tau_s) e_win += v2;
    }
    const double e_total = static_cast<double>(e_tot) * dt;
    out.direct_ratio = static_cast<double>(e_win / e_tot);

    // sampled impulse response, centered support [-tau/2, tau/2]
    std::vector<double> q(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double t = -0.5 * fs.tau + static_cast<double>(j) * dt;
        q[j] = filter_impulse(fs, t);
    }

    // (b) time-domain convolution energy (linear convolution, zero padded)
    const std::size_t len = n + m - 1;
    std::vector<std::complex<double>> a(len), b(len);
    for (std::size_t i = 0; i < n; ++i) a[i] = sig.values[i];
    for (std::size_t j = 0; j < m; ++j) b[j] = q[j];
    const auto fa = fft(a, FFTW_FORWARD);
    const auto fb = fft(b, FFTW_FORWARD);
    std::vector<std::complex<double>> prod(len);
    for (std::size_t i = 0; i < len; ++i) prod[i] = fa[i] * fb[i];
    const auto y = fft(prod, FFTW_BACKWARD);
    long double e_conv = 0.0L;
    const double inv_len = 1.0 / static_cast<double>(len);
    for (std::size_t i = 0; i < len; ++i) {
        const double yi = y[i].real() * inv_len * dt;  // y = (h*q) dt
        e_conv += static_cast<long double>(yi) * yi;
    }
    out.conv_energy = static_cast<double>(e_conv) * dt;

    // (c) spectral product energy: sum |H(f) Q(f)|^2 df on the padded grid,
    // H = dt FA, Q = dt FB, df = 1/(dt len), so the net scale is dt^3/len.
    long double e_spec = 0.0L;
    for (std::size_t i = 0; i < len; ++i) e_spec += std::norm(fa[i] * fb[i]);
    out.spectral_energy = static_cast<double>(e_spec) * dt * dt * dt / static_cast<double>(len);

    const double denom = std::max(out.conv_energy, out.spectral_energy);
    if (denom > 0.0 && std::fabs(out.conv_energy - out.spectral_energy) > 1e-6 * denom)
        throw std::runtime_error("empirical_yield: convolution and spectral energies disagree");

    // Tail bound on the filtered output of the in-band part. Qhat oscillates
    // through zeros, so the pointwise value at the band-edge argument is not
    // an upper bound: take the upper envelope over one arch, and keep both
    // shifted copies (the empirical path never drops the overlap).
    const double x0 = 0.5 * fs.tau * (p.f_s - p.f_max);
    double qenv_ln = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 64; ++i) {
        const LogSigned qv = qhat_log(x0 + static_cast<double>(i) / 64.0);
        if (!qv.is_zero()) qenv_ln = std::max(qenv_ln, qv.log_mag);
    }
    const double ln_b = 2.0 * (std::log(0.5 * fs.tau) + qenv_ln) + std::log(e_total);
    out.eq8_tail_bound = std::exp(ln_b);
    return out;
}

}  // namespace superosc::yield_bound
