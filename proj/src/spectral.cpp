#include "superosc/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace superosc::spectral {

namespace {

constexpr double kPi = std::numbers::pi;

// One-shot complex FFT through FFTW. Signals here are a few hundred
// thousand points at most, so plan-per-call with FFTW_ESTIMATE is fine.
std::vector<std::complex<double>> fft_forward(const std::vector<std::complex<double>>& in) {
    std::vector<std::complex<double>> out(in.size());
    fftw_plan plan = fftw_plan_dft_1d(
        static_cast<int>(in.size()),
        reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data())),
        reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    return out;
}

}  // namespace

double SpectrumEstimate::spectral_energy() const {
    long double acc = 0.0L;
    for (const auto& a : amplitudes) acc += static_cast<long double>(std::norm(a));
    return static_cast<double>(acc * df);
}

SpectrumEstimate spectrum(const SampledSignal& sig, Window window) {
    const std::size_t n = sig.size();
    if (n < 2) throw std::invalid_argument("spectrum: need at least 2 samples");
    if (!sig.fully_native())
        throw std::invalid_argument("spectrum: signal has out-of-range points; window to a native-range region first");

    std::vector<std::complex<double>> in(n);
    long double e_acc = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        double v = sig.values[i];
        if (!std::isfinite(v)) throw std::invalid_argument("spectrum: non-finite sample");
        if (window == Window::Taper) {
            // C-infinity bump taper w(x) = exp(x^2/(x^2-1)) over the record
            const double x = (2.0 * static_cast<double>(i) / static_cast<double>(n - 1)) - 1.0;
            const double w = (std::fabs(x) >= 1.0) ? 0.0 : std::exp(x * x / (x * x - 1.0));
            v *= w;
        }
        in[i] = v;
        e_acc += static_cast<long double>(v) * v;
    }

    SpectrumEstimate est;
    est.window = window;
    est.df = 1.0 / (sig.dt * static_cast<double>(n));
    est.nyquist = 0.5 / sig.dt;
    est.total_energy = static_cast<double>(e_acc) * sig.dt;
    est.amplitudes = fft_forward(in);
    // Physical scaling and absolute-time phase reference.
    for (std::size_t k = 0; k < n; ++k) {
        const double f = est.freq_at(k);
        const double ph = -2.0 * kPi * f * sig.t0;
        est.amplitudes[k] *= sig.dt * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    return est;
}

double out_of_band_energy(const SpectrumEstimate& est, double f_max) {
    if (!(f_max < est.nyquist))
        throw std::invalid_argument("out_of_band_energy: f_max must be below nyquist");
    long double in_all = 0.0L, out = 0.0L;
    for (std::size_t k = 0; k < est.size(); ++k) {
        const long double p = std::norm(est.amplitudes[k]);
        in_all += p;
        if (std::fabs(est.freq_at(k)) > f_max) out += p;
    }
    if (in_all == 0.0L) return 0.0;
    return static_cast<double>(out / in_all);
}

OutOfBandReport out_of_band_report(const SpectrumEstimate& est, const SampledSignal& sig, double f_max) {
    OutOfBandReport rep;
    rep.fraction = out_of_band_energy(est, f_max);
    // Estimate how much energy the record truncation alone injects: fit the
    // tail power law over the last decade of positive time and integrate the
    // fitted |h|^2 beyond the window.
    const double t_end = sig.t_end();
    if (t_end > 0.0) {
        try {
            const double q = decay_order(sig, 0.1 * t_end, t_end);
            std::size_t excluded = 0;
            const double e = energy(sig, &excluded);
            // |h(t)| ~ C t^q with C from the end of the record
            double h_end = 0.0;
            for (std::size_t i = sig.size() >= 64 ? sig.size() - 64 : 0; i < sig.size(); ++i)
                h_end = std::max(h_end, std::fabs(sig.values[i]));
            if (q < -0.5 && e > 0.0)
                rep.truncation_floor = h_end * h_end * t_end / ((-2.0 * q - 1.0) * e);
        } catch (const std::exception&) {
            rep.truncation_floor = 0.0;  // tail fit impossible; report raw fraction only
        }
    }
    return rep;
}

double energy(const SampledSignal& sig, std::size_t* excluded) {
    long double acc = 0.0L;
    std::size_t skipped = 0;
    const std::size_t n = sig.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!sig.native_ok[i]) {
            ++skipped;
            continue;
        }
        const long double v2 = static_cast<long double>(sig.values[i]) * sig.values[i];
        const bool edge = (i == 0 || i + 1 == n);
        acc += edge ? 0.5L * v2 : v2;
    }
    if (excluded) *excluded = skipped;
    return static_cast<double>(acc) * sig.dt;
}

double decay_order(const SampledSignal& sig, double t_lo, double t_hi) {
    if (!(t_lo > 0.0 && t_lo < t_hi)) throw std::invalid_argument("decay_order: need 0 < t_lo < t_hi");
    std::vector<double> lx, ly;
    const std::size_t n = sig.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double t = sig.time_at(i);
        if (t < t_lo || t > t_hi) continue;
        if (!sig.native_ok[i]) continue;
        const double a0 = std::fabs(sig.values[i]);
        if (a0 == 0.0) continue;
        if (a0 < std::fabs(sig.values[i - 1]) || a0 < std::fabs(sig.values[i + 1])) continue;
        double lt = std::log(t), lv = std::log(a0);
        const double am = std::fabs(sig.values[i - 1]), ap = std::fabs(sig.values[i + 1]);
        if (am > 0.0 && ap > 0.0) {
            const double ym = std::log(am), yp = std::log(ap);
            const double denom = ym - 2.0 * lv + yp;
            if (denom < 0.0) {
                const double d = std::clamp(0.5 * (ym - yp) / denom, -1.0, 1.0);
                lt = std::log(t + d * sig.dt);
                lv += -0.25 * (ym - yp) * d;
            }
        }
        lx.push_back(lt);
        ly.push_back(lv);
    }
    if (lx.size() < 4) throw std::invalid_argument("decay_order: too few upper-envelope points in range");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(lx.size());
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace superosc::spectral
