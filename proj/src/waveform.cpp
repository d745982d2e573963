#include "superosc/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace superosc::waveform {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LogSigned product_at(const WaveformSpec& spec, double t) {
    if (spec.has_cosine_zeros()) {
        const auto& p = spec.cosine_params();
        try {
            return euler::product_gamma_form(p, t);
        } catch (const euler::GammaPoleError&) {
            return euler::product_direct(euler::cosine_zeros(p), t);
        }
    }
    return euler::product_direct(std::get<euler::ZeroSet>(spec.zeros), t);
}

}  // namespace

int WaveformSpec::polynomial_degree() const {
    if (has_cosine_zeros()) return 2 * cosine_params().truncation;
    return std::get<euler::ZeroSet>(zeros).degree();
}

ValidityReport validate(const WaveformSpec& spec) {
    spec.env.validate();
    if (spec.has_cosine_zeros())
        spec.cosine_params().validate();
    else
        std::get<euler::ZeroSet>(spec.zeros).validate();

    ValidityReport rep;
    rep.polynomial_degree = spec.polynomial_degree();

    const double alpha = spec.env.edge_exponent();
    const int nu = spec.env.power;
    std::ostringstream why;
    if (std::isinf(alpha)) {
        // All spectrum derivatives are smooth: any polynomial degree is fine.
        rep.smoothness_degree = kInf;
        rep.stretched_exponential_tail = true;
        rep.tail_order = -kInf;
        rep.pass = true;
        why << "bump spectrum is C-infinity at the band edge; any nu (including 1) works";
    } else {
        // The nu-fold self-convolution of a spectrum with edge exponent
        // alpha has edge exponent nu*(alpha+1)-1; delta functions appear
        // one derivative later.
        rep.smoothness_degree = nu * (alpha + 1.0) - 1.0;
        rep.tail_order = rep.polynomial_degree - nu * (alpha + 1.0);
        rep.pass = rep.smoothness_degree >= rep.polynomial_degree;
        if (rep.pass)
            why << "smoothness degree " << rep.smoothness_degree << " covers polynomial degree "
                << rep.polynomial_degree << "; tail decays as |t|^(" << rep.tail_order << ")";
        else
            why << "nu = " << nu << " gives smoothness degree " << rep.smoothness_degree
                << " < polynomial degree " << rep.polynomial_degree
                << " (sinc family needs nu > 2N): not square-integrable";
    }
    rep.limiting_condition = why.str();

    if (spec.has_cosine_zeros())
        rep.superoscillatory = spec.cosine_params().f0 > spec.env.band_halfwidth();
    return rep;
}

LogSigned eval(const WaveformSpec& spec, double t) {
    return envelope::time_value_log(spec.env, t) * product_at(spec, t);
}

SampledSignal sample(const WaveformSpec& spec, double t_min, double t_max, std::size_t count) {
    if (count < 2) throw std::invalid_argument("sample: count must be >= 2");
    if (!(t_min < t_max)) throw std::invalid_argument("sample: empty range");
    SampledSignal sig;
    sig.t0 = t_min;
    sig.dt = (t_max - t_min) / static_cast<double>(count - 1);
    sig.values.reserve(count);
    sig.log_sign.reserve(count);
    sig.log10_mag.reserve(count);
    sig.native_ok.reserve(count);

    if (spec.has_cosine_zeros())
        sig.rate_warning = sig.dt > 1.0 / (8.0 * spec.cosine_params().f0);

    // Bump envelopes are expensive per point; go through one shared table.
    const bool bump = spec.env.family == envelope::Family::BumpSpectrum;
    envelope::TabulatedEnvelope table;
    const double arg_scale = spec.env.power * spec.env.freq_scale;
    if (bump) {
        const double u_max = std::max(std::fabs(t_min), std::fabs(t_max)) / arg_scale;
        table = envelope::tabulate_bump(spec.env, u_max + 1.0);
    }

    for (std::size_t i = 0; i < count; ++i) {
        const double t = sig.time_at(i);
        LogSigned env_v;
        if (bump) {
            const double g = table.value_at(t / arg_scale);
            env_v = LogSigned::from_value(g).pow_int(spec.env.power);
        } else {
            env_v = envelope::time_value_log(spec.env, t);
        }
        sig.push_back(env_v * product_at(spec, t));
    }
    return sig;
}

double so_fidelity(const WaveformSpec& spec) {
    if (!spec.has_cosine_zeros())
        throw std::invalid_argument("so_fidelity: requires a cosine zero source");
    const auto& p = spec.cosine_params();
    const double so_interval = std::sqrt(static_cast<double>(p.truncation)) / (4.0 * p.f0);
    const LogSigned h0 = eval(spec, 0.0);
    if (h0.is_zero()) throw std::runtime_error("so_fidelity: h(0) = 0");
    const int k_max = static_cast<int>(std::floor(so_interval * 2.0 * p.f0));
    double worst = 1.0;
    for (int k = 0; k <= k_max; ++k) {
        const double t = k / (2.0 * p.f0);  // cos(2 pi f0 t) = +/-1 here
        const LogSigned h = eval(spec, t);
        const double ratio = std::exp(h.log_mag - h0.log_mag);
        worst = std::max(worst, ratio);
    }
    return worst;
}

WaveformDiagnostics diagnostics(const WaveformSpec& spec, std::optional<double> scan_t_max) {
    WaveformDiagnostics d;
    double f0 = spec.env.band_halfwidth();
    double outer = 0.0;
    if (spec.has_cosine_zeros()) {
        const auto& p = spec.cosine_params();
        f0 = p.f0;
        d.so_interval = std::sqrt(static_cast<double>(p.truncation)) / (4.0 * p.f0);
        outer = p.truncation / (2.0 * p.f0);
    } else {
        const auto& zs = std::get<euler::ZeroSet>(spec.zeros);
        for (const auto& z : zs.zeros) outer = std::max(outer, std::fabs(z.location));
    }
    d.outer_zero = outer;
    d.h_at_zero = eval(spec, 0.0).value();

    const double t_scan = scan_t_max.value_or(std::max(8.0 * outer, 1.0));
    const double rate = 32.0 * std::max(f0, spec.env.band_halfwidth());
    const std::size_t count = std::max<std::size_t>(1024, static_cast<std::size_t>(2.0 * t_scan * rate) + 1);
    const SampledSignal sig = sample(spec, -t_scan, t_scan, count);

    std::size_t best = 0;
    for (std::size_t i = 1; i < sig.size(); ++i)
        if (sig.log10_mag[i] > sig.log10_mag[best]) best = i;
    double l10 = sig.log10_mag[best];
    double t_best = sig.time_at(best);
    if (best > 0 && best + 1 < sig.size()) {
        // parabolic refinement on log magnitude
        const double ym = sig.log10_mag[best - 1], y0 = l10, yp = sig.log10_mag[best + 1];
        const double denom = ym - 2.0 * y0 + yp;
        if (denom < 0.0 && std::isfinite(denom)) {
            const double dd = std::clamp(0.5 * (ym - yp) / denom, -1.0, 1.0);
            t_best += dd * sig.dt;
            l10 += -0.25 * (ym - yp) * dd;
        }
    }
    d.log10_h_max = l10;
    d.t_of_h_max = t_best;
    return d;
}

}  // namespace superosc::waveform
