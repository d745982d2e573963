#include "superosc/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "superosc/specfun.hpp"

namespace superosc::envelope {

namespace {

constexpr double kPi = std::numbers::pi;
using cx = std::complex<double>;

// 16-point Gauss-Legendre on [-1, 1] (positive half; nodes are symmetric).
constexpr double kGlX[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499,
};
constexpr double kGlW[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541,
};

cx cpow_int(cx z, int k) {
    cx r = 1.0;
    while (k > 0) {
        if (k & 1) r *= z;
        z *= z;
        k >>= 1;
    }
    return r;
}

// Exponent of the generalized bump spectrum, normalized so that G(0) = 1/e
// for every (m, n): E(f) = f^2m/(f^2n - 1) - 1, which for m == n collapses
// exactly to 1/(f^2n - 1).
cx bump_exponent(int m, int n, cx f) {
    const cx f2n = cpow_int(f, 2 * n);
    if (m == n) return 1.0 / (f2n - 1.0);
    return cpow_int(f, 2 * m) / (f2n - 1.0) - 1.0;
}

double bump_exponent(int m, int n, double f) {
    return bump_exponent(m, n, cx(f, 0.0)).real();
}

}  // namespace

void EnvelopeSpec::validate() const {
    if (power < 1) throw std::invalid_argument("envelope: power must be >= 1");
    if (!(freq_scale > 0.0)) throw std::invalid_argument("envelope: freq_scale must be > 0");
    switch (family) {
        case Family::GegenbauerSpectrum:
            if (!(kappa > -1.0)) throw std::invalid_argument("envelope: Gegenbauer needs kappa > -1");
            break;
        case Family::CosPowerSpectrum:
            if (!(kappa > -2.0)) throw std::invalid_argument("envelope: cos-power needs kappa > -2");
            break;
        case Family::BumpSpectrum:
            if (bump_m < 1 || bump_n < 1) throw std::invalid_argument("envelope: bump exponents must be positive");
            if (bump_n > 32) throw std::invalid_argument("envelope: bump n > 32 unsupported");
            break;
        default:
            break;
    }
}

double EnvelopeSpec::base_halfwidth() const {
    switch (family) {
        case Family::Sinc: return 0.5;
        case Family::CosPowerSpectrum: return 0.5 * kPi;
        default: return 1.0;  // Poly, Gegenbauer, Bump
    }
}

double EnvelopeSpec::band_halfwidth() const { return base_halfwidth() / freq_scale; }

double EnvelopeSpec::edge_exponent() const {
    switch (family) {
        case Family::Sinc: return 0.0;
        case Family::PolySpectrum: return 1.0;
        case Family::GegenbauerSpectrum: return kappa;
        case Family::CosPowerSpectrum: return kappa;
        case Family::BumpSpectrum: return std::numeric_limits<double>::infinity();
    }
    return 0.0;
}

double spectrum_value(const EnvelopeSpec& spec, double f) {
    if (spec.power != 1)
        throw std::invalid_argument("spectrum_value: closed-form spectrum only for power == 1");
    spec.validate();
    const double fs = spec.freq_scale * f;  // eta G(eta f)
    const double a = std::fabs(fs);
    double base = 0.0;
    switch (spec.family) {
        case Family::Sinc:
            base = specfun::rect(fs);
            break;
        case Family::PolySpectrum:
            base = 0.75 * (1.0 - fs * fs) * specfun::rect(0.5 * fs);
            break;
        case Family::GegenbauerSpectrum:
            if (a >= 1.0) { base = 0.0; break; }
            base = std::pow(1.0 - fs * fs, spec.kappa);
            break;
        case Family::CosPowerSpectrum:
            if (a >= 0.5 * kPi) { base = 0.0; break; }
            base = std::pow(std::cos(fs), spec.kappa);
            break;
        case Family::BumpSpectrum:
            if (a >= 1.0) { base = 0.0; break; }
            base = std::exp(bump_exponent(spec.bump_m, spec.bump_n, fs));
            break;
    }
    return spec.freq_scale * base;
}

// ---------------------------------------------------------------------------
// Bump-family inverse transform.
//
// g(t) = Int_{-1}^{1} exp(E(f)) e^{i 2 pi f t} df.  Two regimes:
//
//  * |t| <= 30 n: straight Gauss-Legendre panels on the real interval.
//
//  * |t| >  30 n: the integrand's value drops below the double-precision
//    noise floor of real-axis quadrature (g ~ exp(-sqrt(2 pi t / n))), so we
//    deform 2 Re Int_0^1 onto the steepest-descent ray f = 1 + xi e^{i3pi/4}
//    through the saddle at |f - 1| ~ 1/sqrt(4 pi n t).  On that path the
//    integrand is a smooth single bump whose overall scale can be factored
//    out, giving ln|g| to ~1e-10 relative at any magnitude.  The legs that
//    close the contour are either purely imaginary (the segment above f = 0)
//    or bounded by e^{-2 pi Y t} (the horizontal connector at height Y), and
//    the sector swept by the deformation contains no singularities of
//    exp(E(f)) as long as Y stays below sin(pi/n).
// ---------------------------------------------------------------------------

namespace {

struct BumpShape {
    int m, n;
    double contour_y() const {
        if (n == 1) return 0.25;
        return std::min(0.25, 0.7 * std::sin(kPi / n));
    }
    double contour_r() const { return contour_y() * std::numbers::sqrt2; }
    double t_switch() const { return 30.0 * n; }
};

// Complex GL16 sum of fn over [a, b].
template <typename F>
cx gl16(const F& fn, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    cx acc = 0.0;
    for (int j = 0; j < 8; ++j) {
        const double d = half * kGlX[j];
        acc += kGlW[j] * (fn(mid - d) + fn(mid + d));
    }
    return acc * half;
}

template <typename F>
cx panel_sum(const F& fn, const std::vector<double>& edges) {
    cx acc = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) acc += gl16(fn, edges[i], edges[i + 1]);
    return acc;
}

std::vector<double> halve_panels(const std::vector<double>& edges) {
    std::vector<double> out;
    out.reserve(edges.size() * 2);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        out.push_back(edges[i]);
        out.push_back(0.5 * (edges[i] + edges[i + 1]));
    }
    out.push_back(edges.back());
    return out;
}

std::vector<double> uniform_edges(double a, double b, int count) {
    std::vector<double> e(count + 1);
    for (int i = 0; i <= count; ++i) e[i] = a + (b - a) * i / count;
    return e;
}

// Real-axis evaluation; returns the full complex integral so the caller can
// check that the imaginary part vanishes as it must for an even spectrum.
cx bump_real_axis(const BumpShape& s, double t, double* im_scale) {
    auto fn = [&](double f) -> cx {
        if (std::fabs(f) >= 1.0) return 0.0;
        const double e = bump_exponent(s.m, s.n, f);
        return std::exp(cx(e, 2.0 * kPi * f * t));
    };
    int panels = std::max(24, static_cast<int>(std::ceil(9.0 * std::fabs(t))));
    std::vector<double> edges = uniform_edges(-1.0, 1.0, panels);
    cx val = panel_sum(fn, edges);
    for (int round = 0;; ++round) {
        edges = halve_panels(edges);
        const cx ref = panel_sum(fn, edges);
        const double err = std::abs(ref - val);
        val = ref;
        if (err <= 1e-10 * std::abs(val) + 3e-16) break;
        if (round >= 3)
            throw QuadratureError("bump transform: real-axis panels failed to stabilize");
    }
    if (im_scale) *im_scale = std::fabs(val.imag());
    return val;
}

// Steepest-descent branch; valid for t >= t_switch. Returns ln|g| and sign.
LogSigned bump_contour(const BumpShape& s, double t) {
    const double Y = s.contour_y();
    const double R = s.contour_r();
    const cx dir = std::polar(1.0, 0.75 * kPi);
    const double xi_star = 1.0 / std::sqrt(4.0 * kPi * s.n * t);

    auto expo = [&](double xi) -> cx {
        const cx f = 1.0 + xi * dir;
        return bump_exponent(s.m, s.n, f) + cx(0.0, 2.0 * kPi * t) * (xi * dir);
    };
    const cx e_star = expo(xi_star);

    // Panel edges in v = ln(xi): fine near the saddle, geometric growth away.
    const double sigma_v = std::sqrt(s.n * xi_star);
    const double v_star = std::log(xi_star);
    const double v_lo = v_star - 3.0;
    const double v_hi = std::min(v_star + 3.0, std::log(R));
    std::vector<double> vedges{v_star};
    double step = std::clamp(2.0 * sigma_v, 0.02, 0.4);
    for (double v = v_star, w = step; v < v_hi;) {
        v = std::min(v + w, v_hi);
        vedges.push_back(v);
        w = std::min(w * 1.5, 0.6);
    }
    for (double v = v_star, w = step; v > v_lo;) {
        v = std::max(v - w, v_lo);
        vedges.insert(vedges.begin(), v);
        w = std::min(w * 1.5, 0.6);
    }

    // Integrate exp(E - E*) over the ray, with xi = e^v so the measure is
    // xi dv; everything is O(1) in double.
    auto fn = [&](double v) -> cx {
        const double xi = std::exp(v);
        return std::exp(expo(xi) - e_star) * xi;
    };
    cx ival = panel_sum(fn, vedges);
    for (int round = 0;; ++round) {
        vedges = halve_panels(vedges);
        const cx ref = panel_sum(fn, vedges);
        const double err = std::abs(ref - ival);
        ival = ref;
        if (err <= 1e-10 * std::abs(ival) + 1e-14) break;
        if (round >= 3)
            throw QuadratureError("bump transform: contour panels failed to stabilize");
    }

    // Discarded pieces: the connector at height Y and the ray beyond R.
    // Both are ~e^{-2 pi Y t} which is far below the saddle magnitude here;
    // keep an explicit guard so a bad parameter regime fails loudly.
    const double rel_remainder = std::exp(-2.0 * kPi * t * Y - e_star.real());
    if (rel_remainder > 1e-9 * std::abs(ival))
        throw QuadratureError("bump transform: contour remainder bound too large");

    // The ray is traversed from 1 + R e^{i3pi/4} down to the endpoint f = 1,
    // opposite to the xi parameterization: hence the extra pi in the phase.
    const double theta = 2.0 * kPi * t + 0.75 * kPi + kPi + e_star.imag() + std::arg(ival);
    const double c = std::cos(theta);
    if (c == 0.0 || std::abs(ival) == 0.0) return LogSigned::zero();
    const int sgn = c > 0.0 ? 1 : -1;
    return LogSigned(sgn, e_star.real() + std::log(2.0 * std::abs(ival)) + std::log(std::fabs(c)));
}

LogSigned bump_time_log(int m, int n, double t) {
    const BumpShape s{m, n};
    const double a = std::fabs(t);  // g is even
    if (a <= s.t_switch()) {
        const cx v = bump_real_axis(s, a, nullptr);
        return LogSigned::from_value(v.real());
    }
    return bump_contour(s, a);
}

}  // namespace

namespace detail {

LogSigned bump_time_log_real_axis(int m, int n, double t) {
    return LogSigned::from_value(bump_real_axis(BumpShape{m, n}, std::fabs(t), nullptr).real());
}

LogSigned bump_time_log_contour(int m, int n, double t) {
    return bump_contour(BumpShape{m, n}, std::fabs(t));
}

}  // namespace detail

namespace {

// ---------------------------------------------------------------------------
// Closed-form families.
// ---------------------------------------------------------------------------

// (i)  g(u) = 3 [sinc(2u) - cos(2 pi u)] / (2 pi u)^2, series below z = 0.1.
double poly_time(double u) {
    const double z = 2.0 * kPi * u;
    if (std::fabs(z) < 0.1) {
        const double z2 = z * z;
        return 1.0 + z2 * (-1.0 / 10.0 + z2 * (1.0 / 280.0 + z2 * (-1.0 / 15120.0)));
    }
    return 3.0 * (specfun::sinc(2.0 * u) - specfun::cos_pi(2.0 * u)) / (z * z);
}

// (ii) g(u) = sqrt(pi) Gamma(k+1) J_{k+1/2}(2 pi u) / (pi u)^{k+1/2}.
LogSigned gegenbauer_time_log(double kappa, double u) {
    const double a = std::fabs(u);
    const double lead = 0.5 * std::log(kPi) + specfun::log_gamma(kappa + 1.0).log_mag;
    const double z = kPi * a;
    if (2.0 * z < 0.5) {
        // series sum_k (-1)^k z^{2k} / (k! Gamma(kappa + 3/2 + k))
        double term = 1.0 / specfun::gamma(kappa + 1.5);
        double sum = term;
        for (int k = 1; k < 40; ++k) {
            term *= -(z * z) / (k * (kappa + 0.5 + k));
            sum += term;
            if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
        }
        return LogSigned::from_value(std::exp(lead) * sum);
    }
    const double j = specfun::bessel_j(kappa + 0.5, 2.0 * z);
    if (j == 0.0) return LogSigned::zero();
    const int sgn = j > 0.0 ? 1 : -1;
    return LogSigned(sgn, lead + std::log(std::fabs(j)) - (kappa + 0.5) * std::log(z));
}

// (iii) g(u) = pi Gamma(k+1) / (2^k Gamma(1+k/2+pi u) Gamma(1+k/2-pi u)).
// Evaluated at |u| so that g(-u) == g(u) holds bit-exactly.
LogSigned cos_power_time_log(double kappa, double u) {
    const double a = std::fabs(u);
    const double num = std::log(kPi) + specfun::log_gamma(kappa + 1.0).log_mag - kappa * std::numbers::ln2;
    LogSigned d1, d2;
    try {
        d1 = specfun::log_gamma(1.0 + 0.5 * kappa + kPi * a);
        d2 = specfun::log_gamma(1.0 + 0.5 * kappa - kPi * a);
    } catch (const std::domain_error&) {
        return LogSigned::zero();  // 1/Gamma(pole) = 0: a zero of g
    }
    return LogSigned(d1.sign * d2.sign, num - d1.log_mag - d2.log_mag);
}

}  // namespace

LogSigned base_time_value_log(const EnvelopeSpec& spec, double u) {
    switch (spec.family) {
        case Family::Sinc: return LogSigned::from_value(specfun::sinc(u));
        case Family::PolySpectrum: return LogSigned::from_value(poly_time(u));
        case Family::GegenbauerSpectrum: return gegenbauer_time_log(spec.kappa, u);
        case Family::CosPowerSpectrum: return cos_power_time_log(spec.kappa, u);
        case Family::BumpSpectrum: return bump_time_log(spec.bump_m, spec.bump_n, u);
    }
    return LogSigned::zero();
}

LogSigned time_value_log(const EnvelopeSpec& spec, double t) {
    spec.validate();
    const double u = t / (spec.power * spec.freq_scale);
    return base_time_value_log(spec, u).pow_int(spec.power);
}

double time_value(const EnvelopeSpec& spec, double t) { return time_value_log(spec, t).value(); }

// ---------------------------------------------------------------------------
// Tabulation and tail fit.
// ---------------------------------------------------------------------------

double TabulatedEnvelope::value_at(double t) const {
    if (!covers(t)) throw std::out_of_range("TabulatedEnvelope: point outside table");
    const int n = static_cast<int>(values.size());
    const int pts = std::min(interp_order + 1, n);  // short tables degrade gracefully
    int lo = static_cast<int>(std::floor((t - t0) / dt)) - pts / 2 + 1;
    lo = std::clamp(lo, 0, n - pts);
    // Neville's scheme on the local stencil.
    double work[16];
    double xs[16];
    for (int i = 0; i < pts; ++i) {
        work[i] = values[lo + i];
        xs[i] = time_at(lo + i);
    }
    for (int level = 1; level < pts; ++level)
        for (int i = 0; i < pts - level; ++i)
            work[i] = ((t - xs[i + level]) * work[i] + (xs[i] - t) * work[i + 1]) / (xs[i] - xs[i + level]);
    return work[0];
}

TabulatedEnvelope tabulate_bump(const EnvelopeSpec& spec, double t_max, double oversample) {
    spec.validate();
    if (spec.family != Family::BumpSpectrum)
        throw std::invalid_argument("tabulate_bump: spec is not a bump family");
    if (!(t_max > 0.0)) throw std::invalid_argument("tabulate_bump: t_max must be > 0");
    if (!(oversample >= 4.0)) throw std::invalid_argument("tabulate_bump: oversample must be >= 4");
    // Values below exp(-700) underflow the table's double channel.
    if (std::sqrt(2.0 * kPi * t_max / spec.bump_n) > 690.0)
        throw std::invalid_argument("tabulate_bump: t_max beyond double range of g");

    const BumpShape s{spec.bump_m, spec.bump_n};
    const double dt = 1.0 / oversample;
    const int half = static_cast<int>(std::ceil(t_max / dt));
    TabulatedEnvelope env;
    env.dt = dt;
    env.t0 = -half * dt;
    env.values.assign(2 * half + 1, 0.0);

    const double amp0 = bump_real_axis(s, 0.0, nullptr).real();  // = Int G > 0
    for (int i = 0; i <= half; ++i) {
        const double t = i * dt;
        double v;
        if (t <= s.t_switch()) {
            double im = 0.0;
            const cx full = bump_real_axis(s, t, &im);
            if (im > 1e-12 * std::max(std::fabs(full.real()), 1e-3 * amp0))
                throw QuadratureError("tabulate_bump: imaginary part above tolerance");
            v = full.real();
        } else {
            v = bump_contour(s, t).value();
        }
        env.values[half + i] = v;
        env.values[half - i] = v;  // G even => g even
    }
    return env;
}

TailFit fit_tail_decay(const TabulatedEnvelope& env, double t_lo, double t_hi) {
    if (!(t_lo < t_hi)) throw std::invalid_argument("fit_tail_decay: bad range");
    if (!env.covers(t_lo) || !env.covers(t_hi))
        throw std::invalid_argument("fit_tail_decay: table does not cover range");

    const int n = static_cast<int>(env.values.size());
    const int i_lo = std::max(1, static_cast<int>(std::ceil((t_lo - env.t0) / env.dt)));
    const int i_hi = std::min(n - 2, static_cast<int>(std::floor((t_hi - env.t0) / env.dt)));

    std::vector<double> ts, ys;
    int sign_changes = 0;
    for (int i = i_lo; i <= i_hi; ++i) {
        const double v0 = env.values[i];
        if (i > i_lo && env.values[i - 1] * v0 < 0.0) ++sign_changes;
        const double a0 = std::fabs(v0);
        if (a0 == 0.0) continue;
        const double am = std::fabs(env.values[i - 1]);
        const double ap = std::fabs(env.values[i + 1]);
        if (a0 < am || a0 < ap) continue;
        double t = env.time_at(i);
        double y = std::log(a0);
        if (am > 0.0 && ap > 0.0) {
            // parabolic refinement of the peak in ln|g|
            const double ym = std::log(am), yp = std::log(ap);
            const double denom = ym - 2.0 * y + yp;
            if (denom < 0.0) {
                double d = 0.5 * (ym - yp) / denom;
                d = std::clamp(d, -1.0, 1.0);
                t += d * env.dt;
                y += -0.25 * (ym - yp) * d;
            }
        }
        ts.push_back(t);
        ys.push_back(y);
    }

    if (static_cast<int>(ts.size()) < 20) {
        // Non-oscillatory positive tails carry their envelope directly.
        if (sign_changes < 2) {
            ts.clear();
            ys.clear();
            for (int i = i_lo; i <= i_hi; ++i) {
                const double a0 = std::fabs(env.values[i]);
                if (a0 == 0.0) continue;
                ts.push_back(env.time_at(i));
                ys.push_back(std::log(a0));
            }
        }
        if (static_cast<int>(ts.size()) < 20)
            throw std::invalid_argument("fit_tail_decay: fewer than 20 usable maxima");
    }

    // ln|g| ~ a - b t^p: linear LS in (a, b) nested in a golden-section
    // search over the exponent p.
    const auto sse_for = [&](double p, double* a_out, double* b_out) {
        double su = 0, suu = 0, sy = 0, suy = 0;
        const double N = static_cast<double>(ts.size());
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const double u = std::pow(ts[i], p);
            su += u;
            suu += u * u;
            sy += ys[i];
            suy += u * ys[i];
        }
        const double det = N * suu - su * su;
        const double b = -(N * suy - su * sy) / det;
        const double a = (sy + b * su) / N;
        double sse = 0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const double r = ys[i] - (a - b * std::pow(ts[i], p));
            sse += r * r;
        }
        if (a_out) *a_out = a;
        if (b_out) *b_out = b;
        return sse;
    };

    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.05, hi = 1.5;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = sse_for(x1, nullptr, nullptr), f2 = sse_for(x2, nullptr, nullptr);
    while (hi - lo > 1e-7) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = sse_for(x1, nullptr, nullptr);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = sse_for(x2, nullptr, nullptr);
        }
    }
    TailFit fit;
    fit.p = 0.5 * (lo + hi);
    const double sse = sse_for(fit.p, &fit.a, &fit.b);
    fit.points_used = static_cast<int>(ts.size());
    fit.rms_residual = std::sqrt(sse / ts.size());
    return fit;
}

}  // namespace superosc::envelope
