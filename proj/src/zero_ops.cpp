#include "superosc/zero_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace superosc::zero_ops {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Scale factor s making the linear factor s*(t - z); the paper's (1 - t/z)
// for z != 0, plain t for a zero added/removed at the origin.
double factor_scale(double z) { return z == 0.0 ? 1.0 : -1.0 / z; }

double linear_factor(double z, double t) { return factor_scale(z) * (t - z); }

// Numerator of the modified function: base * added factors / all removed
// factors except those listed in skip. Safe wherever no skipped removed zero
// is nearby.
double numerator_value(const ZeroLedger& led, double t, const std::vector<std::size_t>& skip) {
    double v = envelope::time_value(led.base, t);
    for (const auto& a : led.added) v *= std::pow(linear_factor(a.location, t), a.multiplicity);
    for (std::size_t j = 0; j < led.removed.size(); ++j) {
        if (std::find(skip.begin(), skip.end(), j) != skip.end()) continue;
        const auto& r = led.removed[j];
        v /= std::pow(linear_factor(r.location, t), r.multiplicity);
    }
    return v;
}

// Solve the small Vandermonde system for the degree-(n-1) polynomial through
// (u_i, y_i); returns monomial coefficients. n <= 9, plain elimination.
void interp_coeffs(const double* u, const double* y, int n, double* c) {
    double a[9][10];
    for (int i = 0; i < n; ++i) {
        double p = 1.0;
        for (int j = 0; j < n; ++j) {
            a[i][j] = p;
            p *= u[i];
        }
        a[i][n] = y[i];
    }
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        for (int j = col; j <= n; ++j) std::swap(a[col][j], a[piv][j]);
        for (int r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int j = col; j <= n; ++j) a[r][j] -= f * a[col][j];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = a[i][n];
        for (int j = i + 1; j < n; ++j) s -= a[i][j] * c[j];
        c[i] = s / a[i][i];
    }
}

// Removable-singularity evaluation near removed zero j: fit a degree-8
// polynomial to the numerator on a 9-point stencil straddling t1, then
// divide by the linear factor analytically (drop the vanishing low-order
// coefficients).
double eval_near_removed(const ZeroLedger& led, double t, std::size_t j) {
    const auto& r = led.removed[j];
    const double w = 1e-2 * led.local_scale();
    double u[9], y[9];
    for (int i = 0; i < 9; ++i) {
        u[i] = -1.0 + 0.25 * i;
        y[i] = numerator_value(led, r.location + w * u[i], {j});
    }
    double c[9];
    interp_coeffs(u, y, 9, c);
    const int k = r.multiplicity;
    // (s (t - t1))^k = (s w)^k u^k
    const double s = factor_scale(r.location);
    const double scale = std::pow(s * w, -k);
    const double ur = (t - r.location) / w;
    double acc = 0.0;
    for (int q = 8; q >= k; --q) acc = acc * ur + c[q];
    return scale * acc;
}

struct RefineResult {
    double location;
    double residual;      // |g| at the refined location
    double window_scale;  // max |g| over the verification window
};

RefineResult refine_zero(const ZeroLedger& led, double t1) {
    const double L = led.local_scale();
    double scale = 0.0;
    for (int i = 0; i <= 256; ++i) {
        const double t = t1 - L + (2.0 * L) * i / 256.0;
        scale = std::max(scale, std::fabs(eval(led, t)));
    }
    if (scale == 0.0) throw NotAZeroError("remove_zero: base vanishes on the whole window");

    // Parabolic refinement; each pass fits g on (x-h, x, x+h) and steps to
    // the nearest root (or the vertex when the parabola misses zero).
    double x = t1;
    double h = L / 64.0;
    for (int pass = 0; pass < 5; ++pass) {
        const double gm = eval(led, x - h);
        const double g0 = eval(led, x);
        const double gp = eval(led, x + h);
        const double a = 0.5 * (gp + gm) - g0;
        const double b = 0.5 * (gp - gm);
        double step;
        if (std::fabs(a) < 1e-300) {
            step = (b == 0.0) ? 0.0 : -g0 / b;
        } else {
            const double disc = b * b - 4.0 * a * g0;
            if (disc >= 0.0) {
                const double rdisc = std::sqrt(disc);
                const double r1 = (-b + rdisc) / (2.0 * a);
                const double r2 = (-b - rdisc) / (2.0 * a);
                step = std::fabs(r1) < std::fabs(r2) ? r1 : r2;
            } else {
                step = -b / (2.0 * a);  // vertex
            }
        }
        step = std::clamp(step, -2.0, 2.0);
        x += step * h;
        h = std::max(h / 4.0, 1e-9 * L);
    }
    return {x, std::fabs(eval(led, x)), scale};
}

}  // namespace

int ZeroLedger::added_count() const {
    int c = 0;
    for (const auto& a : added) c += a.multiplicity;
    return c;
}

int ZeroLedger::removed_count() const {
    int c = 0;
    for (const auto& r : removed) c += r.multiplicity;
    return c;
}

double ZeroLedger::effective_tail_order() const {
    const double alpha = base.edge_exponent();
    if (std::isinf(alpha)) return -kInf;  // stretched-exponential tails
    const double base_order = -base.power * (alpha + 1.0);
    return base_order + added_count() - removed_count();
}

ZeroLedger make_ledger(const envelope::EnvelopeSpec& base) {
    base.validate();
    return ZeroLedger{base, {}, {}};
}

ZeroLedger add_zero(const ZeroLedger& ledger, double t0) {
    const double order = ledger.effective_tail_order();
    if (!(order <= -2.0)) {
        std::ostringstream msg;
        msg << "add_zero: tails decay as |t|^(" << order
            << "), need at least |t|^-2 before adding a zero";
        throw GuardError(msg.str());
    }
    ZeroLedger out = ledger;
    for (auto& a : out.added)
        if (a.location == t0) {
            a.multiplicity += 1;
            return out;
        }
    out.added.push_back({t0, 1});
    return out;
}

ZeroLedger remove_zero(const ZeroLedger& ledger, double t1, int k) {
    if (k < 1) throw std::invalid_argument("remove_zero: multiplicity must be >= 1");
    const double L = ledger.local_scale();
    const RefineResult ref = refine_zero(ledger, t1);
    if (std::fabs(ref.location - t1) > L / 8.0)
        throw NotAZeroError("remove_zero: no zero near the requested location");
    if (ref.residual > 1e-8 * ref.window_scale)
        throw NotAZeroError("remove_zero: |g(t1)| above 1e-8 of the local scale");

    // Multiplicity check: low-order stencil coefficients must vanish.
    ZeroLedger probe = ledger;  // coefficients of the *numerator* around t1
    const double w = 1e-2 * L;
    double u[9], y[9];
    for (int i = 0; i < 9; ++i) {
        u[i] = -1.0 + 0.25 * i;
        y[i] = eval(probe, ref.location + w * u[i]);
    }
    double c[9];
    interp_coeffs(u, y, 9, c);
    double cmax = 0.0;
    for (int i = 0; i < 9; ++i) cmax = std::max(cmax, std::fabs(c[i]));
    for (int j = 0; j < k; ++j)
        if (std::fabs(c[j]) > 1e-5 * cmax)
            throw NotAZeroError("remove_zero: zero multiplicity below requested k");

    ZeroLedger out = ledger;
    // Re-adding a previously added zero cancels instead of stacking a
    // removable singularity on top of an explicit factor.
    for (auto it = out.added.begin(); it != out.added.end(); ++it) {
        if (std::fabs(it->location - ref.location) <= 1e-9 * std::max(1.0, std::fabs(ref.location))) {
            const int cancel = std::min(it->multiplicity, k);
            it->multiplicity -= cancel;
            if (it->multiplicity == 0) out.added.erase(it);
            if (cancel == k) return out;
            k -= cancel;
            break;
        }
    }
    for (auto& r : out.removed)
        if (std::fabs(r.location - ref.location) <= 1e-9 * std::max(1.0, std::fabs(ref.location))) {
            r.multiplicity += k;
            return out;
        }
    out.removed.push_back({ref.location, k});
    return out;
}

ZeroLedger shift_zero(const ZeroLedger& ledger, double t1, double t0) {
    return add_zero(remove_zero(ledger, t1, 1), t0);
}

double eval(const ZeroLedger& ledger, double t) {
    const double hole = 1e-3 * ledger.local_scale();
    for (std::size_t j = 0; j < ledger.removed.size(); ++j)
        if (std::fabs(t - ledger.removed[j].location) < hole)
            return eval_near_removed(ledger, t, j);
    return numerator_value(ledger, t, {});
}

SampledSignal sample(const ZeroLedger& ledger, double t_min, double t_max, std::size_t count) {
    if (count < 2) throw std::invalid_argument("sample: count must be >= 2");
    if (!(t_min < t_max)) throw std::invalid_argument("sample: empty range");
    const double dt = (t_max - t_min) / static_cast<double>(count - 1);

    // Bump bases go through one shared table; everything else is cheap.
    const bool bump = ledger.base.family == envelope::Family::BumpSpectrum;
    envelope::TabulatedEnvelope table;
    const double arg_scale = ledger.base.power * ledger.base.freq_scale;
    if (bump) {
        const double u_max = std::max(std::fabs(t_min), std::fabs(t_max)) / arg_scale;
        table = envelope::tabulate_bump(ledger.base, u_max + 1.0);
    }

    const double hole = 1e-3 * ledger.local_scale();
    std::vector<double> vals(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = t_min + dt * static_cast<double>(i);
        bool singular = false;
        for (std::size_t j = 0; j < ledger.removed.size(); ++j)
            if (std::fabs(t - ledger.removed[j].location) < hole) {
                vals[i] = eval_near_removed(ledger, t, j);
                singular = true;
                break;
            }
        if (singular) continue;
        double v;
        if (bump) {
            v = std::pow(table.value_at(t / arg_scale), ledger.base.power);
            for (const auto& a : ledger.added) v *= std::pow(linear_factor(a.location, t), a.multiplicity);
            for (const auto& r : ledger.removed) v /= std::pow(linear_factor(r.location, t), r.multiplicity);
        } else {
            v = numerator_value(ledger, t, {});
        }
        vals[i] = v;
    }
    return SampledSignal::from_values(t_min, dt, std::move(vals));
}

std::complex<double> hilbert_kernel_ft(double t1, double f) {
    if (f == 0.0) return {0.0, 0.0};
    const double s = f > 0.0 ? 1.0 : -1.0;
    const double phase = -2.0 * std::numbers::pi * f * t1;
    // -i pi s * e^{i phase}
    return std::complex<double>(0.0, -std::numbers::pi * s) *
           std::complex<double>(std::cos(phase), std::sin(phase));
}

double condition_diagnostic(const ZeroLedger& ledger) {
    std::vector<double> locs;
    for (const auto& a : ledger.added) locs.push_back(a.location);
    if (locs.size() < 2) return kInf;
    std::sort(locs.begin(), locs.end());
    double min_gap = kInf;
    for (std::size_t i = 1; i < locs.size(); ++i)
        min_gap = std::min(min_gap, locs[i] - locs[i - 1]);
    return min_gap * ledger.base.band_halfwidth();
}

}  // namespace superosc::zero_ops
