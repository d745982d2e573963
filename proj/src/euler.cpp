#include "superosc/euler.hpp"

#include <algorithm>
#include <cmath>

#include "superosc/specfun.hpp"

namespace superosc::euler {

int ZeroSet::degree() const {
    int d = 0;
    for (const auto& z : zeros) d += z.multiplicity;
    return d;
}

void ZeroSet::validate() const {
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        if (zeros[i].multiplicity < 1)
            throw std::invalid_argument("ZeroSet: multiplicity must be positive");
        if (i > 0 && !(zeros[i - 1].location < zeros[i].location))
            throw std::invalid_argument("ZeroSet: locations must be sorted and distinct");
    }
    if (symmetric) {
        // zeros must come in +/- pairs (or sit at 0); the sorted list pairs
        // its i-th entry with the mirrored one
        const std::size_t n = zeros.size();
        for (std::size_t i = 0; i < n; ++i) {
            const auto& z = zeros[i];
            if (z.location == 0.0) continue;
            const auto& m = zeros[n - 1 - i];
            if (m.location != -z.location || m.multiplicity != z.multiplicity)
                throw std::invalid_argument("ZeroSet: symmetric flag without +/- pairing");
        }
    }
}

ZeroSet ZeroSet::make(std::vector<Zero> zs, bool symmetric) {
    std::sort(zs.begin(), zs.end(), [](const Zero& a, const Zero& b) { return a.location < b.location; });
    ZeroSet out{std::move(zs), symmetric};
    out.validate();
    return out;
}

void CosineZeroParams::validate() const {
    if (!(f0 > 0.0)) throw std::invalid_argument("CosineZeroParams: f0 must be > 0");
    if (truncation < 1) throw std::invalid_argument("CosineZeroParams: N must be >= 1");
}

ZeroSet cosine_zeros(const CosineZeroParams& p) {
    p.validate();
    std::vector<Zero> zs;
    zs.reserve(2 * static_cast<std::size_t>(p.truncation));
    for (int n = p.truncation; n >= 1; --n)
        zs.push_back({-(2.0 * n - 1.0) / (4.0 * p.f0), 1});
    for (int n = 1; n <= p.truncation; ++n)
        zs.push_back({(2.0 * n - 1.0) / (4.0 * p.f0), 1});
    ZeroSet out{std::move(zs), true};
    out.validate();
    return out;
}

LogSigned product_direct(const ZeroSet& zs, double t) {
    double log_acc = 0.0;
    int sign = 1;
    for (const auto& z : zs.zeros) {
        double factor;
        if (z.location == 0.0) {
            factor = t;  // the linear factor for a zero at the origin is t itself
        } else {
            const double ratio = t / z.location;
            if (std::fabs(t - z.location) < 1e-12 * std::fabs(z.location)) return LogSigned::zero();
            factor = 1.0 - ratio;
        }
        if (factor == 0.0) return LogSigned::zero();
        if (factor < 0.0 && (z.multiplicity & 1)) sign = -sign;
        double lg;
        if (z.location != 0.0 && std::fabs(t / z.location) < 0.5)
            lg = std::log1p(-t / z.location);  // factor close to 1: keep full precision
        else
            lg = std::log(std::fabs(factor));
        log_acc += z.multiplicity * lg;
    }
    return LogSigned(sign, log_acc);
}

LogSigned product_gamma_form(const CosineZeroParams& p, double t) {
    p.validate();
    const double x = 2.0 * p.f0 * t;
    const double nh = p.truncation + 0.5;
    LogSigned ga, gb, gn;
    try {
        ga = specfun::log_gamma(nh - x);
        gb = specfun::log_gamma(nh + x);
        gn = specfun::log_gamma(nh);
    } catch (const std::domain_error& e) {
        throw GammaPoleError(e.what());
    }
    const double c = specfun::cos_pi(x);  // cos(2 pi f0 t)
    if (c == 0.0) return LogSigned::zero();
    const int sign = ga.sign * gb.sign * (c > 0.0 ? 1 : -1);
    const double lm = ga.log_mag + gb.log_mag - 2.0 * gn.log_mag + std::log(std::fabs(c));
    return LogSigned(sign, lm);
}

AsymptoticProduct product_asymptotic(const CosineZeroParams& p, double t) {
    p.validate();
    const double x = 2.0 * p.f0 * t;
    const double c = specfun::cos_pi(x);
    AsymptoticProduct out;
    out.in_validity_range = p.truncation >= 10.0 * p.f0 * std::fabs(t);
    if (c == 0.0) {
        out.value = LogSigned::zero();
        return out;
    }
    out.value = LogSigned(c > 0.0 ? 1 : -1,
                          x * x / (p.truncation + 0.5) + std::log(std::fabs(c)));
    return out;
}

}  // namespace superosc::euler
