#pragma once

#include <cstddef>
#include <vector>

#include "superosc/logsigned.hpp"

namespace superosc {

// Uniformly sampled real signal, the common currency of the spectral and
// yield analyses. Two channels: native doubles where the magnitude allows
// (|log10| <= 150, so squares stay finite), and a (sign, log10) channel that
// is always filled. native_ok flags which channel is authoritative.
struct SampledSignal {
    double t0 = 0.0;
    double dt = 1.0;
    std::vector<double> values;
    std::vector<signed char> log_sign;
    std::vector<double> log10_mag;
    std::vector<unsigned char> native_ok;
    bool rate_warning = false;  // fewer than 8 samples per 1/f0

    static constexpr double kNativeLog10Limit = 150.0;

    std::size_t size() const { return values.size(); }
    double time_at(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
    double t_end() const { return time_at(values.empty() ? 0 : values.size() - 1); }

    bool fully_native() const {
        for (auto f : native_ok)
            if (!f) return false;
        return true;
    }

    void push_back(const LogSigned& v) {
        const double l10 = v.log10_mag();
        const bool native = v.is_zero() || (l10 <= kNativeLog10Limit && l10 >= -kNativeLog10Limit);
        values.push_back(native ? v.value() : 0.0);
        log_sign.push_back(static_cast<signed char>(v.sign));
        log10_mag.push_back(l10);
        native_ok.push_back(native ? 1 : 0);
    }

    static SampledSignal from_values(double t0, double dt, std::vector<double> vals) {
        SampledSignal s;
        s.t0 = t0;
        s.dt = dt;
        s.values = std::move(vals);
        s.log_sign.reserve(s.values.size());
        s.log10_mag.reserve(s.values.size());
        s.native_ok.assign(s.values.size(), 1);
        for (double v : s.values) {
            const LogSigned ls = LogSigned::from_value(v);
            s.log_sign.push_back(static_cast<signed char>(ls.sign));
            s.log10_mag.push_back(ls.log10_mag());
        }
        return s;
    }
};

}  // namespace superosc
