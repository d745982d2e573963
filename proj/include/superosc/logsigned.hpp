#pragma once

#include <cmath>
#include <limits>

namespace superosc {

// A real number stored as (sign, ln|x|) so that products spanning hundreds of
// decades (Euler products at large N versus envelope tails near 1e-300) never
// leave the representable range. sign == 0 encodes an exact zero; log_mag is
// meaningless in that case.
struct LogSigned {
    int sign = 0;
    double log_mag = -std::numeric_limits<double>::infinity();

    LogSigned() = default;
    LogSigned(int s, double lm) : sign(s), log_mag(s == 0 ? -std::numeric_limits<double>::infinity() : lm) {}

    static LogSigned zero() { return LogSigned(); }
    static LogSigned one() { return LogSigned(1, 0.0); }

    static LogSigned from_value(double v) {
        if (v == 0.0) return zero();
        return LogSigned(v > 0.0 ? 1 : -1, std::log(std::fabs(v)));
    }

    bool is_zero() const { return sign == 0; }

    // May overflow to +/-inf or underflow to 0; that is the caller's problem.
    double value() const {
        if (sign == 0) return 0.0;
        return sign * std::exp(log_mag);
    }

    double log10_mag() const { return log_mag / 2.302585092994045684; }

    LogSigned& operator*=(const LogSigned& o) {
        if (sign == 0 || o.sign == 0) { *this = zero(); return *this; }
        sign *= o.sign;
        log_mag += o.log_mag;
        return *this;
    }
    LogSigned& operator/=(const LogSigned& o) {
        if (o.sign == 0) { sign = 0; log_mag = std::numeric_limits<double>::quiet_NaN(); return *this; }
        if (sign == 0) return *this;
        sign *= o.sign;
        log_mag -= o.log_mag;
        return *this;
    }

    friend LogSigned operator*(LogSigned a, const LogSigned& b) { return a *= b; }
    friend LogSigned operator/(LogSigned a, const LogSigned& b) { return a /= b; }
    friend LogSigned operator-(LogSigned a) { a.sign = -a.sign; return a; }

    // x^e for integer e; sign follows parity.
    LogSigned pow_int(int e) const {
        if (sign == 0) return e == 0 ? one() : zero();
        return LogSigned((e % 2 == 0) ? 1 : sign, log_mag * e);
    }

    friend bool abs_less(const LogSigned& a, const LogSigned& b) {
        if (a.sign == 0) return b.sign != 0;
        if (b.sign == 0) return false;
        return a.log_mag < b.log_mag;
    }
};

}  // namespace superosc
