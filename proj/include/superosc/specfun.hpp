#pragma once

#include "superosc/logsigned.hpp"

namespace superosc::specfun {

// sin(pi*x) / cos(pi*x) with exact zeros at (half-)integers. Range reduction
// happens on x itself, so the zeros of the Euler cosine factor and of sinc
// land on exact 0.0 instead of ~1e-16 noise.
double sin_pi(double x);
double cos_pi(double x);

// ln|Gamma(x)| with the sign of Gamma(x). Lanczos approximation for
// x >= 0.5, reflection below. Throws std::domain_error at the poles
// x = 0, -1, -2, ...
LogSigned log_gamma(double x);

// Gamma(x) as a plain double; overflows to +/-inf past x ~ 171.6.
double gamma(double x);

// Euler beta function, computed through log_gamma so that large arguments
// do not overflow. Returns 0 when Gamma(x+y) sits on a pole while x and y
// do not; throws std::domain_error when x or y is itself a pole.
double beta(double x, double y);

// Bessel function of the first kind, real order > -1, x >= 0.
// Power series below the switchover |x| = 20, Hankel asymptotic expansion
// above; the two branches agree to ~1e-11 in the overlap band.
double bessel_j(double order, double x);

namespace detail {
// The two bessel_j branches, exposed so the overlap band can be cross-checked.
double bessel_j_series(double order, double x);
double bessel_j_asymptotic(double order, double x);
}  // namespace detail

// sinc(t) = sin(pi t)/(pi t), sinc(0) = 1, exact zeros at nonzero integers.
double sinc(double t);

// 1 on |x| < 1/2, 1/2 on the boundary, 0 outside.
double rect(double x);

// -1, 0, +1.
double sign(double x);

}  // namespace superosc::specfun
