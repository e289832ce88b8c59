#pragma once

#include <complex>

namespace hdx {

// Principal-branch log-gamma for complex arguments. Lanczos approximation
// with reflection for Re(z) < 0.5; relative accuracy ~1e-14 away from poles.
std::complex<double> log_gamma(std::complex<double> z);

// log|Gamma(x)| together with the sign of Gamma(x). `sign` is set to 0 when
// x is a pole (nonpositive integer).
double log_abs_gamma(double x, int& sign);

// Gamma(x) for real x, +/-inf at poles.
double gamma_fn(double x);

double digamma(double x);

// True when x is within `tol` of a nonpositive integer.
bool near_gamma_pole(double x, double tol = 1e-12);

inline constexpr double euler_gamma = 0.57721566490153286060651209;
// exp(euler_gamma), the unit of geometric power.
inline constexpr double exp_euler_gamma = 1.78107241799019798523650410;

} // namespace hdx
