#pragma once

// Independent numerical oracles for the test suite. Everything here avoids
// the library's Lanczos/Mellin-Barnes machinery on purpose: Stirling-series
// log-gamma in extended precision, plain adaptive Simpson quadrature, and
// closed-form reference densities.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

// log Gamma by argument raising + Stirling series, long double precision
inline std::complex<long double> log_gamma_stirling(std::complex<long double> z) {
    static const long double coef[] = {
        1.0L / 12, -1.0L / 360, 1.0L / 1260, -1.0L / 1680,
        1.0L / 1188, -691.0L / 360360, 1.0L / 156, -3617.0L / 122400,
    };
    std::complex<long double> shift = 0.0L;
    while (z.real() < 40.0L) {
        shift -= std::log(z);
        z += 1.0L;
    }
    const long double half_log_two_pi = 0.918938533204672741780329736406L;
    std::complex<long double> r =
        (z - 0.5L) * std::log(z) - z + half_log_two_pi;
    std::complex<long double> zp = z;
    for (long double c : coef) {
        r += c / zp;
        zp *= z * z;
    }
    return r + shift;
}

inline double gamma_stirling(double x) {
    if (x > 0.0)
        return double(std::exp(log_gamma_stirling(std::complex<long double>(x)).real()));
    // reflection
    long double s = std::sin(M_PIl * (long double)x);
    return double(M_PIl / (s * std::exp(log_gamma_stirling(
                               std::complex<long double>(1.0L - (long double)x))
                               .real())));
}

// adaptive Simpson on [a, b]
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double tol = 1e-10, int depth = 24) {
    struct impl {
        static double run(const std::function<double(double)>& f, double a, double m,
                          double b, double fa, double fm, double fb, double whole,
                          double tol, int depth) {
            double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            double flm = f(lm), frm = f(rm);
            double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
                return left + right + (left + right - whole) / 15.0;
            return run(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
                   run(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
        }
    };
    double m = 0.5 * (a + b), fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return impl::run(f, a, m, b, fa, fm, fb, whole, tol, depth);
}

// least-squares slope of y against x
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// reference laws
inline double gaussian_pdf(double x, double var) {
    return std::exp(-x * x / (2.0 * var)) / std::sqrt(2.0 * M_PI * var);
}
inline double levy_fpt_pdf(double a, double t) {
    return a / std::sqrt(4.0 * M_PI * t * t * t) * std::exp(-a * a / (4.0 * t));
}
inline double levy_fpt_cdf(double a, double t) {
    return t <= 0.0 ? 0.0 : std::erfc(a / (2.0 * std::sqrt(t)));
}

// 200-term Mittag-Leffler series in long double
inline double mittag_leffler_series(double alpha, double beta, double t) {
    long double sum = 0.0L, tp = 1.0L;
    for (int n = 0; n < 200; ++n) {
        long double g = std::exp(
            log_gamma_stirling(std::complex<long double>(alpha * n + beta)).real());
        sum += tp / g;
        tp *= (long double)t;
    }
    return double(sum);
}

} // namespace oracle
