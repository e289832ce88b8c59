#include "hdx/gamma.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace hdx {
namespace {

using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

// Godfrey's 15-term Lanczos coefficients, g = 607/128.
constexpr double lanczos_g = 4.7421875;
constexpr double lanczos_c[15] = {
    0.99999999999999709182,
    57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,     -0.49191381609762019978,
    0.33994649984811888699e-4, 0.46523628927048575665e-4,
    -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3,
    -0.16431810653676389022e-3, 0.84418223983852743293e-4,
    -0.26190838401581408670e-4, 0.36899182659531622704e-5,
};

constexpr double half_log_two_pi = 0.91893853320467274178032974;

cd log_gamma_lanczos(cd z) {
    // valid for Re(z) >= 0.5
    cd zm1 = z - 1.0;
    cd sum = lanczos_c[0];
    for (int i = 1; i < 15; ++i)
        sum += lanczos_c[i] / (zm1 + static_cast<double>(i));
    cd t = zm1 + lanczos_g + 0.5;
    return (zm1 + 0.5) * std::log(t) - t + half_log_two_pi + std::log(sum);
}

// log(sin(pi z)) stable for large |Im z|.
cd log_sin_pi(cd z) {
    cd w = pi * z;
    double y = w.imag();
    if (std::abs(y) < 20.0)
        return std::log(std::sin(w));
    // sin w = -e^{-iw}(1 - e^{2iw})/(2i) for Im w > 0, mirrored otherwise
    if (y > 0.0) {
        cd r = cd(0.0, -1.0) * w + std::log(1.0 - std::exp(cd(0.0, 2.0) * w));
        return r - std::log(cd(0.0, 2.0)) + cd(0.0, pi);
    }
    cd r = cd(0.0, 1.0) * w + std::log(1.0 - std::exp(cd(0.0, -2.0) * w));
    return r - std::log(cd(0.0, -2.0)) + cd(0.0, pi);
}

} // namespace

std::complex<double> log_gamma(std::complex<double> z) {
    if (z.real() >= 0.5)
        return log_gamma_lanczos(z);
    // reflection: log G(z) = log pi - log sin(pi z) - log G(1 - z)
    return std::log(pi) - log_sin_pi(z) - log_gamma_lanczos(1.0 - z);
}

bool near_gamma_pole(double x, double tol) {
    if (x > tol) return false;
    return std::abs(x - std::round(x)) <= tol;
}

double log_abs_gamma(double x, int& sign) {
    if (near_gamma_pole(x)) {
        sign = 0;
        return std::numeric_limits<double>::infinity();
    }
    if (x > 0.0) {
        sign = 1;
        return log_gamma_lanczos(cd(x, 0.0)).real();
    }
    // Gamma(x) = pi / (sin(pi x) Gamma(1-x))
    double s = std::sin(pi * x);
    sign = s > 0.0 ? 1 : -1;
    return std::log(pi) - std::log(std::abs(s)) - log_gamma_lanczos(cd(1.0 - x, 0.0)).real();
}

double gamma_fn(double x) {
    int sign = 0;
    double lg = log_abs_gamma(x, sign);
    if (sign == 0)
        return std::numeric_limits<double>::infinity();
    return sign * std::exp(lg);
}

double digamma(double x) {
    if (near_gamma_pole(x))
        return std::numeric_limits<double>::infinity();
    if (x < 0.0)
        return digamma(1.0 - x) - pi / std::tan(pi * x);
    double acc = 0.0;
    while (x < 8.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    // asymptotic series with B_2..B_14
    double inv = 1.0 / x, inv2 = inv * inv;
    double series = std::log(x) - 0.5 * inv
        - inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0
        - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32760.0
        - inv2 * (1.0 / 12.0)))))));
    return acc + series;
}

} // namespace hdx
