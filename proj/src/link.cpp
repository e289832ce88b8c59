#include "hdx/link.hpp"
#include "hdx/gamma.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hdx {
namespace {

constexpr double pi = std::numbers::pi;

void check_cfg(const link_config& cfg) {
    if (cfg.modulation_order < 2)
        throw std::invalid_argument("link: modulation order must be at least 2");
    if (cfg.molecules < 1)
        throw std::invalid_argument("link: at least one molecule per symbol");
    if (!(cfg.symbol_time > 0.0) || !(cfg.distance > 0.0))
        throw std::invalid_argument("link: symbol time and distance must be positive");
}

} // namespace

first_arrival first_arrival_distribution(const noise_model& nm, int molecules,
                                         const eval_config& cfg) {
    if (molecules < 1)
        throw std::invalid_argument("first_arrival_distribution: N >= 1 required");
    h_variate fpt = nm.fpt;
    int n = molecules;
    return {
        [fpt, n, cfg](double t) {
            double s = fpt.survival(t, cfg);
            return 1.0 - std::pow(s, n);
        },
        [fpt, n, cfg](double t) {
            double s = fpt.survival(t, cfg);
            return double(n) * fpt.pdf(t, cfg) * std::pow(s, n - 1);
        },
    };
}

double sep_upper_bound(const link_config& cfg, const eval_config& ecfg) {
    check_cfg(cfg);
    const double m = cfg.modulation_order;
    h_variate fpt = fpt_variate(cfg.spec, cfg.distance);
    double s = fpt.survival(cfg.symbol_time / m, ecfg);
    return (m - 1.0) / m * std::pow(s, cfg.molecules);
}

double snr_of(const link_config& cfg) {
    check_cfg(cfg);
    noise_model nm = make_noise_model(cfg.spec, cfg.distance);
    double r = cfg.symbol_time / nm.geometric_power;
    return r * r / (2.0 * exp_euler_gamma);
}

double ts_for_snr(double snr, double geometric_power) {
    if (!(snr > 0.0))
        throw std::invalid_argument("ts_for_snr: SNR must be positive");
    return geometric_power * std::sqrt(2.0 * exp_euler_gamma * snr);
}

double gstar(const shd_params& sp) {
    double w = sp.omega1 * sp.omega2;
    double h = 1.0 - 1.0 / sp.alpha1 + (1.0 - sp.alpha2) * sp.omega1;
    return std::pow(exp_euler_gamma, 2.0 * h / w + 1.0);
}

hfunc sep_kernel_shd(const shd_params& sp) {
    double w = sp.omega1 * sp.omega2;
    hfunc f;
    f.ord = {2, 2, 4, 4};
    f.par.k = 4.0 / sp.alpha1;
    f.par.c = 1.0;
    f.par.a = {1.0, 1.0, 1.0, 1.0};
    f.par.b = {1.0, 1.0, 1.0, 0.0};
    f.par.A = {2.0, 2.0 / (sp.alpha1 * w), 1.0 / w, 2.0 * sp.alpha2 / sp.omega2};
    f.par.B = {2.0 / sp.omega2, 2.0 / w, 1.0 / w, 2.0};
    return f;
}

double sep_upper_bound_shd(const shd_params& sp, int modulation_order, int molecules,
                           double snr, const eval_config& ecfg) {
    if (modulation_order < 2 || molecules < 1)
        throw std::invalid_argument("sep_upper_bound_shd: invalid M or N");
    const double m = modulation_order;
    double arg = m * m / (2.0 * gstar(sp) * snr);
    double h = eval_h(arg, sep_kernel_shd(sp), ecfg);
    return (m - 1.0) / m * std::pow(h, molecules);
}

high_snr_expansion high_snr(const shd_params& sp, int modulation_order, int molecules) {
    if (modulation_order < 2 || molecules < 1)
        throw std::invalid_argument("high_snr: invalid M or N");
    const double w1 = sp.omega1, w2 = sp.omega2, w = w1 * w2;
    if (std::abs(w1 - 1.0) < 1e-12)
        throw std::invalid_argument("high_snr: omega1 = 1 is outside both branches");

    double sigma_star;
    bool low = w1 < 1.0;
    if (low) {
        // Gamma(1 - alpha2 omega1) is regular here: alpha2 omega1 < 1
        sigma_star = gamma_fn(1.0 - w1) * gamma_fn(1.0 / sp.alpha1) /
                     (2.0 * pi * gamma_fn(1.0 - sp.alpha2 * w1));
    } else {
        if (near_gamma_pole(1.0 - sp.alpha2))
            throw std::invalid_argument(
                "high_snr: Gamma(1 - alpha2) pole at alpha2 = 1 with omega1 > 1; "
                "the expansion does not exist for this combination");
        sigma_star = std::sin(pi / (2.0 * w1)) * gamma_fn(1.0 - 1.0 / w1) *
                     gamma_fn(1.0 / (sp.alpha1 * w1)) /
                     (2.0 * pi * gamma_fn(1.0 - sp.alpha2));
    }

    const double m = modulation_order;
    const double n = molecules;
    double omega_star = 0.5 * std::min(w2, w);
    double s_inf = n * omega_star;
    // g = ((M-1)/M) (4 sigma*/alpha1)^N M^{2 N omega*} (2 G*)^{-N omega*}
    double g = (m - 1.0) / m * std::pow(4.0 * sigma_star / sp.alpha1, n) *
               std::pow(m, 2.0 * n * omega_star) *
               std::pow(2.0 * gstar(sp), -n * omega_star);
    double p_inf = std::pow(1.0 / g, 1.0 / s_inf);
    return {s_inf, p_inf, g, low};
}

} // namespace hdx
