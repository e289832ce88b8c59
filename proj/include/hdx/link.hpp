#pragma once

#include <functional>

#include "hdx/noise.hpp"

namespace hdx {

/// Timing-modulation link: M-ary release times i Ts / M, N molecules per
/// symbol, first-arrival detection at the absorber.
struct link_config {
    int modulation_order;   // M >= 2
    int molecules;          // N >= 1
    double symbol_time;     // Ts, seconds
    double distance;        // a, meters
    diffusion_spec spec;
};

struct first_arrival {
    std::function<double(double)> cdf;  // 1 - (1 - F)^N
    std::function<double(double)> pdf;  // N f (1 - F)^(N-1)
};

first_arrival first_arrival_distribution(const noise_model& nm, int molecules,
                                         const eval_config& cfg = {});

/// First-arrival union bound ((M-1)/M) S(Ts/M)^N through the survival kernel.
double sep_upper_bound(const link_config& cfg, const eval_config& ecfg = {});

/// SNR = (Ts / S)^2 / (2 G).
double snr_of(const link_config& cfg);
double ts_for_snr(double snr, double geometric_power);

/// The standard-diffusion error kernel evaluated at M^2/(2 G* SNR), with
/// G* = G^(2(1 - 1/alpha1 + (1 - alpha2) omega1)/(omega1 omega2) + 1).
hfunc sep_kernel_shd(const shd_params& sp);
double gstar(const shd_params& sp);
double sep_upper_bound_shd(const shd_params& sp, int modulation_order, int molecules,
                           double snr, const eval_config& ecfg = {});

struct high_snr_expansion {
    double slope;         // s_inf = N min(omega2, omega1 omega2)/2
    double power_offset;  // p_inf = (1/g)^(1/s_inf)
    double gain_constant; // g(M, N)
    bool low_branch;      // true when omega1 < 1
};

/// High-SNR behaviour of the standard-diffusion error bound. omega1 = 1 and
/// the gamma-pole combination (omega1 > 1 with alpha2 = 1) are rejected.
high_snr_expansion high_snr(const shd_params& sp, int modulation_order, int molecules);

} // namespace hdx
