#pragma once

#include "hdx/diffusion.hpp"

namespace hdx {

/// First-passage statistics of a diffusion to the absorbing level x = a.
struct noise_model {
    h_variate fpt;            // one-sided arrival-time law
    double distance;          // a, meters
    double kappa;             // polynomial tail constant
    double geometric_power;   // S, seconds
    double noise_power;       // N = S^2, seconds^2
};

/// The arrival-time kernel of the composed diffusion, fully scaled: the law
/// of the first time the particle started at 0 reaches distance a.
hfunc fpt_kernel(const diffusion_spec& spec, double a);
h_variate fpt_variate(const diffusion_spec& spec, double a);

/// Tail constant from the pole family of the composed position kernel:
/// kappa = omega1 omega2 min_j (1 + b_j / B_j) over the numerator b-pairs.
double tail_constant(const diffusion_spec& spec);
/// Standard-diffusion shortcut: omega1 omega2 when omega1 < 1, else omega2.
double tail_constant_shd(const shd_params& sp);

/// P(t > t0) evaluated through the survival H-kernel.
double survival(const noise_model& nm, double t0, const eval_config& cfg = {});

double noise_log_moment(const noise_model& nm, const eval_config& cfg = {});
double noise_geometric_power(const noise_model& nm, const eval_config& cfg = {});
double noise_power(const noise_model& nm, const eval_config& cfg = {});

/// Closed form of the arrival-time log moment for standard diffusion.
double log_moment_closed_shd(const shd_params& sp, double a);

/// Builds the model with kappa from the pole formula and S from the exact
/// derivative-of-moment route.
noise_model make_noise_model(const diffusion_spec& spec, double a);

/// A catalog row: kernel, self-similarity order omega, and the constant c in
/// the geometric power a^(1/omega) G^(1/omega - c).
struct noise_table_row {
    hfunc law;        // unscaled; the law of the arrival time is law<a^(1/omega)>
    double omega;
    double c;
    double geometric_power(double a) const;
    h_variate variate(double a) const;
};

/// Rows of the arrival-time catalog, keyed by the preset names. The s-fd row
/// describes the pure stable flight of index alpha (degenerate directing).
noise_table_row noise_preset_table(const std::string& name,
                                   const std::map<std::string, double>& params);

} // namespace hdx
