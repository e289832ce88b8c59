#pragma once

#include <map>
#include <optional>
#include <string>

#include "hdx/hvariate.hpp"

namespace hdx {

/// Self-similar process: law at t equals the t = 1 law rescaled by t^omega.
struct h_process {
    h_variate law1;
    double omega = 1.0;
    h_variate law_at(double t) const { return law1.scaled(std::pow(t, omega)); }
};

/// How to draw exact samples of the parent / directing laws at t = 1.
struct sampler_info {
    enum class parent_kind { symmetric_stable, gaussian_variance_two };
    enum class directing_kind { mwright, onesided_stable, degenerate };
    parent_kind parent = parent_kind::gaussian_variance_two;
    double parent_alpha = 2.0;   // stable index
    double parent_scale = 1.0;   // multiplies the unit draw
    directing_kind directing = directing_kind::degenerate;
    double directing_index = 1.0;
    double directing_scale = 1.0;
};

struct shd_params {
    double alpha1, alpha2, omega1, omega2, beta1, beta2;
    double diffusion_coefficient() const { return std::pow(beta1, alpha1) * beta2; }
};

/// A diffusion: symmetric parent plus a one-sided directing process, or a
/// degenerate (delta) directing law for the fractional/ordinary Brownian
/// family.
struct diffusion_spec {
    std::string name;
    h_process parent;
    std::optional<h_process> directing;  // nullopt: delta directing law
    double omega1, omega2;               // omega2 = 1 for the degenerate family
    std::optional<shd_params> shd;
    sampler_info samplers;
};

/// Subordination composition: the subordinated process is again an H-process
/// with exponent omega1*omega2; a degenerate directing law returns the parent.
h_process subordinate(const h_process& parent, const h_process* directing);

/// The composed law of the position at t = 1 (no time scaling applied).
hfunc position_kernel(const diffusion_spec& spec);

/// The particle position at time t as a symmetric H-variate.
h_variate position_variate(const diffusion_spec& spec, double t);

enum class msd_class { subdiffusion, normal_diffusion, superdiffusion };
double msd_exponent(const diffusion_spec& spec);  // 2 omega1 omega2
msd_class msd_classify(const diffusion_spec& spec);

diffusion_spec make_shd(double alpha1, double alpha2, double omega1, double omega2,
                        double beta1, double beta2);
/// The (alpha1, alpha2)-SHD shorthand: omega1 = 1/alpha1, omega2 = alpha2,
/// beta1 beta2^omega1 = K^(1/alpha1).
diffusion_spec make_shd_pair(double alpha1, double alpha2, double K);

// Preset catalog, one constructor per table row so each parameter keeps the
// meaning it has in that row.
diffusion_spec preset_st_fd(double alpha, double beta);
diffusion_spec preset_s_fd(double alpha, double beta);
diffusion_spec preset_t_fd(double beta);
diffusion_spec preset_ek_fd(double alpha, double beta);
diffusion_spec preset_gbm(double beta);
diffusion_spec preset_fbm(double alpha);
diffusion_spec preset_bm();

/// Name + named-parameter dispatcher for the CLI.
diffusion_spec preset(const std::string& name, const std::map<std::string, double>& params);

std::string to_json(const diffusion_spec& spec);

} // namespace hdx
