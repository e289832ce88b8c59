#include "hdx/diffusion.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace hdx {
namespace {

constexpr double pi = std::numbers::pi;

hfunc make(order_seq o, double k, double c, std::vector<double> a, std::vector<double> b,
           std::vector<double> A, std::vector<double> B) {
    return hfunc{o, {k, c, std::move(a), std::move(b), std::move(A), std::move(B)}};
}

// parent kernel of the stable family rows: the |p(1)| density of a unit
// symmetric alpha-stable law
hfunc stable_parent_kernel(double alpha) {
    return make({1, 1, 2, 2}, 2.0 / alpha, 1.0, {1.0 - 1.0 / alpha, 0.5}, {0.0, 0.5},
                {1.0 / alpha, 0.5}, {1.0, 0.5});
}

// the |p(1)| density of the Gaussian rows (variance-two law)
hfunc gaussian_parent_kernel() {
    return make({1, 0, 0, 1}, 0.5 / std::sqrt(pi), 0.5, {}, {0.0}, {}, {0.5});
}

hfunc mwright_directing_kernel(double beta) {
    return make({1, 0, 1, 1}, 1.0, 1.0, {1.0 - beta}, {0.0}, {beta}, {1.0});
}

void check_range(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

diffusion_spec with_samplers(diffusion_spec s, sampler_info::parent_kind pk, double pa,
                             double ps, sampler_info::directing_kind dk, double di,
                             double ds) {
    s.samplers = {pk, pa, ps, dk, di, ds};
    return s;
}

} // namespace

h_process subordinate(const h_process& parent, const h_process* directing) {
    if (directing == nullptr || is_null(directing->law1.law()))
        return parent;  // delta directing law leaves the parent unchanged
    double w1 = parent.omega;
    hfunc composed = convolution_op(
        parent.law1.law(), elementary(directing->law1.law(), 1.0, w1, 1.0 / w1 - 1.0));
    return h_process{h_variate(composed, parent.law1.symmetric(),
                               h_variate::checking::kernel_only),
                     w1 * directing->omega};
}

hfunc position_kernel(const diffusion_spec& spec) {
    const h_process* d = spec.directing ? &*spec.directing : nullptr;
    return subordinate(spec.parent, d).law1.law();
}

h_variate position_variate(const diffusion_spec& spec, double t) {
    if (!(t > 0.0))
        throw std::invalid_argument("position_variate: time must be positive");
    double w = spec.omega1 * spec.omega2;
    return h_variate(scale(position_kernel(spec), std::pow(t, w)), true,
                     h_variate::checking::kernel_only);
}

double msd_exponent(const diffusion_spec& spec) { return 2.0 * spec.omega1 * spec.omega2; }

msd_class msd_classify(const diffusion_spec& spec) {
    double w = spec.omega1 * spec.omega2;
    if (std::abs(w - 0.5) < 1e-12) return msd_class::normal_diffusion;
    return w < 0.5 ? msd_class::subdiffusion : msd_class::superdiffusion;
}

diffusion_spec make_shd(double alpha1, double alpha2, double omega1, double omega2,
                        double beta1, double beta2) {
    check_range(alpha1 > 0.0 && alpha1 <= 2.0, "make_shd: alpha1 must lie in (0, 2]");
    check_range(alpha2 > 0.0 && alpha2 <= 1.0, "make_shd: alpha2 must lie in (0, 1]");
    check_range(omega1 > 0.0 && omega2 > 0.0 && beta1 > 0.0 && beta2 > 0.0,
                "make_shd: exponents and scales must be positive");
    diffusion_spec s;
    s.name = "shd";
    s.parent = {h_variate(scale(stable_parent_kernel(alpha1), beta1), true), omega1};
    if (alpha2 == 1.0) {
        s.directing = std::nullopt;  // M-Wright law degenerates to the delta mass
        // keep beta2 in force through the directing scale of sampling/scaling:
        // d(1) = beta2 exactly when alpha2 = 1
        s.parent.law1 = s.parent.law1.scaled(std::pow(beta2, omega1));
    } else {
        s.directing = {{h_variate(scale(mwright_directing_kernel(alpha2), beta2), false),
                        omega2}};
    }
    s.omega1 = omega1;
    s.omega2 = omega2;
    s.shd = shd_params{alpha1, alpha2, omega1, omega2, beta1, beta2};
    return with_samplers(std::move(s), sampler_info::parent_kind::symmetric_stable, alpha1,
                         beta1,
                         alpha2 == 1.0 ? sampler_info::directing_kind::degenerate
                                       : sampler_info::directing_kind::mwright,
                         alpha2, beta2);
}

diffusion_spec make_shd_pair(double alpha1, double alpha2, double K) {
    check_range(K > 0.0, "make_shd_pair: diffusion coefficient must be positive");
    double beta1 = std::pow(K, 1.0 / alpha1);
    diffusion_spec s = make_shd(alpha1, alpha2, 1.0 / alpha1, alpha2, beta1, 1.0);
    s.name = "shd-pair";
    return s;
}

diffusion_spec preset_st_fd(double alpha, double beta) {
    check_range(alpha > 0.0 && alpha <= 2.0, "st-fd: alpha must lie in (0, 2]");
    check_range(beta > 0.0 && beta < 1.0, "st-fd: beta must lie in (0, 1)");
    diffusion_spec s;
    s.name = "st-fd";
    s.parent = {h_variate(stable_parent_kernel(alpha), true), 1.0 / alpha};
    s.directing = {{h_variate(mwright_directing_kernel(beta), false), beta}};
    s.omega1 = 1.0 / alpha;
    s.omega2 = beta;
    return with_samplers(std::move(s), sampler_info::parent_kind::symmetric_stable, alpha,
                         1.0, sampler_info::directing_kind::mwright, beta, 1.0);
}

diffusion_spec preset_s_fd(double alpha, double beta) {
    check_range(alpha > 0.0 && alpha <= 2.0, "s-fd: alpha must lie in (0, 2]");
    check_range(beta > 0.0 && beta < 1.0, "s-fd: beta must lie in (0, 1)");
    double cb = std::cos(pi * beta / 2.0);
    diffusion_spec s;
    s.name = "s-fd";
    s.parent = {h_variate(stable_parent_kernel(alpha), true), 1.0 / alpha};
    // one-sided beta-stable directing law, scaled as printed in the catalog
    hfunc d = make({0, 1, 1, 1}, std::pow(cb, beta) / beta, std::pow(cb, beta),
                   {1.0 - 1.0 / beta}, {0.0}, {1.0 / beta}, {1.0});
    s.directing = {{h_variate(d, false), 1.0 / beta}};
    s.omega1 = 1.0 / alpha;
    s.omega2 = 1.0 / beta;
    return with_samplers(std::move(s), sampler_info::parent_kind::symmetric_stable, alpha,
                         1.0, sampler_info::directing_kind::onesided_stable,
                         beta, std::pow(cb, -beta));
}

diffusion_spec preset_t_fd(double beta) {
    check_range(beta > 0.0 && beta < 1.0, "t-fd: beta must lie in (0, 1)");
    diffusion_spec s;
    s.name = "t-fd";
    s.parent = {h_variate(mwright_directing_kernel(0.5), true), 0.5};
    s.directing = {{h_variate(mwright_directing_kernel(beta), false), beta}};
    s.omega1 = 0.5;
    s.omega2 = beta;
    return with_samplers(std::move(s), sampler_info::parent_kind::gaussian_variance_two, 2.0,
                         1.0, sampler_info::directing_kind::mwright, beta, 1.0);
}

diffusion_spec preset_ek_fd(double alpha, double beta) {
    check_range(alpha > 0.0 && alpha <= 2.0, "ek-fd: alpha must lie in (0, 2]");
    check_range(beta > 0.0 && beta < 1.0, "ek-fd: beta must lie in (0, 1)");
    diffusion_spec s;
    s.name = "ek-fd";
    s.parent = {h_variate(gaussian_parent_kernel(), true), 0.5};
    s.directing = {{h_variate(mwright_directing_kernel(beta), false), alpha}};
    s.omega1 = 0.5;
    s.omega2 = alpha;
    return with_samplers(std::move(s), sampler_info::parent_kind::gaussian_variance_two, 2.0,
                         1.0, sampler_info::directing_kind::mwright, beta, 1.0);
}

diffusion_spec preset_gbm(double beta) {
    check_range(beta > 0.0 && beta < 1.0, "gbm: beta must lie in (0, 1)");
    diffusion_spec s;
    s.name = "gbm";
    s.parent = {h_variate(gaussian_parent_kernel(), true), 0.5};
    s.directing = {{h_variate(mwright_directing_kernel(beta), false), beta}};
    s.omega1 = 0.5;
    s.omega2 = beta;
    return with_samplers(std::move(s), sampler_info::parent_kind::gaussian_variance_two, 2.0,
                         1.0, sampler_info::directing_kind::mwright, beta, 1.0);
}

diffusion_spec preset_fbm(double alpha) {
    check_range(alpha > 0.0 && alpha <= 2.0, "fbm: alpha must lie in (0, 2]");
    diffusion_spec s;
    s.name = "fbm";
    s.parent = {h_variate(gaussian_parent_kernel(), true), alpha / 2.0};
    s.directing = std::nullopt;
    s.omega1 = alpha / 2.0;
    s.omega2 = 1.0;
    return with_samplers(std::move(s), sampler_info::parent_kind::gaussian_variance_two, 2.0,
                         1.0, sampler_info::directing_kind::degenerate, 1.0, 1.0);
}

diffusion_spec preset_bm() {
    diffusion_spec s = preset_fbm(1.0);
    s.name = "bm";
    return s;
}

diffusion_spec preset(const std::string& name, const std::map<std::string, double>& params) {
    auto get = [&](const char* key) {
        auto it = params.find(key);
        if (it == params.end())
            throw std::invalid_argument("preset " + name + ": missing parameter '" + key + "'");
        return it->second;
    };
    if (name == "st-fd") return preset_st_fd(get("alpha"), get("beta"));
    if (name == "s-fd") return preset_s_fd(get("alpha"), get("beta"));
    if (name == "t-fd") return preset_t_fd(get("beta"));
    if (name == "ek-fd") return preset_ek_fd(get("alpha"), get("beta"));
    if (name == "gbm") return preset_gbm(get("beta"));
    if (name == "fbm") return preset_fbm(get("alpha"));
    if (name == "bm") return preset_bm();
    throw std::invalid_argument("unknown preset '" + name + "'");
}

std::string to_json(const diffusion_spec& spec) {
    nlohmann::json j;
    j["name"] = spec.name;
    j["parent"] = nlohmann::json::parse(spec.parent.law1.to_json());
    j["directing"] = spec.directing
                         ? nlohmann::json::parse(spec.directing->law1.to_json())
                         : nlohmann::json(nullptr);
    j["omega1"] = spec.omega1;
    j["omega2"] = spec.omega2;
    j["msd_exponent"] = msd_exponent(spec);
    if (spec.shd) {
        j["shd"] = {{"alpha1", spec.shd->alpha1}, {"alpha2", spec.shd->alpha2},
                    {"beta1", spec.shd->beta1},   {"beta2", spec.shd->beta2},
                    {"K", spec.shd->diffusion_coefficient()}};
    }
    return j.dump();
}

} // namespace hdx
