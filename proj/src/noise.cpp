#include "hdx/noise.hpp"
#include "hdx/gamma.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hdx {
namespace {

constexpr double pi = std::numbers::pi;

hfunc make(order_seq o, double k, double c, std::vector<double> a, std::vector<double> b,
           std::vector<double> A, std::vector<double> B) {
    return hfunc{o, {k, c, std::move(a), std::move(b), std::move(A), std::move(B)}};
}

// arrival-time kernel from a composed position kernel with exponent w
hfunc fpt_from_position(const hfunc& pos, int m12, int n12, double w, double a) {
    const auto& p = pos.par;
    const int pp = pos.ord.p, qq = pos.ord.q;
    hfunc t;
    t.ord = {n12, m12, qq, pp};
    t.par.k = p.k / p.c;
    t.par.c = 1.0;
    t.par.a.resize(qq);
    t.par.A.resize(qq);
    for (int j = 0; j < qq; ++j) {
        t.par.a[j] = 1.0 - p.b[j] - p.B[j] - p.B[j] / w;
        t.par.A[j] = p.B[j] / w;
    }
    t.par.b.resize(pp);
    t.par.B.resize(pp);
    for (int j = 0; j < pp; ++j) {
        t.par.b[j] = 1.0 - p.a[j] - p.A[j] - p.A[j] / w;
        t.par.B[j] = p.A[j] / w;
    }
    return scale(t, std::pow(a * p.c, 1.0 / w));
}

} // namespace

hfunc fpt_kernel(const diffusion_spec& spec, double a) {
    if (!(a > 0.0))
        throw std::invalid_argument("fpt_kernel: distance must be positive");
    hfunc pos = position_kernel(spec);
    return fpt_from_position(pos, pos.ord.m, pos.ord.n, spec.omega1 * spec.omega2, a);
}

h_variate fpt_variate(const diffusion_spec& spec, double a) {
    return h_variate(fpt_kernel(spec, a), false, h_variate::checking::kernel_only);
}

double tail_constant(const diffusion_spec& spec) {
    hfunc pos = position_kernel(spec);
    double m = std::numeric_limits<double>::infinity();
    for (int j = 0; j < pos.ord.m; ++j)
        m = std::min(m, 1.0 + pos.par.b[j] / pos.par.B[j]);
    return spec.omega1 * spec.omega2 * m;
}

double tail_constant_shd(const shd_params& sp) {
    return sp.omega1 < 1.0 ? sp.omega1 * sp.omega2 : sp.omega2;
}

double survival(const noise_model& nm, double t0, const eval_config& cfg) {
    return nm.fpt.survival(t0, cfg);
}

double noise_log_moment(const noise_model& nm, const eval_config& cfg) {
    return nm.fpt.log_moment(cfg);
}

double noise_geometric_power(const noise_model& nm, const eval_config& cfg) {
    return nm.fpt.geometric_power(cfg);
}

double noise_power(const noise_model& nm, const eval_config& cfg) {
    double g = noise_geometric_power(nm, cfg);
    return g * g;
}

double log_moment_closed_shd(const shd_params& sp, double a) {
    double w = sp.omega1 * sp.omega2;
    double h = 1.0 - 1.0 / sp.alpha1 + (1.0 - sp.alpha2) * sp.omega1;
    return (h / w) * euler_gamma +
           std::log(a / (sp.beta1 * std::pow(sp.beta2, sp.omega1))) / w;
}

noise_model make_noise_model(const diffusion_spec& spec, double a) {
    noise_model nm{fpt_variate(spec, a), a, tail_constant(spec), 0.0, 0.0};
    nm.geometric_power = std::exp(nm.fpt.log_moment_analytic());
    nm.noise_power = nm.geometric_power * nm.geometric_power;
    return nm;
}

double noise_table_row::geometric_power(double a) const {
    return std::pow(a, 1.0 / omega) * std::pow(exp_euler_gamma, 1.0 / omega - c);
}

h_variate noise_table_row::variate(double a) const {
    return h_variate(scale(law, std::pow(a, 1.0 / omega)), false,
                     h_variate::checking::kernel_only);
}

noise_table_row noise_preset_table(const std::string& name,
                                   const std::map<std::string, double>& params) {
    auto get = [&](const char* key) {
        auto it = params.find(key);
        if (it == params.end())
            throw std::invalid_argument("noise table " + name + ": missing parameter '" +
                                        key + "'");
        return it->second;
    };
    const double sq_pi = std::sqrt(pi);
    if (name == "st-fd") {
        double al = get("alpha"), be = get("beta");
        return {make({1, 2, 3, 3}, 2.0 / al, 1.0,
                     {-1.0 / be, -al / be, -al / (2.0 * be)},
                     {-1.0 / be, -al / (2.0 * be), -1.0},
                     {1.0 / be, al / be, al / (2.0 * be)},
                     {1.0 / be, al / (2.0 * be), 1.0}),
                be / al, 1.0};
    }
    if (name == "s-fd") {
        double al = get("alpha");
        return {make({1, 1, 2, 2}, 2.0 / al, 1.0, {-al, -al / 2.0}, {-1.0, -al / 2.0},
                     {al, al / 2.0}, {1.0, al / 2.0}),
                1.0 / al, 1.0};
    }
    if (name == "t-fd") {
        double be = get("beta");
        return {make({0, 1, 1, 1}, 1.0, 1.0, {-2.0 / be}, {-1.0}, {2.0 / be}, {1.0}),
                be / 2.0, 1.0};
    }
    if (name == "ek-fd") {
        double al = get("alpha"), be = get("beta");
        double f = std::pow(4.0, 1.0 / al);
        return {make({0, 2, 2, 1}, f / sq_pi, f, {-1.0 / al, 0.5 - 1.0 / al}, {-be / al},
                     {1.0 / al, 1.0 / al}, {be / al}),
                al / 2.0, be / al};
    }
    if (name == "gbm") {
        double be = get("beta");
        double f = std::pow(4.0, 1.0 / be);
        return {make({0, 2, 2, 1}, f / sq_pi, f, {-1.0 / be, 0.5 - 1.0 / be}, {-1.0},
                     {1.0 / be, 1.0 / be}, {1.0}),
                be / 2.0, 1.0};
    }
    if (name == "fbm") {
        double al = get("alpha");
        double f = std::pow(4.0, 1.0 / al);
        return {make({0, 1, 1, 0}, f / sq_pi, f, {0.5 - 1.0 / al}, {}, {1.0 / al}, {}),
                al / 2.0, 1.0 / al};
    }
    if (name == "bm") {
        return {make({0, 1, 1, 0}, 4.0 / sq_pi, 4.0, {-0.5}, {}, {1.0}, {}), 0.5, 1.0};
    }
    throw std::invalid_argument("unknown noise table row '" + name + "'");
}

} // namespace hdx
