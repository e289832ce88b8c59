#include "hdx/hvariate.hpp"
#include "hdx/gamma.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace hdx {
namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

hfunc make(order_seq o, double k, double c, std::vector<double> a, std::vector<double> b,
           std::vector<double> A, std::vector<double> B) {
    return hfunc{o, {k, c, std::move(a), std::move(b), std::move(A), std::move(B)}};
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

} // namespace

hfunc cdf_kernel() { return make({0, 1, 1, 1}, 1, 1, {1}, {0}, {1}, {1}); }
hfunc survival_step_kernel() { return inverse(cdf_kernel()); }
hfunc exp_kernel() { return make({1, 0, 0, 1}, 1, 1, {}, {0}, {}, {1}); }
hfunc log_kernel() { return make({2, 2, 2, 2}, 1, 1, {0, 0}, {0, 0}, {1, 1}, {1, 1}); }

struct h_variate::cache {
    std::mutex mu;
    std::optional<hfunc> cdf_law, surv_law, laplace_law;
    std::optional<double> kappa;
};

h_variate::h_variate()
    : law_(null_hfunc()), symmetric_(false), cache_(std::make_shared<cache>()) {}

h_variate::h_variate(hfunc law, bool symmetric, checking mode)
    : law_(std::move(law)), symmetric_(symmetric), cache_(std::make_shared<cache>()) {
    validation_report rep = validate(law_);
    bool need = mode == checking::density ? !rep.ok() : !rep.structure_ok;
    if (need) {
        std::string msg = "h_variate: invalid kernel";
        for (const auto& s : rep.issues) msg += "; " + s;
        throw std::invalid_argument(msg);
    }
}

const hfunc& h_variate::cdf_law() const {
    std::lock_guard lk(cache_->mu);
    if (!cache_->cdf_law)
        cache_->cdf_law = convolution_op(cdf_kernel(), hdx::conjugate(law_, 1.0));
    return *cache_->cdf_law;
}

const hfunc& h_variate::survival_law() const {
    std::lock_guard lk(cache_->mu);
    if (!cache_->surv_law)
        cache_->surv_law = convolution_op(survival_step_kernel(), hdx::conjugate(law_, 1.0));
    return *cache_->surv_law;
}

const hfunc& h_variate::laplace_law() const {
    std::lock_guard lk(cache_->mu);
    if (!cache_->laplace_law)
        cache_->laplace_law = mellin_op(exp_kernel(), law_);
    return *cache_->laplace_law;
}

double h_variate::pdf(double x, const eval_config& cfg) const {
    if (symmetric_)
        return 0.5 * eval_h(std::abs(x), law_, cfg);
    if (x < 0.0) return 0.0;
    return eval_h(x, law_, cfg);
}

double h_variate::cdf(double x, const eval_config& cfg) const {
    if (symmetric_) {
        if (x == 0.0) return 0.5;
        double half_mass = clamp01(eval_h(std::abs(x), cdf_law(), cfg));
        return clamp01(0.5 + (x > 0.0 ? 0.5 : -0.5) * half_mass);
    }
    // the one-sided cdf kernel has coinciding pole-family bounds at s = 0
    // (its constant term), so the survival kernel is the evaluable route
    if (x <= 0.0) return 0.0;
    return clamp01(1.0 - eval_h(x, survival_law(), cfg));
}

double h_variate::survival(double x, const eval_config& cfg) const {
    if (symmetric_) return 1.0 - cdf(x, cfg);
    if (x <= 0.0) return 1.0;
    return clamp01(eval_h(x, survival_law(), cfg));
}

double h_variate::tail_exponent() const {
    {
        std::lock_guard lk(cache_->mu);
        if (cache_->kappa) return *cache_->kappa;
    }
    double kappa;
    try {
        auto e = asymptotic_expansion(law_, expansion_side::near_infinity);
        kappa = -1.0 - e.exponent;
    } catch (const numeric_error&) {
        kappa = inf;  // essential decay: all moments exist
    }
    std::lock_guard lk(cache_->mu);
    cache_->kappa = kappa;
    return kappa;
}

algebraic_expansion h_variate::survival_tail() const {
    if (symmetric_)
        throw std::invalid_argument("survival_tail: one-sided variates only");
    return asymptotic_expansion(survival_law(), expansion_side::near_infinity);
}

std::optional<double> h_variate::absolute_moment(double ell, const eval_config&) const {
    if (ell >= tail_exponent() - 1e-12) return std::nullopt;
    if (ell < 0.0) {
        // negative orders exist down to the small-x exponent of the kernel;
        // kernels with no right pole family decay essentially at zero
        double floor_exp = inf;
        if (law_.ord.m > 0) {
            try {
                floor_exp = asymptotic_expansion(law_, expansion_side::near_zero).exponent;
            } catch (const numeric_error&) {
                floor_exp = 0.0;  // conservative when the structure is unclear
            }
        }
        if (std::isfinite(floor_exp) && ell <= -1.0 - floor_exp + 1e-12)
            return std::nullopt;
    }
    auto chi = detail::mellin_chi(law_, ell + 1.0);
    if (chi.unmatched_pole || chi.sign == 0) return std::nullopt;
    double lv = chi.log_abs + std::log(law_.par.k) - (ell + 1.0) * std::log(law_.par.c);
    return chi.sign * std::exp(lv);
}

std::optional<double> h_variate::moment(int ell, const eval_config& cfg) const {
    if (ell < 0) return std::nullopt;
    if (ell == 0) return 1.0;
    if (symmetric_ && ell % 2 == 1) return 0.0;  // odd moments vanish by symmetry
    return absolute_moment(double(ell), cfg);
}

double h_variate::mgf(double s, const eval_config& cfg) const {
    if (s == 0.0) return 1.0;
    auto decaying = [&](double u) {  // integral e^{-u t} H(t) dt, u > 0
        return eval_h(u, laplace_law(), cfg);
    };
    auto growing = [&](double u) {  // integral e^{+u t} H(t) dt, u > 0
        if (std::isfinite(tail_exponent()))
            throw numeric_error("mgf diverges: algebraic tail against a growing exponential");
        return integrate_positive_axis(
            [&](double t) { return std::exp(u * t) * eval_h(t, law_, cfg); }, cfg);
    };
    if (symmetric_) {
        double u = std::abs(s);
        return 0.5 * decaying(u) + 0.5 * growing(u);
    }
    return s < 0.0 ? decaying(-s) : growing(s);
}

double h_variate::log_moment(const eval_config& cfg) const {
    if (symmetric_)
        throw std::invalid_argument("log_moment requires a one-sided variate");
    auto g = [&](double t) { return (t - 1.0) * eval_h(t, law_, cfg); };
    return h_transform_numeric(g, 1.0, log_kernel(), cfg);
}

double h_variate::log_moment_analytic() const {
    if (symmetric_)
        throw std::invalid_argument("log_moment requires a one-sided variate");
    const auto& o = law_.ord;
    const auto& p = law_.par;
    double finite = -std::log(p.c);
    int unmatched = 0;
    auto add = [&](double u, double v, int sigma) {
        // factor sigma * lnGamma(u + v (s-1)) of ln chi(s), evaluated at s = 1
        if (std::abs(u) < 1e-9) {
            finite += -double(sigma) * euler_gamma * v;
            unmatched += sigma;
            return;
        }
        if (near_gamma_pole(u))
            throw numeric_error("digamma pole in the log-moment formula");
        finite += double(sigma) * v * digamma(u);
    };
    for (int j = 0; j < o.m; ++j) add(p.b[j] + p.B[j], p.B[j], +1);
    for (int j = 0; j < o.n; ++j) add(1.0 - p.a[j] - p.A[j], -p.A[j], +1);
    for (int j = o.n; j < o.p; ++j) add(p.a[j] + p.A[j], p.A[j], -1);
    for (int j = o.m; j < o.q; ++j) add(1.0 - p.b[j] - p.B[j], -p.B[j], -1);
    if (unmatched != 0)
        throw numeric_error("unbalanced gamma poles at s = 1; kernel is not normalized");
    return finite;
}

double h_variate::geometric_power(const eval_config& cfg) const {
    return std::exp(log_moment(cfg));
}

h_variate h_variate::scaled(double alpha) const {
    return h_variate(scale(law_, alpha), symmetric_, checking::kernel_only);
}

std::string h_variate::to_json() const {
    nlohmann::json j = nlohmann::json::parse(hdx::to_json(law_));
    j["symmetric"] = symmetric_;
    return j.dump();
}

h_variate h_variate::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    bool sym = j.at("symmetric").get<bool>();
    return h_variate(hfunc_from_json(text), sym, checking::kernel_only);
}

// ---------------------------------------------------------------------------
// stable laws
// ---------------------------------------------------------------------------

h_variate stable_to_h(const stable_params& sp, int sign_of_x) {
    const double a = sp.alpha;
    if (!(a > 0.0 && a <= 2.0))
        throw std::invalid_argument("stable_to_h: alpha must lie in (0, 2]");
    if (std::abs(sp.beta) > 1.0)
        throw std::invalid_argument("stable_to_h: beta must lie in [-1, 1]");
    if (!(sp.gamma > 0.0))
        throw std::invalid_argument("stable_to_h: dispersion must be positive");
    if (a == 1.0 && sp.beta != 0.0)
        throw std::invalid_argument(
            "unsupported: alpha = 1 with beta != 0 has no H-representation");

    double omega, theta;
    if (a == 1.0) {
        omega = 1.0 / sp.gamma;
        theta = 0.0;
    } else {
        double tg = std::tan(pi * a / 2.0);
        omega = std::pow(sp.gamma * std::sqrt(1.0 + sp.beta * sp.beta * tg * tg), -1.0 / a);
        theta = std::atan(sp.beta * tg) / (pi * a);
    }

    if (a < 1.0 && sp.beta == 1.0 && sp.mu == 0.0) {
        // nonnegative stable law
        return h_variate(
            make({0, 1, 1, 1}, omega / a, omega, {1.0 - 1.0 / a}, {0.0}, {1.0 / a}, {1.0}),
            false);
    }
    if (sp.beta == 0.0 && sp.mu == 0.0) {
        // symmetric law; k doubled so the kernel is the density of |x|
        return h_variate(make({1, 1, 2, 2}, 2.0 * omega / a, omega,
                              {1.0 - 1.0 / a, 0.5}, {0.0, 0.5},
                              {1.0 / a, 0.5}, {1.0, 0.5}),
                         true);
    }
    // sign-branch kernel: the density of x on the requested side of mu
    double s = sign_of_x >= 0 ? 1.0 : -1.0;
    return h_variate(make({1, 1, 2, 2}, omega / a, omega,
                          {1.0 - 1.0 / a, 0.5 - s * theta}, {0.0, 0.5 - s * theta},
                          {1.0 / a, 0.5 + s * theta}, {1.0, 0.5 + s * theta}),
                     false, h_variate::checking::kernel_only);
}

double stable_pdf(const stable_params& sp, double x, const eval_config& cfg) {
    double r = x - sp.mu;
    if (sp.beta == 0.0) {
        stable_params centered = sp;
        centered.mu = 0.0;
        return stable_to_h(centered).pdf(r, cfg);
    }
    stable_params centered = sp;
    centered.mu = 0.0;
    h_variate branch = stable_to_h(centered, r >= 0.0 ? +1 : -1);
    return eval_h(std::abs(r), branch.law(), cfg);
}

// ---------------------------------------------------------------------------
// M-Wright and Mittag-Leffler
// ---------------------------------------------------------------------------

h_variate mwright_variate(double nu, double beta2) {
    if (!(nu > 0.0 && nu < 1.0))
        throw std::invalid_argument("mwright_variate: nu must lie in (0, 1)");
    if (!(beta2 > 0.0))
        throw std::invalid_argument("mwright_variate: scale must be positive");
    hfunc f = make({1, 0, 1, 1}, 1, 1, {1.0 - nu}, {0.0}, {nu}, {1.0});
    return h_variate(scale(f, beta2), false);
}

double mwright_pdf(double nu, double t, const eval_config& cfg) {
    if (!(nu > 0.0 && nu < 1.0))
        throw std::invalid_argument("mwright_pdf: nu must lie in (0, 1)");
    if (t < 0.0)
        throw std::invalid_argument("mwright_pdf: t must be nonnegative");
    return eval_h(t, mwright_variate(nu).law(), cfg);
}

double mwright_pdf_series(double nu, double t) {
    if (t == 0.0) return 1.0 / gamma_fn(1.0 - nu);
    double sum = 0.0;
    const double log_t = std::log(t);
    for (int n = 0; n < 400; ++n) {
        double garg = -nu * n + (1.0 - nu);
        if (near_gamma_pole(garg)) continue;  // reciprocal gamma vanishes
        int sg;
        double lg = log_abs_gamma(garg, sg);
        double lt = double(n) * log_t - std::lgamma(double(n) + 1.0) - lg;
        double term = ((n % 2 == 0) ? 1.0 : -1.0) * sg * std::exp(lt);
        sum += term;
        if (n > 4 && std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

double mittag_leffler(double alpha, double beta, double t, const eval_config& cfg) {
    if (!(alpha > 0.0 && beta > 0.0))
        throw std::invalid_argument("mittag_leffler: alpha and beta must be positive");
    if (t == 0.0) return 1.0 / gamma_fn(beta);
    if (t > -5.0) {
        double sum = 0.0;
        const double log_abs_t = std::log(std::abs(t));
        for (int n = 0; n < 800; ++n) {
            double lt = double(n) * log_abs_t - std::lgamma(alpha * n + beta);
            if (lt > 690.0)
                throw numeric_error("mittag_leffler: series overflow for large positive argument");
            double term = std::exp(lt);
            if (t < 0.0 && n % 2 == 1) term = -term;
            sum += term;
            if (n > 3 && std::abs(term) < 1e-17 * (std::abs(sum) + 1e-300)) return sum;
        }
        return sum;
    }
    // large negative argument: Mellin-Barnes kernel at |t|
    hfunc f = make({1, 1, 1, 2}, 1, 1, {0.0}, {0.0, 1.0 - beta}, {1.0}, {1.0, alpha});
    return eval_h(-t, f, cfg);
}

h_variate mittag_leffler_variate(double nu) {
    if (!(nu > 0.0 && nu <= 1.0))
        throw std::invalid_argument("mittag_leffler_variate: nu must lie in (0, 1]");
    double inv = 1.0 / nu;
    hfunc f = make({1, 1, 1, 2}, inv, 1, {1.0 - inv}, {1.0 - inv, 0.0}, {inv}, {inv, 1.0});
    return h_variate(f, false);
}

} // namespace hdx
