#include "hdx/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace hdx {
namespace {

constexpr double pi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr unsigned __int128 pcg_mult =
    (static_cast<unsigned __int128>(2549297995355413924ULL) << 64) | 4865540595714422341ULL;

} // namespace

rng_stream::rng_stream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
    std::uint64_t s = stream * 0xDA442D24691348AAULL + 0x8B2B5C4ABCD10057ULL;
    unsigned __int128 seq =
        (static_cast<unsigned __int128>(splitmix64(s)) << 64) | splitmix64(s);
    inc_ = (seq << 1) | 1;
    std::uint64_t t = seed;
    unsigned __int128 init =
        (static_cast<unsigned __int128>(splitmix64(t)) << 64) | splitmix64(t);
    state_ = 0;
    next_u64();
    state_ += init;
    next_u64();
}

std::uint64_t rng_stream::next_u64() {
    state_ = state_ * pcg_mult + inc_;
    std::uint64_t hi = static_cast<std::uint64_t>(state_ >> 64);
    std::uint64_t lo = static_cast<std::uint64_t>(state_);
    std::uint64_t xored = hi ^ lo;
    unsigned rot = static_cast<unsigned>(state_ >> 122);
    return (xored >> rot) | (xored << ((64u - rot) & 63u));
}

double rng_stream::uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

double rng_stream::uniform_pos() { return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

double rng_stream::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform_pos(), u2 = uniform_pos();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

double rng_stream::exponential() { return -std::log(uniform_pos()); }

// ---------------------------------------------------------------------------
// stable samplers
// ---------------------------------------------------------------------------

double sample_symmetric_stable(double alpha, double gamma, rng_stream& rng) {
    if (!(alpha > 0.0 && alpha <= 2.0) || !(gamma > 0.0))
        throw std::invalid_argument("sample_symmetric_stable: bad parameters");
    if (alpha == 2.0)
        return std::sqrt(2.0 * gamma) * rng.normal();  // cf exp(-gamma w^2)
    double th = pi * (rng.uniform_pos() - 0.5);
    if (alpha == 1.0)
        return gamma * std::tan(th);
    double w = rng.exponential();
    double x = std::sin(alpha * th) / std::pow(std::cos(th), 1.0 / alpha) *
               std::pow(std::cos(th - alpha * th) / w, (1.0 - alpha) / alpha);
    return std::pow(gamma, 1.0 / alpha) * x;
}

double sample_onesided_stable_unit(double alpha, rng_stream& rng) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("sample_onesided_stable: alpha must lie in (0, 1)");
    double u = pi * rng.uniform_pos();
    double w = rng.exponential();
    if (alpha == 0.5) {
        double c = std::cos(0.5 * u);
        return 1.0 / (4.0 * w * c * c);
    }
    double au = std::pow(std::sin(alpha * u), alpha / (1.0 - alpha)) *
                std::sin((1.0 - alpha) * u) /
                std::pow(std::sin(u), 1.0 / (1.0 - alpha));
    return std::pow(au / w, (1.0 - alpha) / alpha);
}

double sample_onesided_stable(double alpha, double gamma, rng_stream& rng) {
    if (!(gamma > 0.0))
        throw std::invalid_argument("sample_onesided_stable: dispersion must be positive");
    double scale = std::pow(gamma / std::cos(pi * alpha / 2.0), 1.0 / alpha);
    return scale * sample_onesided_stable_unit(alpha, rng);
}

double sample_mwright(double alpha2, double beta2, rng_stream& rng) {
    if (!(beta2 > 0.0))
        throw std::invalid_argument("sample_mwright: scale must be positive");
    if (alpha2 == 1.0) return beta2;  // degenerate directing law
    return beta2 * std::pow(sample_onesided_stable_unit(alpha2, rng), -alpha2);
}

double sample_mittag_leffler(double nu, rng_stream& rng) {
    if (!(nu > 0.0 && nu <= 1.0))
        throw std::invalid_argument("sample_mittag_leffler: nu must lie in (0, 1]");
    double e = rng.exponential();
    if (nu == 1.0) return e;
    return std::pow(e, 1.0 / nu) * sample_onesided_stable_unit(nu, rng);
}

double sample_parent(const diffusion_spec& spec, rng_stream& rng) {
    const auto& s = spec.samplers;
    switch (s.parent) {
        case sampler_info::parent_kind::symmetric_stable:
            return s.parent_scale * sample_symmetric_stable(s.parent_alpha, 1.0, rng);
        case sampler_info::parent_kind::gaussian_variance_two:
            return s.parent_scale * std::sqrt(2.0) * rng.normal();
    }
    throw std::logic_error("sample_parent: unreachable");
}

double sample_directing(const diffusion_spec& spec, rng_stream& rng) {
    const auto& s = spec.samplers;
    switch (s.directing) {
        case sampler_info::directing_kind::mwright:
            return sample_mwright(s.directing_index, s.directing_scale, rng);
        case sampler_info::directing_kind::onesided_stable:
            return s.directing_scale * sample_onesided_stable_unit(s.directing_index, rng);
        case sampler_info::directing_kind::degenerate:
            return s.directing_scale;
    }
    throw std::logic_error("sample_directing: unreachable");
}

double sample_position(const diffusion_spec& spec, double t, rng_stream& rng) {
    if (!(t > 0.0))
        throw std::invalid_argument("sample_position: time must be positive");
    double p = sample_parent(spec, rng);
    double d = sample_directing(spec, rng);
    return std::pow(t, spec.omega1 * spec.omega2) * p * std::pow(d, spec.omega1);
}

double sample_fpt(const diffusion_spec& spec, double a, rng_stream& rng) {
    if (!(a > 0.0))
        throw std::invalid_argument("sample_fpt: distance must be positive");
    double x1 = std::abs(sample_position(spec, 1.0, rng));
    return std::pow(a / x1, 1.0 / (spec.omega1 * spec.omega2));
}

// ---------------------------------------------------------------------------
// CTRW
// ---------------------------------------------------------------------------

ctrw_config make_ctrw_config(const diffusion_spec& spec, double a,
                             double jump_fraction, long max_steps) {
    if (!spec.shd)
        throw std::invalid_argument("make_ctrw_config: CTRW simulation needs an SHD spec");
    double K = spec.shd->diffusion_coefficient();
    double h = a * jump_fraction;
    double tau0 = std::pow(std::pow(h, spec.shd->alpha1) / K, 1.0 / spec.shd->alpha2);
    return {h, tau0, max_steps, a};
}

ctrw_sample simulate_fpt_ctrw(const diffusion_spec& spec, double a, const ctrw_config& cfg,
                              rng_stream& rng) {
    if (!spec.shd)
        throw std::invalid_argument("simulate_fpt_ctrw: CTRW simulation needs an SHD spec");
    const double a1 = spec.shd->alpha1, a2 = spec.shd->alpha2;
    double x = 0.0, t = 0.0;
    for (long step = 1; step <= cfg.max_steps; ++step) {
        t += cfg.wait_scale * sample_mittag_leffler(a2, rng);
        x += cfg.jump_scale * sample_symmetric_stable(a1, 1.0, rng);
        if (x >= a) return {t, false, step};
    }
    return {t, true, cfg.max_steps};
}

ctrw_batch simulate_fpt_batch(const diffusion_spec& spec, double a, const ctrw_config& cfg,
                              long walks, std::uint64_t seed) {
    ctrw_batch out;
    out.walks = walks;
    rng_stream rng(seed, 1);
    out.times.reserve(walks);
    for (long i = 0; i < walks; ++i) {
        ctrw_sample s = simulate_fpt_ctrw(spec, a, cfg, rng);
        if (s.censored)
            ++out.censored;
        else
            out.times.push_back(s.t);
    }
    return out;
}

// ---------------------------------------------------------------------------
// link simulation
// ---------------------------------------------------------------------------

sep_estimate simulate_sep(const link_config& cfg, long trials, rng_stream& rng) {
    if (trials < 1)
        throw std::invalid_argument("simulate_sep: at least one trial");
    const int m = cfg.modulation_order;
    const double slot = cfg.symbol_time / m;
    long errors = 0;
    for (long i = 0; i < trials; ++i) {
        int symbol = int(rng.next_u64() % std::uint64_t(m));
        double tmin = std::numeric_limits<double>::infinity();
        for (int k = 0; k < cfg.molecules; ++k)
            tmin = std::min(tmin, sample_fpt(cfg.spec, cfg.distance, rng));
        double y = symbol * slot + tmin;
        double cell = std::floor(y / slot);
        int decoded = cell >= double(m - 1) ? m - 1 : int(cell);
        if (decoded != symbol) ++errors;
    }
    sep_estimate est;
    est.trials = trials;
    est.errors = errors;
    est.p_hat = double(errors) / double(trials);
    est.sigma = std::sqrt(std::max(est.p_hat * (1.0 - est.p_hat), 1e-12) / double(trials));
    return est;
}

// ---------------------------------------------------------------------------
// aggregation and goodness of fit
// ---------------------------------------------------------------------------

double geometric_mean(std::span<const double> samples) {
    if (samples.empty())
        throw std::invalid_argument("geometric_mean: empty sample set");
    double acc = 0.0;
    for (double v : samples) {
        if (!(v > 0.0))
            throw std::invalid_argument("geometric_mean: nonpositive sample");
        acc += std::log(v);
    }
    return std::exp(acc / double(samples.size()));
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = double(samples.size());
    double d = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - double(i) / n));
        d = std::max(d, std::abs(f - double(i + 1) / n));
    }
    return d;
}

double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
    }
    return d;
}

std::function<double(double)> make_interpolated_cdf(const h_variate& v, int points,
                                                    const eval_config& cfg) {
    // table over |x| on a log grid; algebraic tail continued analytically
    const bool sym = v.symmetric();
    double kappa = v.tail_exponent();

    // locate the bulk: expand a window around the kernel scale 1/c
    double scale = 1.0 / v.law().par.c;
    double lo = scale, hi = scale;
    auto mass = [&](double x) {  // P(|X| <= x)
        return sym ? 2.0 * v.cdf(x, cfg) - 1.0 : v.cdf(x, cfg);
    };
    while (mass(lo) > 1e-8 && lo > scale * 1e-14) lo *= 0.25;
    double hi_target = std::isfinite(kappa) ? 1e-5 : 1e-10;
    while (1.0 - mass(hi) > hi_target && hi < scale * 1e14) hi *= 4.0;

    auto grid = std::make_shared<std::vector<double>>();
    auto vals = std::make_shared<std::vector<double>>();
    grid->reserve(points);
    vals->reserve(points);
    double prev = 0.0;
    for (int i = 0; i < points; ++i) {
        double x = lo * std::pow(hi / lo, double(i) / (points - 1));
        double f = std::max(prev, std::min(1.0, mass(x)));
        grid->push_back(std::log(x));
        vals->push_back(f);
        prev = f;
    }
    double tail_mass = 1.0 - vals->back();
    double tail_coeff = tail_mass * std::pow(hi, std::isfinite(kappa) ? kappa : 1.0);

    auto lookup = [grid, vals, lo, hi, kappa, tail_coeff](double ax) {
        if (ax <= lo) return vals->front() * (ax / lo);
        if (ax >= hi) {
            if (!std::isfinite(kappa)) return 1.0;
            return 1.0 - tail_coeff * std::pow(ax, -kappa);
        }
        double u = std::log(ax);
        auto it = std::upper_bound(grid->begin(), grid->end(), u);
        size_t k = std::max<size_t>(1, it - grid->begin()) - 1;
        size_t k1 = std::min(k + 1, grid->size() - 1);
        double w = k1 == k ? 0.0 : (u - (*grid)[k]) / ((*grid)[k1] - (*grid)[k]);
        return (*vals)[k] * (1.0 - w) + (*vals)[k1] * w;
    };
    if (!sym)
        return [lookup](double x) { return x <= 0.0 ? 0.0 : lookup(x); };
    return [lookup](double x) {
        if (x == 0.0) return 0.5;
        double m = lookup(std::abs(x));
        return x > 0.0 ? 0.5 + 0.5 * m : 0.5 - 0.5 * m;
    };
}

void run_streams(std::uint64_t seed, int streams,
                 const std::function<void(int, rng_stream&)>& fn) {
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    if (workers <= 1 || streams <= 1) {
        for (int s = 0; s < streams; ++s) {
            rng_stream rng(seed, std::uint64_t(s));
            fn(s, rng);
        }
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> cursor{0};
    for (unsigned w = 0; w < std::min<unsigned>(workers, streams); ++w) {
        pool.emplace_back([&] {
            for (int s = cursor.fetch_add(1); s < streams; s = cursor.fetch_add(1)) {
                rng_stream rng(seed, std::uint64_t(s));
                fn(s, rng);
            }
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace hdx
