#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hdx/link.hpp"

namespace hdx {

/// Counter-free PCG64 (XSL-RR 128/64). Identical (seed, stream) pairs give
/// bitwise-identical sequences; distinct streams are independent generators.
class rng_stream {
  public:
    explicit rng_stream(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();
    /// uniform on [0, 1) with 53 random bits
    double uniform();
    /// uniform on the open interval (0, 1)
    double uniform_pos();
    double normal();
    double exponential();

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

  private:
    unsigned __int128 state_;
    unsigned __int128 inc_;
    std::uint64_t seed_, stream_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// ---- exact samplers ---------------------------------------------------------

/// Symmetric stable draw with characteristic function exp(-gamma |w|^alpha).
double sample_symmetric_stable(double alpha, double gamma, rng_stream& rng);

/// One-sided stable draw, 0 < alpha < 1, with the dispersion-gamma law of the
/// canonical characteristic function (Laplace exp(-gamma sec(pi alpha/2) s^alpha)).
double sample_onesided_stable(double alpha, double gamma, rng_stream& rng);

/// One-sided stable with unit Laplace transform exp(-s^alpha).
double sample_onesided_stable_unit(double alpha, rng_stream& rng);

/// M-Wright directing draw: beta2 * s^(-alpha2) for a unit one-sided stable s.
double sample_mwright(double alpha2, double beta2, rng_stream& rng);

/// Mittag-Leffler waiting time of order nu, unit scale: E^(1/nu) * s.
double sample_mittag_leffler(double nu, rng_stream& rng);

double sample_parent(const diffusion_spec& spec, rng_stream& rng);
double sample_directing(const diffusion_spec& spec, rng_stream& rng);

/// Exact position draw t^(w1 w2) p(1) d(1)^(w1).
double sample_position(const diffusion_spec& spec, double t, rng_stream& rng);

/// Exact arrival-time draw through the survival identity
/// t = (a / |x(1)|)^(1/(w1 w2)).
double sample_fpt(const diffusion_spec& spec, double a, rng_stream& rng);

// ---- CTRW path simulation ---------------------------------------------------

struct ctrw_config {
    double jump_scale;    // h
    double wait_scale;    // tau0; h^alpha1 / tau0^alpha2 = K
    long max_steps;
    double boundary;      // a
};

/// Scales chosen so that h = a * jump_fraction and the diffusive-limit
/// identification h^alpha1 / tau0^alpha2 = K holds. The defaults keep the
/// discretization bias inside the validation gates at < 1% censoring.
ctrw_config make_ctrw_config(const diffusion_spec& spec, double a,
                             double jump_fraction = 1.0 / 45.0,
                             long max_steps = 8000000);

struct ctrw_sample {
    double t = 0.0;
    bool censored = false;
    long steps = 0;
};

/// Random walk with symmetric alpha1-stable jumps and Mittag-Leffler(alpha2)
/// waits; the crossing is the first landing at x >= a.
ctrw_sample simulate_fpt_ctrw(const diffusion_spec& spec, double a,
                              const ctrw_config& cfg, rng_stream& rng);

struct ctrw_batch {
    std::vector<double> times;  // uncensored arrivals
    long censored = 0;
    long walks = 0;
};

ctrw_batch simulate_fpt_batch(const diffusion_spec& spec, double a, const ctrw_config& cfg,
                              long walks, std::uint64_t seed);

// ---- link-level simulation --------------------------------------------------

struct sep_estimate {
    double p_hat = 0.0;
    double sigma = 0.0;  // binomial standard error
    long trials = 0;
    long errors = 0;
};

/// Draws a symbol, N exact arrival times, first-arrival decoding against the
/// fixed thresholds i Ts / M.
sep_estimate simulate_sep(const link_config& cfg, long trials, rng_stream& rng);

// ---- aggregation and goodness of fit ---------------------------------------

double geometric_mean(std::span<const double> samples);

/// Kolmogorov-Smirnov distance between samples and a reference CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);
double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b);

/// Tabulated CDF of a variate on a log grid with analytic algebraic-tail
/// continuation; cheap enough to call once per sample in KS tests.
std::function<double(double)> make_interpolated_cdf(const h_variate& v,
                                                    int points = 1025,
                                                    const eval_config& cfg = {});

/// Deterministic multi-stream driver: runs fn(stream_id, rng) for each stream
/// (threaded when hardware allows) and preserves stream order in the merge.
void run_streams(std::uint64_t seed, int streams,
                 const std::function<void(int, rng_stream&)>& fn);

} // namespace hdx
