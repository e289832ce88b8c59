#pragma once

#include <memory>
#include <optional>

#include "hdx/eval.hpp"
#include "hdx/params.hpp"

namespace hdx {

// Fixed kernels used by the distribution constructions.
hfunc cdf_kernel();          // step kernel: H(y) = 1 for y <= 1, else 0
hfunc survival_step_kernel();// inverse of cdf_kernel: indicator of y <= 1... H(y)=1 on (0,1]
hfunc exp_kernel();          // H(y) = exp(-y)
hfunc log_kernel();          // H(y) = ln(y)/(y - 1)

/// A distribution whose (absolute-value) density is an H-function kernel.
/// Symmetric variates have pdf(y) = H(|y|)/2; one-sided variates live on
/// x > 0. Immutable; derived kernels and statistics are memoized and safe
/// under concurrent readers.
class h_variate {
  public:
    enum class checking { density, kernel_only };

    /// The degenerate point mass at 1 (the null kernel).
    h_variate();
    h_variate(hfunc law, bool symmetric, checking mode = checking::density);

    const hfunc& law() const { return law_; }
    bool symmetric() const { return symmetric_; }

    double pdf(double x, const eval_config& cfg = {}) const;
    double cdf(double x, const eval_config& cfg = {}) const;
    double survival(double x, const eval_config& cfg = {}) const;

    /// Closed-form gamma-ratio moment. Odd moments of symmetric variates are
    /// exactly zero; nonexistent moments come back empty.
    std::optional<double> moment(int ell, const eval_config& cfg = {}) const;
    /// Same formula at real order (moments of |x|), for derivative checks.
    std::optional<double> absolute_moment(double ell, const eval_config& cfg = {}) const;

    /// E[exp(s x)]. Throws numeric_error when the transform diverges.
    double mgf(double s, const eval_config& cfg = {}) const;

    /// E[ln x] through the H-transform of (t-1) pdf(t) against the log kernel.
    double log_moment(const eval_config& cfg = {}) const;
    /// E[ln x] as d/dl E[x^l] at l = 0, evaluated with digamma sums.
    double log_moment_analytic() const;

    double geometric_power(const eval_config& cfg = {}) const;

    /// Polynomial tail constant: moments of order ell exist iff ell < kappa.
    /// +inf for kernels with essential decay.
    double tail_exponent() const;

    /// Leading algebraic term of the survival function, P(x > t) ~ c t^e.
    algebraic_expansion survival_tail() const;

    h_variate scaled(double alpha) const;

    std::string to_json() const;
    static h_variate from_json(const std::string& text);

  private:
    hfunc law_;
    bool symmetric_;
    struct cache;
    std::shared_ptr<cache> cache_;
    const hfunc& cdf_law() const;
    const hfunc& survival_law() const;
    const hfunc& laplace_law() const;
};

// ---------------------------------------------------------------------------
// stable laws (H-representations) and the appendix special functions
// ---------------------------------------------------------------------------

struct stable_params {
    double alpha;  // characteristic exponent, (0, 2]
    double beta;   // skewness, [-1, 1]
    double gamma;  // dispersion, >= 0
    double mu;     // location
};

/// H-representation of a stable law. beta = 0 yields a symmetric variate;
/// 0 < alpha < 1, beta = 1, mu = 0 yields the one-sided density; other
/// parameter sets yield the sign-branch kernel for the requested side of mu.
/// alpha = 1 with beta != 0 has no known H-form and is rejected.
h_variate stable_to_h(const stable_params& sp, int sign_of_x = +1);

/// Stable density at x, assembling sign branches as needed.
double stable_pdf(const stable_params& sp, double x, const eval_config& cfg = {});

/// M-Wright density M_nu(t) on t >= 0, via its H-kernel.
double mwright_pdf(double nu, double t, const eval_config& cfg = {});
/// Power-series route, kept as an independent regression path.
double mwright_pdf_series(double nu, double t);
/// One-sided M-Wright law (directing density), scale beta2.
h_variate mwright_variate(double nu, double beta2 = 1.0);

/// Generalized Mittag-Leffler E_{alpha,beta}(t): series for small |t|,
/// H-kernel quadrature for large negative t. Large positive arguments that
/// overflow are reported.
double mittag_leffler(double alpha, double beta, double t, const eval_config& cfg = {});

/// The Mittag-Leffler waiting-time law of order nu (unit scale): the
/// heavy-tailed generalization of the exponential distribution.
h_variate mittag_leffler_variate(double nu);

} // namespace hdx
