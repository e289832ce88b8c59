#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

#include "hdx/params.hpp"

namespace hdx {

/// Thrown when an evaluation cannot meet its contract (non-convergence,
/// empty contour strip, divergent transform, pole hit, ...).
class numeric_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct eval_config {
    double rel_tolerance = 1e-10;
    int max_quadrature_nodes = 400000;
    // NaN selects the contour abscissa automatically.
    double contour_offset = std::numeric_limits<double>::quiet_NaN();
    int series_term_cap = 4096;
    // When nonempty, quadrature nodes are appended to this CSV file.
    std::string diag_csv;
};

/// theta(s): the Mellin-Barnes integrand of the kernel, without k and c.
/// Throws numeric_error when s hits a numerator gamma pole; the message
/// names the offending sequence and index.
std::complex<double> mellin_barnes_integrand(std::complex<double> s, const hfunc& f);

/// k * H(c x). x = 0 is admitted only as a right limit when the near-zero
/// expansion exponent permits.
double eval_h(double x, const hfunc& f, const eval_config& cfg = {});

enum class expansion_side { near_zero, near_infinity };

/// Leading algebraic behaviour k*H(c x) ~ coefficient * x^exponent on the
/// requested side. Poles whose residue vanishes are skipped; a repeated
/// dominant pole (logarithmic case) is reported as an error.
struct algebraic_expansion {
    double exponent = 0.0;
    double coefficient = 0.0;
    expansion_side side = expansion_side::near_zero;
};

algebraic_expansion asymptotic_expansion(const hfunc& f, expansion_side side,
                                         const eval_config& cfg = {});

/// k * integral_0^inf H(c s t) f(t) dt by adaptive quadrature in log t.
/// Divergent integrands (kernel tail exponent >= -1 against a non-decaying f)
/// are detected and reported.
double h_transform_numeric(const std::function<double(double)>& f, double s,
                           const hfunc& kernel, const eval_config& cfg = {});

/// integral_0^inf g(t) dt with the same adaptive engine (the unit-kernel
/// case of the transform). Used for normalization checks.
double integrate_positive_axis(const std::function<double(double)>& g,
                               const eval_config& cfg = {});

/// Numeric density diagnostics: nonnegativity on a probe grid and unit mass
/// within `tol`. Extends a structural validate() report.
validation_report validate_density(const hfunc& f, double tol = 1e-6,
                                   const eval_config& cfg = {});

namespace detail {
// sum_B - sum_A; positive means the ascending series converges everywhere.
double series_mu(const hfunc& f);
// Radius separating ascending/descending convergence when series_mu == 0.
double series_radius(const hfunc& f);
// delta > 0 guarantees exponential decay of the contour integrand.
double contour_decay(const hfunc& f);

// chi(s): the Mellin transform of the bare kernel, evaluated with matched
// numerator/denominator pole pairs resolved by their limit. sign == 0 means
// the value vanishes; unmatched_pole flags a genuine pole of chi.
struct signed_log {
    double log_abs = 0.0;
    int sign = 1;
    bool unmatched_pole = false;
};
signed_log mellin_chi(const hfunc& f, double s);
} // namespace detail

} // namespace hdx
