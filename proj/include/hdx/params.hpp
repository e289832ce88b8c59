#pragma once

#include <string>
#include <vector>

namespace hdx {

/// Order sequence (m, n, p, q) of a Fox H-function.
struct order_seq {
    int m = 0, n = 0, p = 0, q = 0;
    friend bool operator==(const order_seq&, const order_seq&) = default;
};

/// Parameter sequence (k, c, a, b, A, B). The first n entries of a/A and the
/// first m entries of b/B belong to the numerator gamma products; the split
/// indices live in the companion order_seq.
struct param_seq {
    double k = 1.0;
    double c = 1.0;
    std::vector<double> a, b, A, B;
    friend bool operator==(const param_seq&, const param_seq&) = default;
};

/// An order/parameter pair; the unit of account for the whole calculus.
struct hfunc {
    order_seq ord;
    param_seq par;
    friend bool operator==(const hfunc&, const hfunc&) = default;
};

/// The null pair: evaluating it yields the Dirac mass at x = 1.
hfunc null_hfunc();
bool is_null(const hfunc& f);

// ---- unary operations on (O, P) ------------------------------------------

/// P<alpha>: the law of alpha*x when x has law P. alpha > 0.
hfunc scale(const hfunc& f, double alpha);

/// <gamma|P: multiplies the evaluated function by x^gamma.
hfunc conjugate(const hfunc& f, double gamma);

/// E(alpha, beta, gamma)P: H_E(x) = (1/beta) x^gamma H_P(alpha x^(1/beta)).
/// alpha, beta > 0.
hfunc elementary(const hfunc& f, double alpha, double beta, double gamma);

/// (O^-1, P^-1): H_inv(x) = H(1/x). An involution.
hfunc inverse(const hfunc& f);

/// Density of 1/x when x has density H_P: inverse of <2|P.
hfunc reciprocal_density(const hfunc& f);

// ---- binary operations ----------------------------------------------------

/// Mellin pairing: H_result(s) = integral_0^inf H_f(s t) H_g(t) dt.
hfunc mellin_op(const hfunc& f, const hfunc& g);

/// Mellin convolution: the density of x*y for independent H-variates.
hfunc convolution_op(const hfunc& f, const hfunc& g);

// ---- validation ------------------------------------------------------------

struct validation_report {
    bool structure_ok = false;       // counts, lengths, positivity
    bool pole_separation_ok = false; // left pole family strictly left of right family
    bool density_checked = false;    // numeric check was requested and ran
    bool density_ok = false;         // nonnegative and unit mass within tolerance
    double integral = 0.0;           // numeric mass when checked
    std::vector<std::string> issues;
    bool ok() const {
        return structure_ok && pole_separation_ok && (!density_checked || density_ok);
    }
};

/// Structural diagnostics: lengths, A/B positivity, c > 0, pole separation.
validation_report validate(const hfunc& f);

// ---- bounds of the pole families -------------------------------------------

/// Largest left pole (a_j - 1)/A_j over j < n; -inf when n = 0.
double left_pole_bound(const hfunc& f);
/// Smallest right pole b_j/B_j over j < m; +inf when m = 0.
double right_pole_bound(const hfunc& f);

// ---- serialization ----------------------------------------------------------

/// JSON text {k, c, a[], b[], A[], B[], m, n, p, q}; round-trips bit-exactly.
std::string to_json(const hfunc& f);
hfunc hfunc_from_json(const std::string& text);

} // namespace hdx
