#include "hdx/eval.hpp"
#include "hdx/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <vector>

namespace hdx {
namespace {

using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

// environment-gated tracing, resolved once per process
bool debug_flag(const char* name) {
    static const struct flags_t {
        bool series, contour, path, transform;
        flags_t()
            : series(std::getenv("HDX_DEBUG_SERIES") != nullptr),
              contour(std::getenv("HDX_DEBUG_CONTOUR") != nullptr),
              path(std::getenv("HDX_DEBUG_PATH") != nullptr),
              transform(std::getenv("HDX_DEBUG_TRANSFORM") != nullptr) {}
    } flags;
    switch (name[10]) {
        case 'S': return flags.series;
        case 'C': return flags.contour;
        case 'P': return flags.path;
        default: return flags.transform;
    }
}

// ---------------------------------------------------------------------------
// theta(s) and its punctured variants
// ---------------------------------------------------------------------------

cd log_theta(cd s, const hfunc& f) {
    const auto& o = f.ord;
    const auto& p = f.par;
    cd acc = 0.0;
    for (int j = 0; j < o.m; ++j) acc += log_gamma(p.b[j] - p.B[j] * s);
    for (int j = 0; j < o.n; ++j) acc += log_gamma(1.0 - p.a[j] + p.A[j] * s);
    for (int j = o.m; j < o.q; ++j) acc -= log_gamma(1.0 - p.b[j] + p.B[j] * s);
    for (int j = o.n; j < o.p; ++j) acc -= log_gamma(p.a[j] - p.A[j] * s);
    return acc;
}

// log|theta(s)| at real s with the gamma factor (skip_right / skip_left)
// removed. Pole collisions between numerator and denominator factors are
// resolved by their limit ratio; an unmatched numerator pole is reported.
struct theta_star_t {
    double log_abs = 0.0;
    int sign = 1;            // 0 marks a vanishing value (denominator pole)
    bool unmatched_pole = false;  // leftover numerator pole: logarithmic case
    // numerator factors at a pole, matched away by denominator poles; a
    // right/left count > 0 means other streams of that family share this
    // pole location and would report the identical residue
    int collided_right = 0;
    int collided_left = 0;
};

theta_star_t theta_star(double s, const hfunc& f, int skip_right, int skip_left) {
    const auto& o = f.ord;
    const auto& p = f.par;
    theta_star_t r;
    struct collided { long k; double slope; };
    std::vector<collided> num_poles, den_poles;

    auto numerator = [&](double arg, double slope, int& family_count) {
        if (near_gamma_pole(arg, 1e-9)) {
            num_poles.push_back({std::lround(-arg), slope});
            ++family_count;
            return;
        }
        int sg;
        r.log_abs += log_abs_gamma(arg, sg);
        r.sign *= sg;
    };
    auto denominator = [&](double arg, double slope) {
        if (near_gamma_pole(arg, 1e-9)) {
            den_poles.push_back({std::lround(-arg), slope});
            return;
        }
        int sg;
        r.log_abs -= log_abs_gamma(arg, sg);
        r.sign *= sg;
    };

    for (int j = 0; j < o.m; ++j)
        if (j != skip_right) numerator(p.b[j] - p.B[j] * s, -p.B[j], r.collided_right);
    for (int j = 0; j < o.n; ++j)
        if (j != skip_left) numerator(1.0 - p.a[j] + p.A[j] * s, p.A[j], r.collided_left);
    for (int j = o.m; j < o.q; ++j) denominator(1.0 - p.b[j] + p.B[j] * s, p.B[j]);
    for (int j = o.n; j < o.p; ++j) denominator(p.a[j] - p.A[j] * s, -p.A[j]);

    if (num_poles.size() > den_poles.size()) {
        r.unmatched_pole = true;
        return r;
    }
    if (num_poles.size() < den_poles.size()) {
        r.sign = 0;
        return r;
    }
    // matched pairs: lim Gamma(-k_n + u f'_n)/Gamma(-k_d + u f'_d)
    //              = (-1)^(k_n+k_d) (k_d!/k_n!) (f'_d/f'_n)
    for (size_t i = 0; i < num_poles.size(); ++i) {
        const auto& nn = num_poles[i];
        const auto& dd = den_poles[i];
        r.log_abs += std::lgamma(double(dd.k) + 1.0) - std::lgamma(double(nn.k) + 1.0);
        r.log_abs += std::log(std::abs(dd.slope)) - std::log(std::abs(nn.slope));
        if ((nn.k + dd.k) % 2 != 0) r.sign = -r.sign;
        if (dd.slope * nn.slope < 0.0) r.sign = -r.sign;
    }
    return r;
}

// ---------------------------------------------------------------------------
// residue series
// ---------------------------------------------------------------------------

struct series_out {
    bool ok = false;
    double value = 0.0;
};

// side = +1: ascending over right poles; side = -1: descending over left poles.
// In asymptotic mode the (divergent) series is summed to its optimal
// truncation and accepted only when the truncation gauge meets the tolerance.
series_out residue_series(double y, const hfunc& f, int side, const eval_config& cfg,
                          bool asymptotic = false) {
    const auto& o = f.ord;
    const auto& p = f.par;
    const int streams = side > 0 ? o.m : o.n;
    if (streams == 0) return {};
    const double log_y = std::log(y);

    double sum = 0.0, max_abs = 0.0;
    double prev_round = inf, min_round = inf, first_round = 0.0;
    int used = 0, quiet_rounds = 0;
    for (long nu = 0;; ++nu) {
        double round_abs = 0.0, round_sum = 0.0;
        for (int j = 0; j < streams; ++j) {
            double s, slope;
            if (side > 0) {
                s = (p.b[j] + double(nu)) / p.B[j];
                slope = p.B[j];
            } else {
                s = (p.a[j] - 1.0 - double(nu)) / p.A[j];
                slope = p.A[j];
            }
            theta_star_t ts = side > 0 ? theta_star(s, f, j, -1) : theta_star(s, f, -1, j);
            if (ts.unmatched_pole) return {};  // genuine repeated pole: series invalid
            if (ts.sign == 0) continue;
            // streams sharing a (simple) pole each see the full residue;
            // split it evenly so the merged sum counts it once
            double multiplicity = 1.0 + double(side > 0 ? ts.collided_right
                                                         : ts.collided_left);
            double lt = -std::lgamma(double(nu) + 1.0) - std::log(slope)
                        + ts.log_abs + s * log_y - std::log(multiplicity);
            if (lt > 690.0) return {};
            double term = ((nu % 2 == 0) ? 1.0 : -1.0) * ts.sign * std::exp(lt);
            round_sum += term;
            round_abs += std::abs(term);
        }
        if (debug_flag("HDX_DEBUG_SERIES") && round_abs > 0.0)
            std::fprintf(stderr, "[series %+d] nu=%ld round_abs=%.3e sum=%.6e\n", side,
                         nu, round_abs, sum);
        if (asymptotic && round_abs > 0.0 && round_abs > prev_round) {
            // smallest-term truncation; the dropped round gauges the error
            if (round_abs > 0.5 * cfg.rel_tolerance * std::abs(sum)) return {};
            break;
        }
        if (first_round == 0.0) first_round = round_abs;
        // distributional kernels never need terms 30 orders above the leading
        // one; such growth marks a cancellation regime doubles cannot sum
        if (!asymptotic && round_abs > 1e30 * first_round) return {};
        sum += round_sum;
        if (!std::isfinite(sum) || !std::isfinite(round_abs)) return {};
        max_abs = std::max(max_abs, round_abs);
        if (round_abs > 0.0) {
            prev_round = round_abs;
            min_round = std::min(min_round, round_abs);
        }
        used += streams;
        if (used > cfg.series_term_cap) {
            if (!asymptotic) return {};
            if (min_round > 0.5 * cfg.rel_tolerance * std::abs(sum)) return {};
            break;
        }
        if (nu >= 2 && round_abs <= 0.1 * cfg.rel_tolerance * std::abs(sum))
            ++quiet_rounds;
        else
            quiet_rounds = 0;
        if (quiet_rounds >= 3) break;
    }
    if (sum == 0.0) return {};
    if (max_abs > 1e8 * std::abs(sum)) return {};  // cancellation ate the digits
    return {true, sum};
}

// ---------------------------------------------------------------------------
// contour quadrature
// ---------------------------------------------------------------------------

// 15-point Kronrod extension of 7-point Gauss on [-1, 1].
constexpr double gk_x[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0, 0.207784955007898, 0.405845151377397,
    0.586087235467691, 0.741531185599394, 0.864864423359769,
    0.949107912342759, 0.991455371120813};
constexpr double gk_wk[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double gk_wg[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct quad_state {
    const eval_config* cfg;
    long nodes = 0;
    double max_abs_f = 0.0;
    int consecutive_small = 0;
    std::ofstream diag;
};

struct segment {
    double a, b;
    double value, abs_value, err;
    int depth = 0;
};

// accumulated integral over a growing segment list, refined globally by
// splitting the worst segment until the error budget is met
class segment_list {
  public:
    explicit segment_list(quad_state& st) : st_(st) {}

    template <typename F>
    segment make(F&& fn, double a, double b, int depth = 0) {
        const double h = 0.5 * (b - a), mid = 0.5 * (a + b);
        double ik = 0.0, ig = 0.0, iabs = 0.0;
        for (int i = 0; i < 15; ++i) {
            double t = mid + h * gk_x[i];
            double v = fn(t);
            ++st_.nodes;
            double av = std::abs(v);
            st_.max_abs_f = std::max(st_.max_abs_f, av);
            if (av < st_.cfg->rel_tolerance * st_.max_abs_f)
                ++st_.consecutive_small;
            else
                st_.consecutive_small = 0;
            if (st_.diag.is_open()) st_.diag << t << ',' << v << '\n';
            ik += gk_wk[i] * v;
            iabs += gk_wk[i] * av;
            if (i % 2 == 1) ig += gk_wg[i / 2] * v;
        }
        return {a, b, ik * h, iabs * h, std::abs(ik - ig) * h, depth};
    }

    template <typename F>
    double add(F&& fn, double a, double b, int pieces = 1) {
        double added_abs = 0.0;
        for (int i = 0; i < pieces; ++i) {
            double lo = a + (b - a) * double(i) / pieces;
            double hi = a + (b - a) * double(i + 1) / pieces;
            segment s = make(fn, lo, hi);
            added_abs += s.abs_value;
            err_sum_ += s.err;
            abs_sum_ += s.abs_value;
            segs_.push_back(s);
        }
        return added_abs;
    }

    template <typename F>
    void refine(F&& fn, long max_splits = 100000) {
        const double tol = st_.cfg->rel_tolerance * std::max(abs_sum_, 1e-300) * 0.25;
        long splits = 0;
        while (err_sum_ > tol) {
            // the error estimate bottoms out at the integrand's own noise
            // floor; accept the current refinement once the budget is spent
            if (++splits > max_splits) break;
            if (st_.nodes > st_.cfg->max_quadrature_nodes)
                throw numeric_error("quadrature did not converge within the node cap");
            size_t worst = 0;
            for (size_t i = 1; i < segs_.size(); ++i)
                if (segs_[i].err > segs_[worst].err) worst = i;
            segment s = segs_[worst];
            if (s.depth >= 45 || (s.b - s.a) < 1e-13 * (1.0 + std::abs(s.a))) {
                err_sum_ -= s.err;
                segs_[worst].err = 0.0;  // accept; cannot usefully split further
                continue;
            }
            err_sum_ -= s.err;
            abs_sum_ -= s.abs_value;
            double mid = 0.5 * (s.a + s.b);
            segment l = make(fn, s.a, mid, s.depth + 1);
            segment r = make(fn, mid, s.b, s.depth + 1);
            segs_[worst] = l;
            segs_.push_back(r);
            err_sum_ += l.err + r.err;
            abs_sum_ += l.abs_value + r.abs_value;
        }
    }

    double value() const {
        double v = 0.0;
        for (const auto& s : segs_) v += s.value;
        return v;
    }
    double abs_sum() const { return abs_sum_; }

  private:
    quad_state& st_;
    std::vector<segment> segs_;
    double err_sum_ = 0.0;
    double abs_sum_ = 0.0;
};

double real_score(double sigma, const hfunc& f, double log_y) {
    return log_theta(cd(sigma, 0.5), f).real() + sigma * log_y;
}

// abscissa minimizing the integrand scale x^sigma |theta(sigma + i/2)|
double pick_sigma(const hfunc& f, double log_y) {
    double sl = left_pole_bound(f);
    double sr = right_pole_bound(f);
    std::vector<double> cand;
    auto window = [&](double lo, double hi) {
        for (int i = 1; i < 40; ++i)
            cand.push_back(lo + (hi - lo) * double(i) / 40.0);
        for (int k = 1; k <= 14; ++k) {
            double off = (hi - lo) * std::pow(2.0, -k - 1);
            cand.push_back(lo + off);
            cand.push_back(hi - off);
        }
    };
    if (std::isfinite(sl) && std::isfinite(sr)) {
        window(sl, sr);
    } else if (std::isfinite(sr)) {
        double w = 8.0;
        while (w < 2048.0 &&
               real_score(sr - w, f, log_y) < real_score(sr - 0.5 * w, f, log_y))
            w *= 2.0;
        window(sr - w, sr);
    } else if (std::isfinite(sl)) {
        double w = 8.0;
        while (w < 2048.0 &&
               real_score(sl + w, f, log_y) < real_score(sl + 0.5 * w, f, log_y))
            w *= 2.0;
        window(sl, sl + w);
    } else {
        return 0.0;
    }
    double best = cand.front(), best_score = inf;
    for (double s : cand) {
        double sc = real_score(s, f, log_y);
        if (std::isfinite(sc) && sc < best_score) {
            best_score = sc;
            best = s;
        }
    }
    return best;
}

// H_bare(y) = (1/pi) y^sigma Re int_0^inf theta(sigma+it) e^{it ln y} dt
double contour_eval(double y, const hfunc& f, const eval_config& cfg) {
    if (detail::contour_decay(f) <= 0.0)
        throw numeric_error("contour integrand does not decay (delta <= 0)");
    double sl = left_pole_bound(f);
    double sr = right_pole_bound(f);
    if (sl >= sr - 1e-12)
        throw numeric_error("empty pole-free strip; evaluation refused");
    const double log_y = std::log(y);
    double sigma = cfg.contour_offset;
    if (!std::isfinite(sigma) || sigma <= sl || sigma >= sr)
        sigma = pick_sigma(f, log_y);

    const double base = log_theta(cd(sigma, 0.5), f).real();
    auto integrand = [&](double tau) {
        cd lt = log_theta(cd(sigma, tau), f);
        cd v = std::exp(lt - base + cd(0.0, tau * log_y));
        double re = v.real();
        return std::isfinite(re) ? re : 0.0;
    };

    quad_state st;
    st.cfg = &cfg;
    if (!cfg.diag_csv.empty()) {
        st.diag.open(cfg.diag_csv, std::ios::app);
        st.diag << "# contour sigma=" << sigma << " logy=" << log_y << '\n';
    }
    segment_list segs(st);

    // panels no wider than the e^{i tau ln y} oscillation wavelength, or
    // Kronrod error estimates alias on fast phases
    const double w0 = std::min(0.5, 6.0 / (1.0 + std::abs(log_y)));
    const double w_cap = std::max(w0, std::min(4.0, 25.0 / (1.0 + std::abs(log_y))));
    // the integrand peaks within the distance to the nearest strip-edge
    // pole; start the march at that scale so the peak is sampled
    double edge = inf;
    if (std::isfinite(sl)) edge = std::min(edge, sigma - sl);
    if (std::isfinite(sr)) edge = std::min(edge, sr - sigma);
    double tau = 0.0;
    double width = std::isfinite(edge) ? std::min(w0, std::max(1e-9, 0.25 * edge)) : w0;
    int quiet_panels = 0;
    while (true) {
        double contributed = segs.add(integrand, tau, tau + width);
        tau += width;
        width = std::min(width * 1.7, w_cap);
        if (tau >= 2.0) {
            if (contributed < cfg.rel_tolerance * std::max(segs.abs_sum(), 1e-300))
                ++quiet_panels;
            else
                quiet_panels = 0;
            if (quiet_panels >= 3 || st.consecutive_small >= 50) break;
        }
        if (st.nodes > cfg.max_quadrature_nodes)
            throw numeric_error("contour quadrature did not converge within the node cap");
    }
    segs.refine(integrand);

    double log_scale = base + sigma * log_y;
    if (log_scale > 700.0)
        throw numeric_error("contour result overflows double range");
    double value = segs.value();
    // roundoff accumulates with the node count; a result below that floor is
    // cancellation noise, and the regimes that reach it decay essentially,
    // so zero is the representable answer
    double noise_floor = std::max(1e-13, 3e-15 * double(st.nodes));
    if (debug_flag("HDX_DEBUG_CONTOUR"))
        std::fprintf(stderr, "[contour] sigma=%.6g logy=%.4g ratio=%.3e nodes=%ld\n",
                     sigma, log_y, std::abs(value) / segs.abs_sum(), st.nodes);
    if (std::abs(value) < noise_floor * segs.abs_sum())
        return 0.0;
    return std::exp(log_scale) * value / pi;
}

// ---------------------------------------------------------------------------
// pole enumeration for expansions
// ---------------------------------------------------------------------------

struct pole_hit {
    double s;
    int j;
    long nu;
};

// next pole strictly beyond `after` on the requested side, merged over streams
bool next_pole(const hfunc& f, expansion_side side, double after, pole_hit& out) {
    const auto& o = f.ord;
    const auto& p = f.par;
    bool found = false;
    const int streams = side == expansion_side::near_zero ? o.m : o.n;
    for (int j = 0; j < streams; ++j) {
        double s0, step;
        if (side == expansion_side::near_zero) {
            s0 = p.b[j] / p.B[j];
            step = 1.0 / p.B[j];
            long nu = std::max(0L, std::lround(std::ceil((after + 1e-12 - s0) / step)));
            double s = s0 + double(nu) * step;
            while (s <= after + 1e-12) s = s0 + double(++nu) * step;
            if (!found || s < out.s) out = {s, j, nu}, found = true;
        } else {
            s0 = (p.a[j] - 1.0) / p.A[j];
            step = 1.0 / p.A[j];
            long nu = std::max(0L, std::lround(std::ceil((s0 - (after - 1e-12)) / step)));
            double s = s0 - double(nu) * step;
            while (s >= after - 1e-12) s = s0 - double(++nu) * step;
            if (!found || s > out.s) out = {s, j, nu}, found = true;
        }
    }
    return found;
}

} // namespace

namespace detail {

double series_mu(const hfunc& f) {
    double mu = 0.0;
    for (double v : f.par.B) mu += v;
    for (double v : f.par.A) mu -= v;
    return mu;
}

double series_radius(const hfunc& f) {
    double lg = 0.0;
    for (double v : f.par.B) lg += v * std::log(v);
    for (double v : f.par.A) lg -= v * std::log(v);
    return std::exp(lg);
}

double contour_decay(const hfunc& f) {
    const auto& o = f.ord;
    const auto& p = f.par;
    double d = 0.0;
    for (int j = 0; j < o.m; ++j) d += p.B[j];
    for (int j = 0; j < o.n; ++j) d += p.A[j];
    for (int j = o.m; j < o.q; ++j) d -= p.B[j];
    for (int j = o.n; j < o.p; ++j) d -= p.A[j];
    return d;
}

signed_log mellin_chi(const hfunc& f, double s) {
    theta_star_t t = theta_star(-s, f, -1, -1);
    return {t.log_abs, t.sign, t.unmatched_pole};
}

} // namespace detail

std::complex<double> mellin_barnes_integrand(std::complex<double> s, const hfunc& f) {
    const auto& o = f.ord;
    const auto& p = f.par;
    auto near_real_pole = [&](double arg_at_re, double im_coeff) {
        return std::abs(s.imag() * im_coeff) < 1e-12 && near_gamma_pole(arg_at_re, 1e-12);
    };
    char buf[64];
    for (int j = 0; j < o.m; ++j)
        if (near_real_pole(p.b[j] - p.B[j] * s.real(), p.B[j])) {
            std::snprintf(buf, sizeof buf, "pole of Gamma(b[%d] - B[%d] s)", j, j);
            throw numeric_error(buf);
        }
    for (int j = 0; j < o.n; ++j)
        if (near_real_pole(1.0 - p.a[j] + p.A[j] * s.real(), p.A[j])) {
            std::snprintf(buf, sizeof buf, "pole of Gamma(1 - a[%d] + A[%d] s)", j, j);
            throw numeric_error(buf);
        }
    // a denominator gamma pole just sends the integrand to zero
    for (int j = o.m; j < o.q; ++j)
        if (near_real_pole(1.0 - p.b[j] + p.B[j] * s.real(), p.B[j])) return 0.0;
    for (int j = o.n; j < o.p; ++j)
        if (near_real_pole(p.a[j] - p.A[j] * s.real(), p.A[j])) return 0.0;
    return std::exp(log_theta(s, f));
}

algebraic_expansion asymptotic_expansion(const hfunc& f, expansion_side side,
                                         const eval_config& cfg) {
    (void)cfg;
    const auto& o = f.ord;
    const auto& p = f.par;
    const int streams = side == expansion_side::near_zero ? o.m : o.n;
    if (streams == 0)
        throw numeric_error("no pole family on the requested side (essential behaviour)");
    double cursor = side == expansion_side::near_zero ? -inf : inf;
    for (int guard = 0; guard < 400; ++guard) {
        pole_hit h;
        if (!next_pole(f, side, cursor, h))
            throw numeric_error("pole enumeration exhausted");
        cursor = h.s;
        // gather all streams sharing this location
        struct member { int j; long nu; };
        std::vector<member> group;
        for (int j = 0; j < streams; ++j) {
            double s0, step;
            if (side == expansion_side::near_zero) {
                s0 = p.b[j] / p.B[j];
                step = 1.0 / p.B[j];
                double t = (h.s - s0) / step;
                if (t > -1e-9 && std::abs(t - std::round(t)) < 1e-9)
                    group.push_back({j, std::lround(t)});
            } else {
                s0 = (p.a[j] - 1.0) / p.A[j];
                step = 1.0 / p.A[j];
                double t = (s0 - h.s) / step;
                if (t > -1e-9 && std::abs(t - std::round(t)) < 1e-9)
                    group.push_back({j, std::lround(t)});
            }
        }
        int live = 0;
        double coeff = 0.0;
        for (const auto& g : group) {
            theta_star_t ts = side == expansion_side::near_zero
                                  ? theta_star(h.s, f, g.j, -1)
                                  : theta_star(h.s, f, -1, g.j);
            if (ts.unmatched_pole)
                throw numeric_error("repeated dominant pole (logarithmic case); not expanded");
            if (ts.sign == 0) continue;
            int shared = side == expansion_side::near_zero ? ts.collided_right
                                                           : ts.collided_left;
            if (live > 0) {
                if (shared == 0)
                    throw numeric_error(
                        "repeated dominant pole (logarithmic case); not expanded");
                continue;  // same simple pole seen from another stream
            }
            ++live;
            double slope = side == expansion_side::near_zero ? p.B[g.j] : p.A[g.j];
            double lc = -std::lgamma(double(g.nu) + 1.0) - std::log(slope) + ts.log_abs
                        + h.s * std::log(p.c);
            double sg = ((g.nu % 2 == 0) ? 1.0 : -1.0) * ts.sign;
            coeff = p.k * sg * std::exp(lc);
        }
        if (live >= 1)
            return {h.s, coeff, side};
    }
    throw numeric_error("no algebraic term with nonvanishing coefficient found");
}

namespace {

double eval_impl(double x, const hfunc& f, const eval_config& cfg) {
    if (x == 0.0) {
        auto e = asymptotic_expansion(f, expansion_side::near_zero, cfg);
        if (e.exponent > 1e-12) return 0.0;
        if (std::abs(e.exponent) <= 1e-12) return e.coefficient;
        throw numeric_error("kernel unbounded as x -> 0+");
    }

    if (f.ord.m == 0 && f.ord.n > 0)
        return eval_impl(1.0 / x, reciprocal_density(f), cfg) / (x * x);

    const double y = f.par.c * x;
    const double mu = detail::series_mu(f);
    const double radius = detail::series_radius(f);

    const bool asc_ok = f.ord.m > 0 &&
        (mu > 1e-12 || (std::abs(mu) <= 1e-12 && y < 0.98 * radius));
    const bool desc_ok = f.ord.n > 0 &&
        (mu < -1e-12 || (std::abs(mu) <= 1e-12 && y > 1.02 * radius));

    const bool trace = debug_flag("HDX_DEBUG_PATH");
    if (asc_ok) {
        auto r = residue_series(y, f, +1, cfg);
        if (r.ok) {
            if (trace) std::fprintf(stderr, "[path] asc-conv y=%g -> %g\n", y, r.value);
            return f.par.k * r.value;
        }
    }
    if (desc_ok) {
        auto r = residue_series(y, f, -1, cfg);
        if (r.ok) {
            if (trace) std::fprintf(stderr, "[path] desc-conv y=%g -> %g\n", y, r.value);
            return f.par.k * r.value;
        }
    }
    // opposite-side asymptotic summation covers the regime the convergent
    // series loses to cancellation and the contour cannot reach
    if (mu < -1e-12 && f.ord.m > 0) {
        auto r = residue_series(y, f, +1, cfg, true);
        if (r.ok) {
            if (trace) std::fprintf(stderr, "[path] asc-asym y=%g -> %g\n", y, r.value);
            return f.par.k * r.value;
        }
    } else if (mu > 1e-12 && f.ord.n > 0) {
        auto r = residue_series(y, f, -1, cfg, true);
        if (r.ok) {
            if (trace) std::fprintf(stderr, "[path] desc-asym y=%g -> %g\n", y, r.value);
            return f.par.k * r.value;
        }
    }
    if (trace) std::fprintf(stderr, "[path] contour y=%g\n", y);
    return f.par.k * contour_eval(y, f, cfg);
}

} // namespace

double eval_h(double x, const hfunc& f, const eval_config& cfg) {
    if (f.par.a.size() != size_t(f.ord.p) || f.par.b.size() != size_t(f.ord.q) ||
        f.par.A.size() != size_t(f.ord.p) || f.par.B.size() != size_t(f.ord.q))
        throw std::invalid_argument("eval_h: malformed sequences");
    if (is_null(f))
        throw numeric_error("delta kernel cannot be evaluated pointwise");
    if (!(x >= 0.0))
        throw std::invalid_argument("eval_h: argument must be nonnegative");
    return eval_impl(x, f, cfg);
}

// ---------------------------------------------------------------------------
// adaptive integration over (0, inf) in log coordinates
// ---------------------------------------------------------------------------

namespace {

// integral over (0, inf) in log coordinates with two-sided window extension;
// `tail_exponent` (when finite) marks a kernel tail that cannot converge
// against a non-decaying factor
double log_axis_integral(const std::function<double(double)>& g, const eval_config& cfg,
                         double tail_exponent, const char* who) {
    auto in_u = [&](double u) {
        double t = std::exp(u);
        double v = g(t) * t;
        if (debug_flag("HDX_DEBUG_TRANSFORM") && std::abs(v) > 1e4)
            std::fprintf(stderr, "[transform] huge integrand at u=%.17g: %.6e\n", u, v);
        return std::isfinite(v) ? v : 0.0;
    };
    quad_state st;
    st.cfg = &cfg;
    segment_list segs(st);
    double lo = -16.0, hi = 16.0;
    segs.add(in_u, lo, hi, 16);
    double prev_tail = inf;
    for (int round = 0; round < 30; ++round) {
        double tail = segs.add(in_u, hi, hi + 8.0, 4);
        hi += 8.0;
        double head = segs.add(in_u, lo - 8.0, lo, 4);
        lo -= 8.0;
        if (debug_flag("HDX_DEBUG_TRANSFORM"))
            std::fprintf(stderr, "[transform] round %d tail %.3e head %.3e abs %.3e\n",
                         round, tail, head, segs.abs_sum());
        if (tail + head < 0.25 * cfg.rel_tolerance * std::max(segs.abs_sum(), 1e-300)) {
            segs.refine(in_u, 1500);
            return segs.value();
        }
        if (tail_exponent >= -1.0 && round >= 2 && tail >= 0.9 * prev_tail) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "divergent %s: kernel tail exponent %.6g >= -1",
                          who, tail_exponent);
            throw numeric_error(buf);
        }
        prev_tail = tail;
    }
    throw numeric_error(std::string(who) + " did not stabilize (possibly divergent)");
}

} // namespace

double integrate_positive_axis(const std::function<double(double)>& g,
                               const eval_config& cfg) {
    return log_axis_integral(g, cfg, -inf, "integral over (0, inf)");
}

double h_transform_numeric(const std::function<double(double)>& f, double s,
                           const hfunc& kernel, const eval_config& cfg) {
    if (!(s > 0.0))
        throw std::invalid_argument("h_transform_numeric: s must be positive");

    // kernel tail drives truncation: an algebraic tail with exponent >= -1
    // cannot be integrated against a non-decaying f
    double tail_exponent = -inf;
    try {
        auto e = asymptotic_expansion(kernel, expansion_side::near_infinity, cfg);
        tail_exponent = e.exponent;
    } catch (const numeric_error&) {
        // essential decay or no left family; treated as fast decay
    }
    auto g = [&](double t) { return eval_h(s * t, kernel, cfg) * f(t); };
    return log_axis_integral(g, cfg, tail_exponent, "H-transform");
}

validation_report validate_density(const hfunc& f, double tol, const eval_config& cfg) {
    validation_report rep = validate(f);
    rep.density_checked = true;
    if (!rep.structure_ok || !rep.pole_separation_ok) {
        rep.density_ok = false;
        return rep;
    }

    // nonnegativity probe
    bool nonneg = true;
    for (double lx = -6.0; lx <= 6.0; lx += 0.5) {
        double x = std::pow(10.0, lx) / f.par.c;
        double v = eval_h(x, f, cfg);
        if (v < -1e-9 * (1.0 + std::abs(v))) {
            nonneg = false;
            rep.issues.push_back("density negative at x = " + std::to_string(x));
            break;
        }
    }

    // unit mass, with an analytic remainder when the tail is algebraic; the
    // outer integrator runs above the pointwise-evaluation noise floor
    eval_config icfg = cfg;
    icfg.rel_tolerance = tol * 1e-3;
    eval_config outer = cfg;
    outer.rel_tolerance = tol * 1e-2;
    double tail_e = -inf, tail_c = 0.0;
    try {
        auto e = asymptotic_expansion(f, expansion_side::near_infinity, cfg);
        tail_e = e.exponent;
        tail_c = e.coefficient;
    } catch (const numeric_error&) {
    }
    double mass;
    if (tail_e > -inf && tail_e < -1.0) {
        // integrate to T, then add the analytic remainder integral_T^inf c x^e dx
        double T = std::pow(std::max(1.0, std::abs(tail_c) / (0.05 * tol * (-tail_e - 1.0))),
                            1.0 / (-tail_e - 1.0));
        T = std::max(T, 1e4 / f.par.c);
        auto truncated = [&](double t) { return t <= T ? eval_h(t, f, icfg) : 0.0; };
        mass = integrate_positive_axis(truncated, outer) +
               tail_c * std::pow(T, tail_e + 1.0) / (-tail_e - 1.0);
    } else {
        mass = integrate_positive_axis([&](double t) { return eval_h(t, f, icfg); }, outer);
    }
    rep.integral = mass;
    rep.density_ok = nonneg && std::abs(mass - 1.0) <= tol;
    if (std::abs(mass - 1.0) > tol)
        rep.issues.push_back("not a density: numeric mass = " + std::to_string(mass));
    return rep;
}

} // namespace hdx
