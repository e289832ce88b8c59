#include "hdx/params.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace hdx {
namespace {

using dvec = std::vector<double>;

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// (head of u up to split, all of v, tail of u from split)
dvec interleave(const dvec& u, int split, const dvec& v) {
    dvec r;
    r.reserve(u.size() + v.size());
    r.insert(r.end(), u.begin(), u.begin() + split);
    r.insert(r.end(), v.begin(), v.end());
    r.insert(r.end(), u.begin() + split, u.end());
    return r;
}

dvec ones_minus(const dvec& u, double extra_coeff = 0.0, const dvec* w = nullptr) {
    dvec r(u.size());
    for (size_t i = 0; i < u.size(); ++i)
        r[i] = 1.0 - u[i] - (w ? extra_coeff * (*w)[i] : 0.0);
    return r;
}

void check_shape(const hfunc& f, const char* who) {
    const auto& [m, n, p, q] = f.ord;
    if (m < 0 || n < 0 || m > q || n > p ||
        f.par.a.size() != size_t(p) || f.par.A.size() != size_t(p) ||
        f.par.b.size() != size_t(q) || f.par.B.size() != size_t(q))
        throw std::invalid_argument(std::string(who) + ": malformed order/parameter sequences");
}

} // namespace

hfunc null_hfunc() { return hfunc{}; }

bool is_null(const hfunc& f) {
    return f.ord == order_seq{} && f.par.a.empty() && f.par.b.empty();
}

hfunc scale(const hfunc& f, double alpha) {
    require(alpha > 0.0, "scale: alpha must be positive");
    hfunc r = f;
    r.par.k /= alpha;
    r.par.c /= alpha;
    return r;
}

hfunc conjugate(const hfunc& f, double gamma) {
    check_shape(f, "conjugate");
    hfunc r = f;
    r.par.k /= std::pow(f.par.c, gamma);
    for (size_t i = 0; i < r.par.a.size(); ++i) r.par.a[i] += gamma * r.par.A[i];
    for (size_t i = 0; i < r.par.b.size(); ++i) r.par.b[i] += gamma * r.par.B[i];
    return r;
}

hfunc elementary(const hfunc& f, double alpha, double beta, double gamma) {
    require(alpha > 0.0 && beta > 0.0, "elementary: alpha and beta must be positive");
    check_shape(f, "elementary");
    hfunc r = f;
    double ac = alpha * f.par.c;
    r.par.k /= std::pow(ac, beta * gamma);
    r.par.c = std::pow(ac, beta);
    for (size_t i = 0; i < r.par.a.size(); ++i) {
        r.par.a[i] += beta * gamma * r.par.A[i];
        r.par.A[i] *= beta;
    }
    for (size_t i = 0; i < r.par.b.size(); ++i) {
        r.par.b[i] += beta * gamma * r.par.B[i];
        r.par.B[i] *= beta;
    }
    return r;
}

hfunc inverse(const hfunc& f) {
    check_shape(f, "inverse");
    hfunc r;
    r.ord = {f.ord.n, f.ord.m, f.ord.q, f.ord.p};
    r.par.k = f.par.k;
    r.par.c = 1.0 / f.par.c;
    r.par.a = ones_minus(f.par.b);
    r.par.b = ones_minus(f.par.a);
    r.par.A = f.par.B;
    r.par.B = f.par.A;
    return r;
}

hfunc reciprocal_density(const hfunc& f) { return inverse(conjugate(f, 2.0)); }

hfunc mellin_op(const hfunc& f, const hfunc& g) {
    check_shape(f, "mellin_op");
    check_shape(g, "mellin_op");
    hfunc r;
    r.ord = {f.ord.m + g.ord.n, f.ord.n + g.ord.m, f.ord.p + g.ord.q, f.ord.q + g.ord.p};
    r.par.k = f.par.k * g.par.k / g.par.c;
    r.par.c = f.par.c / g.par.c;
    r.par.a = interleave(f.par.a, f.ord.n, ones_minus(g.par.b, 1.0, &g.par.B));
    r.par.b = interleave(f.par.b, f.ord.m, ones_minus(g.par.a, 1.0, &g.par.A));
    r.par.A = interleave(f.par.A, f.ord.n, g.par.B);
    r.par.B = interleave(f.par.B, f.ord.m, g.par.A);
    return r;
}

hfunc convolution_op(const hfunc& f, const hfunc& g) {
    check_shape(f, "convolution_op");
    check_shape(g, "convolution_op");
    hfunc r;
    r.ord = {f.ord.m + g.ord.m, f.ord.n + g.ord.n, f.ord.p + g.ord.p, f.ord.q + g.ord.q};
    r.par.k = f.par.k * g.par.k;
    r.par.c = f.par.c * g.par.c;
    r.par.a = interleave(f.par.a, f.ord.n, g.par.a);
    r.par.b = interleave(f.par.b, f.ord.m, g.par.b);
    r.par.A = interleave(f.par.A, f.ord.n, g.par.A);
    r.par.B = interleave(f.par.B, f.ord.m, g.par.B);
    return r;
}

double left_pole_bound(const hfunc& f) {
    double s = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < f.ord.n; ++j)
        s = std::max(s, (f.par.a[j] - 1.0) / f.par.A[j]);
    return s;
}

double right_pole_bound(const hfunc& f) {
    double s = std::numeric_limits<double>::infinity();
    for (int j = 0; j < f.ord.m; ++j)
        s = std::min(s, f.par.b[j] / f.par.B[j]);
    return s;
}

validation_report validate(const hfunc& f) {
    validation_report rep;
    const auto& o = f.ord;
    const auto& p = f.par;
    rep.structure_ok = true;
    auto fail = [&](std::string msg) {
        rep.structure_ok = false;
        rep.issues.push_back(std::move(msg));
    };
    if (o.m < 0 || o.m > o.q) fail("order: requires 0 <= m <= q");
    if (o.n < 0 || o.n > o.p) fail("order: requires 0 <= n <= p");
    if (p.a.size() != size_t(o.p) || p.A.size() != size_t(o.p))
        fail("length(a) and length(A) must equal p");
    if (p.b.size() != size_t(o.q) || p.B.size() != size_t(o.q))
        fail("length(b) and length(B) must equal q");
    if (!(p.c > 0.0)) fail("argument scale c must be positive");
    if (!(p.k > 0.0)) fail("prefactor k must be positive for a distributional kernel");
    for (double v : p.A)
        if (!(v > 0.0)) { fail("nonpositive slope in A"); break; }
    for (double v : p.B)
        if (!(v > 0.0)) { fail("nonpositive slope in B"); break; }

    if (rep.structure_ok) {
        double sl = left_pole_bound(f), sr = right_pole_bound(f);
        rep.pole_separation_ok = sl < sr - 1e-12;
        if (!rep.pole_separation_ok)
            rep.issues.push_back("pole families are not separated (empty contour strip)");
    }
    return rep;
}

std::string to_json(const hfunc& f) {
    nlohmann::json j;
    j["k"] = f.par.k;
    j["c"] = f.par.c;
    j["a"] = f.par.a;
    j["b"] = f.par.b;
    j["A"] = f.par.A;
    j["B"] = f.par.B;
    j["m"] = f.ord.m;
    j["n"] = f.ord.n;
    j["p"] = f.ord.p;
    j["q"] = f.ord.q;
    return j.dump();
}

hfunc hfunc_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    hfunc f;
    f.par.k = j.at("k").get<double>();
    f.par.c = j.at("c").get<double>();
    f.par.a = j.at("a").get<std::vector<double>>();
    f.par.b = j.at("b").get<std::vector<double>>();
    f.par.A = j.at("A").get<std::vector<double>>();
    f.par.B = j.at("B").get<std::vector<double>>();
    f.ord.m = j.at("m").get<int>();
    f.ord.n = j.at("n").get<int>();
    f.ord.p = j.at("p").get<int>();
    f.ord.q = j.at("q").get<int>();
    check_shape(f, "hfunc_from_json");
    return f;
}

} // namespace hdx
