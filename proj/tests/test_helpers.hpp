#pragma once

#include <algorithm>
#include <vector>

#include "hdx/params.hpp"

namespace helpers {

inline hdx::hfunc make(hdx::order_seq o, double k, double c, std::vector<double> a,
                       std::vector<double> b, std::vector<double> A,
                       std::vector<double> B) {
    return hdx::hfunc{o, {k, c, std::move(a), std::move(b), std::move(A), std::move(B)}};
}

// the printed position sequence of standard diffusion (unit scales)
inline hdx::hfunc shd_position_hat(double w1, double a1, double a2) {
    return make({2, 1, 3, 3}, 2.0 / a1, 1.0,
                {1.0 - 1.0 / a1, 1.0 - w1 * a2, 0.5},
                {0.0, 1.0 - w1, 0.5},
                {1.0 / a1, w1 * a2, 0.5},
                {1.0, w1, 0.5});
}

// the printed standard arrival-time sequence (no distance scaling)
inline hdx::hfunc standard_noise_printed(double a1, double a2, double w1, double w2) {
    double w = w1 * w2;
    return make({1, 2, 3, 3}, 2.0 / a1, 1.0,
                {-1.0 / w2, -1.0 / w, -0.5 / w},
                {-1.0 / (a1 * w), -0.5 / w, -a2 / w2},
                {1.0 / w2, 1.0 / w, 0.5 / w},
                {1.0 / (a1 * w), 0.5 / w, a2 / w2});
}

// equality of (value, slope) pairs as multisets within the four
// numerator/denominator blocks; H-functions are invariant under these
// permutations even when printed layouts differ
inline bool same_up_to_block_permutation(const hdx::hfunc& f, const hdx::hfunc& g,
                                         double tol = 1e-12) {
    if (!(f.ord == g.ord)) return false;
    if (std::abs(f.par.k - g.par.k) > tol * (1.0 + std::abs(f.par.k))) return false;
    if (std::abs(f.par.c - g.par.c) > tol * (1.0 + std::abs(f.par.c))) return false;
    auto block_match = [tol](std::vector<std::pair<double, double>> x,
                             std::vector<std::pair<double, double>> y) {
        if (x.size() != y.size()) return false;
        auto cmp = [](auto& u, auto& v) {
            return u.first != v.first ? u.first < v.first : u.second < v.second;
        };
        std::sort(x.begin(), x.end(), cmp);
        std::sort(y.begin(), y.end(), cmp);
        for (size_t i = 0; i < x.size(); ++i)
            if (std::abs(x[i].first - y[i].first) > tol ||
                std::abs(x[i].second - y[i].second) > tol)
                return false;
        return true;
    };
    auto pairs = [](const std::vector<double>& v, const std::vector<double>& s, int lo,
                    int hi) {
        std::vector<std::pair<double, double>> r;
        for (int i = lo; i < hi; ++i) r.push_back({v[i], s[i]});
        return r;
    };
    return block_match(pairs(f.par.a, f.par.A, 0, f.ord.n),
                       pairs(g.par.a, g.par.A, 0, g.ord.n)) &&
           block_match(pairs(f.par.a, f.par.A, f.ord.n, f.ord.p),
                       pairs(g.par.a, g.par.A, g.ord.n, g.ord.p)) &&
           block_match(pairs(f.par.b, f.par.B, 0, f.ord.m),
                       pairs(g.par.b, g.par.B, 0, g.ord.m)) &&
           block_match(pairs(f.par.b, f.par.B, f.ord.m, f.ord.q),
                       pairs(g.par.b, g.par.B, g.ord.m, g.ord.q));
}

} // namespace helpers
