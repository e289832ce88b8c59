#include <doctest.h>

#include "hdx/eval.hpp"
#include "hdx/gamma.hpp"
#include "hdx/hvariate.hpp"
#include "hdx/link.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace hdx;
using helpers::make;

namespace {
hfunc bm_parent() {
    return make({1, 0, 0, 1}, 0.5 / std::sqrt(M_PI), 0.5, {}, {0.0}, {}, {0.5});
}
hfunc single_gamma_kernel() {
    return make({1, 0, 0, 1}, 1.0, 1.0, {}, {0.0}, {}, {1.0});
}
} // namespace

TEST_CASE("Mellin-Barnes integrand of a single gamma factor") {
    hfunc f = single_gamma_kernel();
    CHECK(mellin_barnes_integrand({-1.0, 0.0}, f).real() == doctest::Approx(1.0));
    CHECK(mellin_barnes_integrand({-3.0, 0.0}, f).real() == doctest::Approx(2.0));
    CHECK_THROWS_AS(mellin_barnes_integrand({0.0, 0.0}, f), numeric_error);
    try {
        mellin_barnes_integrand({2.0, 0.0}, f);
        CHECK(false);
    } catch (const numeric_error& e) {
        CHECK(std::string(e.what()).find("b[0]") != std::string::npos);
    }
}

TEST_CASE("integrand of the standard position kernel against the Stirling oracle") {
    hfunc f = helpers::shd_position_hat(0.5, 2.0, 0.5);
    // s = -1 is the leading pole of the left family for every alpha1
    // (1 - a_1 - A_1 = 0), so it must be reported, with the index named
    try {
        mellin_barnes_integrand({-1.0, 0.0}, f);
        CHECK(false);
    } catch (const numeric_error& e) {
        CHECK(std::string(e.what()).find("a[0]") != std::string::npos);
    }
    // inside the strip, 12-digit agreement with long-double Stirling gammas
    const double s = -0.5;
    auto got = mellin_barnes_integrand({s, 0.0}, f);
    auto g = [](double x) { return (long double)oracle::gamma_stirling(x); };
    const auto& p = f.par;
    long double want = 1.0L;
    for (int j = 0; j < f.ord.m; ++j) want *= g(p.b[j] - p.B[j] * s);
    for (int j = 0; j < f.ord.n; ++j) want *= g(1.0 - p.a[j] + p.A[j] * s);
    for (int j = f.ord.m; j < f.ord.q; ++j) want /= g(1.0 - p.b[j] + p.B[j] * s);
    for (int j = f.ord.n; j < f.ord.p; ++j) want /= g(p.a[j] - p.A[j] * s);
    CHECK(got.real() == doctest::Approx(double(want)).epsilon(1e-12));
    CHECK(std::abs(got.imag()) < 1e-12);
}

TEST_CASE("Gaussian reduction of the Brownian parent kernel") {
    hfunc f = bm_parent();
    // evaluated kernel is the |y| density: twice the symmetric density
    for (double x = 0.0; x <= 10.0; x += 0.5) {
        double want = 2.0 * std::exp(-x * x / 4.0) / (2.0 * std::sqrt(M_PI));
        CHECK(eval_h(x, f) == doctest::Approx(want).epsilon(1e-8));
    }
    CHECK(eval_h(0.0, f) == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-10));
}

TEST_CASE("M-Wright kernel value") {
    hfunc f = make({1, 0, 1, 1}, 1.0, 1.0, {0.5}, {0.0}, {0.5}, {1.0});
    CHECK(eval_h(1.0, f) ==
          doctest::Approx(std::exp(-0.25) / std::sqrt(M_PI)).epsilon(1e-10));
}

TEST_CASE("Levy arrival-time kernel from the catalog row") {
    // (4/sqrt(pi), 4, -1/2, -, 1, -) scaled by a^2 at a = 1
    hfunc row = make({0, 1, 1, 0}, 4.0 / std::sqrt(M_PI), 4.0, {-0.5}, {}, {1.0}, {});
    hfunc f = scale(row, 1.0);
    CHECK(eval_h(1.0, f) == doctest::Approx(0.219696).epsilon(1e-6));
    for (double t : {0.05, 0.3, 2.0, 50.0})
        CHECK(eval_h(t, f) == doctest::Approx(oracle::levy_fpt_pdf(1.0, t)).epsilon(1e-10));
}

TEST_CASE("series and contour paths agree where both converge") {
    eval_config contour_only;
    contour_only.series_term_cap = 0;
    std::vector<hfunc> kernels = {
        bm_parent(),
        make({1, 0, 1, 1}, 1.0, 1.0, {0.7}, {0.0}, {0.3}, {1.0}),  // M-Wright 0.3
        helpers::shd_position_hat(0.5, 1.5, 0.8),
    };
    for (const auto& f : kernels)
        for (double x : {0.4, 1.0, 2.2}) {
            double a = eval_h(x, f);
            double b = eval_h(x, f, contour_only);
            CHECK(a == doctest::Approx(b).epsilon(1e-8));
        }
}

TEST_CASE("scaling identity of the evaluation") {
    hfunc f = bm_parent();
    hfunc g = scale(f, 2.5);
    for (double x : {0.3, 1.0, 4.0})
        CHECK(eval_h(x, g) == doctest::Approx(eval_h(x / 2.5, f) / 2.5).epsilon(1e-10));
}

TEST_CASE("near-zero expansion: exponents, coefficients, and the refusal cases") {
    // the standard-diffusion error kernel carries the branch structure
    for (auto [a1, a2] : {std::pair{2.0, 1.0}, {2.0, 0.5}, {1.8, 1.0}}) {
        shd_params sp{a1, a2, 1.0 / a1, a2, 1.0, 1.0};
        auto e = asymptotic_expansion(sep_kernel_shd(sp), expansion_side::near_zero);
        double w1 = sp.omega1, w = sp.omega1 * sp.omega2;
        CHECK(e.exponent == doctest::Approx(0.5 * std::min(sp.omega2, w)).epsilon(1e-12));
        double sigma_star = gamma_fn(1.0 - w1) * gamma_fn(1.0 / a1) /
                            (2.0 * M_PI * gamma_fn(1.0 - a2 * w1));
        CHECK(e.coefficient == doctest::Approx(4.0 / a1 * sigma_star).epsilon(1e-10));
    }
    // omega1 > 1 branch
    {
        shd_params sp{0.8, 0.5, 1.25, 0.5, 1.0, 1.0};
        auto e = asymptotic_expansion(sep_kernel_shd(sp), expansion_side::near_zero);
        CHECK(e.exponent == doctest::Approx(0.25).epsilon(1e-12));
        double w1 = 1.25;
        double sigma_star = std::sin(M_PI / (2.0 * w1)) * gamma_fn(1.0 - 1.0 / w1) *
                            gamma_fn(1.0 / (0.8 * w1)) /
                            (2.0 * M_PI * gamma_fn(1.0 - 0.5));
        CHECK(e.coefficient == doctest::Approx(4.0 / 0.8 * sigma_star).epsilon(1e-10));
    }
    // (2,1): omega* = 1/4
    {
        shd_params sp{2.0, 1.0, 0.5, 1.0, 1.0, 1.0};
        CHECK(asymptotic_expansion(sep_kernel_shd(sp), expansion_side::near_zero).exponent ==
              doctest::Approx(0.25));
    }
    // repeated dominant pole: the log kernel
    CHECK_THROWS_AS(asymptotic_expansion(log_kernel(), expansion_side::near_zero),
                    numeric_error);
}

TEST_CASE("near-zero expansion matches the fitted small-argument slope") {
    shd_params sp{2.0, 0.5, 0.5, 0.5, 1.0, 1.0};
    hfunc k = sep_kernel_shd(sp);
    auto e = asymptotic_expansion(k, expansion_side::near_zero);
    std::vector<double> lx, ly;
    for (int i = 0; i < 20; ++i) {
        double x = std::pow(10.0, -10.0 + 4.0 * i / 19.0);
        lx.push_back(std::log10(x));
        ly.push_back(std::log10(eval_h(x, k)));
    }
    double slope = oracle::fit_slope(lx, ly);
    CHECK(slope == doctest::Approx(e.exponent).epsilon(0.01));
    // and the leading coefficient itself
    double x0 = 1e-9;
    CHECK(eval_h(x0, k) ==
          doctest::Approx(e.coefficient * std::pow(x0, e.exponent)).epsilon(0.01));
}

TEST_CASE("survival tail exponent matches a fitted slope") {
    diffusion_spec spec = make_shd_pair(2.0, 0.5, 1e-10);
    h_variate fpt = fpt_variate(spec, 1e-5);
    auto tail = fpt.survival_tail();
    CHECK(tail.exponent == doctest::Approx(-0.25).epsilon(1e-10));
    std::vector<double> lx, ly;
    for (int i = 0; i < 25; ++i) {
        double t = std::pow(10.0, 3.0 + 3.0 * i / 24.0);
        lx.push_back(std::log10(t));
        ly.push_back(std::log10(fpt.survival(t)));
    }
    CHECK(oracle::fit_slope(lx, ly) == doctest::Approx(-0.25).epsilon(0.04));
}

TEST_CASE("H-transform: normalization, log moment, Laplace pair") {
    hfunc mw = make({1, 0, 1, 1}, 1.0, 1.0, {0.5}, {0.0}, {0.5}, {1.0});
    CHECK(integrate_positive_axis([&](double t) { return eval_h(t, mw); }) ==
          doctest::Approx(1.0).epsilon(1e-8));

    // Laplace transform of the M-Wright density is the Mittag-Leffler function
    double lap = h_transform_numeric([&](double t) { return eval_h(t, mw); }, 1.0,
                                     exp_kernel());
    double want = std::exp(1.0) * std::erfc(1.0);  // E_{1/2}(-1)
    CHECK(lap == doctest::Approx(want).epsilon(1e-8));
    CHECK(oracle::mittag_leffler_series(0.5, 1.0, -1.0) ==
          doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("log kernel is ln(x)/(x-1) pointwise") {
    hfunc lk = log_kernel();
    for (double x : {1e-4, 0.2, 0.95, 1.1, 7.0, 1e5})
        CHECK(eval_h(x, lk) ==
              doctest::Approx(std::log(x) / (x - 1.0)).epsilon(1e-9));
}

TEST_CASE("divergent transform is reported") {
    // step kernel (tail exponent 0) against a constant: integral of an
    // indicator over (1/s, inf) diverges
    CHECK_THROWS_AS(
        h_transform_numeric([](double) { return 1.0; }, 1.0, cdf_kernel()),
        numeric_error);
}

TEST_CASE("x = 0 is a right limit only where the exponent permits") {
    CHECK(eval_h(0.0, bm_parent()) == doctest::Approx(1.0 / std::sqrt(M_PI)));
    // Mittag-Leffler waiting-time density diverges at 0 for nu < 1
    h_variate mld = mittag_leffler_variate(0.5);
    CHECK_THROWS_AS(eval_h(0.0, mld.law()), numeric_error);
}

TEST_CASE("empty contour strip is refused") {
    // left pole family reaches (a-1)/A = 4, right family starts at b/B = 1
    hfunc f = make({1, 1, 1, 1}, 1.0, 1.0, {5.0}, {1.0}, {1.0}, {1.0});
    eval_config contour_only;
    contour_only.series_term_cap = 0;
    CHECK_THROWS_AS(eval_h(1.0, f, contour_only), numeric_error);
}
