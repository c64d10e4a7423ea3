#include "doctest.h"

#include "oy/laplace.hpp"
#include "oy/specfun.hpp"

#include <cmath>
#include <map>

using namespace oy;
using namespace oy::laplace;

namespace {

// Law A: Y = log X with X ~ Exp(1).  G(u) = 1/(1+u), F(y) = 1 - e^{-e^y}.
GeneratingFunction exp_law() {
    GeneratingFunction g;
    g.eval = [](cd u) { return 1.0 / (1.0 + u); };
    g.name = "exp-of-eY";
    g.analyticity = GeneratingFunction::Analyticity::cut_plane;
    // Im G(-t - i0) = pi delta(1-t): a point mass, so no pointwise boundary
    // evaluator exists for this law.
    return g;
}

// Law B: Y ~ Gumbel (F(y) = e^{-e^{-y}}), X = e^Y Frechet(1).
// G(u) = int_0^inf e^{-p - u/p} dp = 2 sqrt(u) K_1(2 sqrt(u)).
cd gumbel_G(cd u) {
    // p = sqrt(u) e^q rotation: G = sqrt(u) int e^{-2 sqrt(u) cosh q} e^q dq;
    // the integrand mass sits near q ~ -log|sqrt(u)| for small |u|
    cd su = std::sqrt(u);
    double qmax = 9.0 + std::max(0.0, -std::log(std::abs(su)));
    cd acc(0.0);
    const int n = std::max(1200, int(2 * qmax / 0.012));
    const double h = 2 * qmax / n;
    for (int i = 0; i < n; ++i) {
        double q = -qmax + (i + 0.5) * h;
        acc += h * std::exp(-2.0 * su * std::cosh(q) + q);
    }
    return su * acc;
}

// Independent oscillatory-quadrature oracle for the boundary values:
// Im G(-t + i0) = Im[ i sqrt(t) int e^{-2 i sqrt(t) cosh s} e^s ds ]
// along the contour s(tau) = tau - i (pi/4) tanh(1.2 tau).
double gumbel_boundary_im_plus(double t) {
    cd acc(0.0);
    const int n = 4000;
    const double lo = -9.0, hi = 9.0, h = (hi - lo) / n;
    double st = std::sqrt(t);
    for (int i = 0; i < n; ++i) {
        double tau = lo + (i + 0.5) * h;
        cd s(tau, -pi / 4 * std::tanh(1.2 * tau));
        cd ds(1.0, -pi / 4 * 1.2 / std::pow(std::cosh(1.2 * tau), 2));
        acc += h * ds * std::exp(cd(0, -2.0 * st) * std::cosh(s) + s);
    }
    return (cd(0, 1) * st * acc).imag();
}

GeneratingFunction gumbel_law() {
    GeneratingFunction g;
    g.eval = [](cd u) {
        static std::map<std::pair<double, double>, cd> cache;
        auto key = std::make_pair(u.real(), u.imag());
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        cd v = gumbel_G(u);
        cache[key] = v;
        return v;
    };
    g.name = "gumbel";
    g.analyticity = GeneratingFunction::Analyticity::cut_plane;
    // Im G(-e^{-w} - i0) = pi sqrt(t) J1(2 sqrt(t)), t = e^{-w}
    g.boundary_im = [](double w) {
        double t = std::exp(-w);
        return pi * std::sqrt(t) * std::cyl_bessel_j(1.0, 2.0 * std::sqrt(t));
    };
    return g;
}

double gumbel_cdf(double y) { return std::exp(-std::exp(-y)); }

} // namespace

TEST_CASE("bromwich recovers the Exp-of-eY law") {
    auto g = exp_law();
    CHECK(bromwich_cdf(g, 0.0, 0.5, 400.0) ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-5));
    CHECK(std::abs(bromwich_cdf(g, -40.0, 0.5, 50000.0)) < 1e-5);
    // large y: scale delta so |e^{u e^y}| stays O(1) on the contour
    CHECK(std::abs(bromwich_cdf(g, 5.0, 0.5 * std::exp(-5.0), 2000.0) - 1.0) < 1e-5);
}

TEST_CASE("mellin routes on the Exp-of-eY law") {
    auto g = exp_law();
    CHECK(mellin_cdf(g, 0.0, 0.5) ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(2e-4));
    // inner moment at xi = 1 for G = 1/(1+u)^2 integrates to 1
    GeneratingFunction g2;
    g2.eval = [](cd u) { return 1.0 / ((1.0 + u) * (1.0 + u)); };
    cd m = fourier_of_cdf(g2, cd(1.0, 0.0)) * specfun::gamma(cd(2.0, 0.0));
    CHECK(m.real() == doctest::Approx(1.0).epsilon(1e-8));
    // density of the law at 0 is e^{y - e^y}|_0 = 1/e
    CHECK(mellin_density(g, 0.0, 0.5) ==
          doctest::Approx(std::exp(-1.0)).epsilon(3e-4));
}

TEST_CASE("gumbel boundary oracle: bessel form vs oscillatory quadrature") {
    for (double t : {0.3, 1.0, 2.5}) {
        double im_plus = gumbel_boundary_im_plus(t);
        double bessel = pi * std::sqrt(t) * std::cyl_bessel_j(1.0, 2.0 * std::sqrt(t));
        // minus-side boundary value is the negative of the plus side
        CHECK(-im_plus == doctest::Approx(bessel).epsilon(1e-6));
    }
}

TEST_CASE("boundary route recovers the Gumbel law") {
    auto g = gumbel_law();
    CHECK(boundary_cdf(g, 0.0) == doctest::Approx(std::exp(-1.0)).epsilon(2e-3));
    CHECK(boundary_cdf(g, 9.0) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(boundary_cdf(g, -2.8) == doctest::Approx(gumbel_cdf(-2.8)).epsilon(1e-3));
    GeneratingFunction no_b = exp_law();
    CHECK_THROWS_AS(boundary_cdf(no_b, 0.0), oy::error);
}

TEST_CASE("all routes agree on the Gumbel law") {
    auto g = gumbel_law();
    for (double y : {-1.0, 0.0, 1.5}) {
        double want = gumbel_cdf(y);
        CHECK(bromwich_cdf(g, y, 0.5, 300.0) == doctest::Approx(want).epsilon(2e-3));
        CHECK(mellin_cdf(g, y, 0.5) == doctest::Approx(want).epsilon(2e-3));
        CHECK(boundary_cdf(g, y) == doctest::Approx(want).epsilon(2e-3));
    }
}

TEST_CASE("recovered CDFs are monotone and in range") {
    auto g = gumbel_law();
    double prev = -1e-4;
    for (double y = -2.0; y <= 3.0; y += 0.5) {
        double f = mellin_cdf(g, y, 0.5);
        CHECK(f >= -1e-4);
        CHECK(f <= 1.0 + 1e-4);
        CHECK(f >= prev - 1e-4);
        prev = f;
    }
}

TEST_CASE("reciprocal gamma Taylor coefficients") {
    auto a = recip_gamma_taylor(1.0, 12);
    CHECK(a[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(a[1] == doctest::Approx(specfun::euler_gamma).epsilon(1e-13));
    auto ac = recip_gamma_taylor_cauchy(1.0, 12, 0.5);
    for (int n = 0; n <= 12; ++n) CHECK(std::abs(a[n] - ac[n]) <= 1e-10);
    // a general expansion point too
    auto b = recip_gamma_taylor(2.2, 12);
    auto bc = recip_gamma_taylor_cauchy(2.2, 12, 0.5);
    for (int n = 0; n <= 12; ++n) CHECK(std::abs(b[n] - bc[n]) <= 1e-10);
}

TEST_CASE("gamma deconvolution: degenerate nu = 1 case") {
    // Y = Gumbel = -log Gamma(1), so Y0 is a point mass at 0
    auto g = gumbel_law();
    double lo = deconvolve_gamma(g, 1.0, -0.5, DeconvMethod::fourier);
    double hi = deconvolve_gamma(g, 1.0, 0.5, DeconvMethod::fourier);
    CHECK(lo <= 0.05);
    CHECK(hi >= 0.95);
}

namespace {
// Y = Y0 + chi with Y0 Gumbel and chi ~ -log Gamma(2):
// G(u) = E_X[ G0(u / X) ], X ~ Gamma(2)
GeneratingFunction convolved_law() {
    GeneratingFunction g;
    // memoized: the inversion engines sample the same u-nodes repeatedly
    g.eval = [](cd u) {
        static std::map<std::pair<double, double>, cd> cache;
        auto key = std::make_pair(u.real(), u.imag());
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        // Gauss panels in log x for spectral accuracy of the mixture
        static const double gx[10] = {
            -0.9739065285171717, -0.8650633666889845, -0.6794095682990244,
            -0.4333953941292472, -0.1488743389816312, 0.1488743389816312,
            0.4333953941292472,  0.6794095682990244,  0.8650633666889845,
            0.9739065285171717};
        static const double gw[10] = {
            0.0666713443086881, 0.1494513491505806, 0.2190863625159820,
            0.2692667193099963, 0.2955242247147529, 0.2955242247147529,
            0.2692667193099963, 0.2190863625159820, 0.1494513491505806,
            0.0666713443086881};
        cd acc(0.0);
        const int n_panels = 44;
        const double lo = -12.0, hi = 5.5, h = (hi - lo) / n_panels;
        for (int p = 0; p < n_panels; ++p) {
            double c = lo + (p + 0.5) * h;
            for (int k = 0; k < 10; ++k) {
                double x = std::exp(c + 0.5 * h * gx[k]);
                acc += 0.5 * h * gw[k] * x * x * std::exp(-x) * gumbel_G(u / x);
            }
        }
        cache[key] = acc;
        return acc;
    };
    g.name = "gumbel+loggamma2";
    g.analyticity = GeneratingFunction::Analyticity::cut_plane;
    return g;
}
} // namespace

TEST_CASE("gamma deconvolution round trip, nu = 2") {
    auto g = convolved_law();
    double sup = 0;
    for (double y : {-1.0, 0.0, 1.0, 2.0}) {
        double f = deconvolve_gamma(g, 2.0, y, DeconvMethod::fourier);
        sup = std::max(sup, std::abs(f - gumbel_cdf(y)));
    }
    CHECK(sup <= 1e-3);
    // fourier and series methods agree
    for (double y : {-0.5, 0.8}) {
        double ff = deconvolve_gamma(g, 2.0, y, DeconvMethod::fourier);
        double fs = deconvolve_gamma(g, 2.0, y, DeconvMethod::series);
        CHECK(std::abs(ff - fs) <= 1e-3);
    }
}

TEST_CASE("gamma deconvolution, generating-function route") {
    // a lower-resolution copy of the convolved law keeps the nested circle
    // sampling affordable; the route itself is only checked to 5e-3
    GeneratingFunction g;
    g.eval = [](cd u) {
        static std::map<std::pair<double, double>, cd> cache;
        auto key = std::make_pair(u.real(), u.imag());
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        auto g0 = [](cd v) {
            cd sv = std::sqrt(v);
            double qmax = 8.0 + std::max(0.0, -std::log(std::abs(sv)));
            cd acc(0.0);
            const int n = std::max(300, int(2 * qmax / 0.05));
            const double h = 2 * qmax / n;
            for (int i = 0; i < n; ++i) {
                double q = -qmax + (i + 0.5) * h;
                acc += h * std::exp(-2.0 * sv * std::cosh(q) + q);
            }
            return sv * acc;
        };
        cd acc(0.0);
        const int n = 140;
        const double lo = -7.0, hi = 4.5, h = (hi - lo) / n;
        for (int i = 0; i < n; ++i) {
            double x = std::exp(lo + (i + 0.5) * h);
            acc += h * x * x * std::exp(-x) * g0(u / x);
        }
        cache[key] = acc;
        return acc;
    };
    g.analyticity = GeneratingFunction::Analyticity::cut_plane;
    double fg = deconvolve_gamma(g, 2.0, 0.0, DeconvMethod::generating);
    CHECK(fg == doctest::Approx(gumbel_cdf(0.0)).epsilon(5e-3));
}

TEST_CASE("fourier-domain identity of the convolution") {
    auto g = convolved_law();
    auto g0 = gumbel_law();
    cd xi(0.3, 0.0);
    cd lhs = fourier_of_cdf(g0, xi) * specfun::gamma(2.0 + xi) /
             specfun::gamma(cd(2.0, 0.0));
    cd rhs = fourier_of_cdf(g, xi);
    CHECK(std::abs(lhs - rhs) <= 1e-8 * std::abs(rhs));
}

TEST_CASE("hatG pipeline on a closed-form model") {
    // Target Y0 = log Exp(1), so F0(y) = 1 - e^{-e^y}.  Then
    //   hatG(u) = int_0^inf e^{-u x} / (1 + x) dx   (u > 0)
    //   H(w)    = (1/pi) Im hatG(-e^{-w} - i0) = e^{-e^{-w}}.
    HatGFunction f;
    static const double gx[10] = {
        -0.9739065285171717, -0.8650633666889845, -0.6794095682990244,
        -0.4333953941292472, -0.1488743389816312, 0.1488743389816312,
        0.4333953941292472,  0.6794095682990244,  0.8650633666889845,
        0.9739065285171717};
    static const double gw[10] = {
        0.0666713443086881, 0.1494513491505806, 0.2190863625159820,
        0.2692667193099963, 0.2955242247147529, 0.2955242247147529,
        0.2692667193099963, 0.2190863625159820, 0.1494513491505806,
        0.0666713443086881};
    f.on_positive_axis = [](double u) {
        double acc = 0;
        const double lo = -40.0, hi = 9.0 - std::log(u);
        const int np = int((hi - lo) / 0.25);
        const double h = (hi - lo) / np;
        for (int p = 0; p < np; ++p) {
            double c = lo + (p + 0.5) * h;
            for (int k = 0; k < 10; ++k) {
                double x = std::exp(c + 0.5 * h * gx[k]);
                acc += 0.5 * h * gw[k] * x * std::exp(-u * x) / (1.0 + x);
            }
        }
        return acc;
    };
    f.on_ray = [](double r) {
        // rotate x to arg x = -3pi/4 so u x is real positive
        cd dir = std::exp(cd(0, -3.0 * pi / 4.0));
        cd acc(0.0);
        const double lo = -40.0, hi = 9.0 - std::log(r);
        const int np = int((hi - lo) / 0.25);
        const double h = (hi - lo) / np;
        for (int p = 0; p < np; ++p) {
            double c = lo + (p + 0.5) * h;
            for (int k = 0; k < 10; ++k) {
                double x = std::exp(c + 0.5 * h * gx[k]);
                acc += 0.5 * h * gw[k] * x * std::exp(-r * x) / (1.0 + x * dir);
            }
        }
        return acc * dir;
    };
    f.boundary_weight = [](double w) {
        return w < -4.0 ? 0.0 : std::exp(-std::exp(-w));
    };
    // this law has only power-law decay of hatG at large u, so the shifted
    // derivative line must stay left of xi = 1
    PipelineOptions opt;
    opt.delta_max = 0.85;
    opt.s_hi = 210.0; // hatG decays only like 1/u here
    HatGPipeline pipe(f, -3.0, 4.0, opt);
    auto target = [](double y) { return 1.0 - std::exp(-std::exp(y)); };
    for (double y : {-2.5, -1.0, 0.0, 1.2, 3.0}) {
        double t = target(y);
        // the derivative line cannot shift past xi = 1 for this law, which
        // limits the series route in the left tail
        CHECK(std::abs(pipe.cdf_series(y) - t) <= 3.5e-2);
        CHECK(std::abs(pipe.cdf_xi(y) - t) <= 2e-3);
    }
    // F_hat and its first derivative agree with the closed forms
    // F_hat(y) = log(1 + e^y), so F_hat'(y) = 1/(1+e^{-y})
    for (double y : {-1.0, 0.5, 2.0})
        CHECK(pipe.fhat_derivative(1, y) ==
              doctest::Approx(1.0 / (1.0 + std::exp(-y))).epsilon(1e-4));
}
