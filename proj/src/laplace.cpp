#include "oy/laplace.hpp"

#include "oy/jet.hpp"
#include "oy/specfun.hpp"

#include <algorithm>
#include <cmath>

namespace oy::laplace {

namespace {

const double* gx10() {
    static const double v[10] = {
        -0.9739065285171717, -0.8650633666889845, -0.6794095682990244,
        -0.4333953941292472, -0.1488743389816312, 0.1488743389816312,
        0.4333953941292472,  0.6794095682990244,  0.8650633666889845,
        0.9739065285171717};
    return v;
}
const double* gw10() {
    static const double v[10] = {
        0.0666713443086881, 0.1494513491505806, 0.2190863625159820,
        0.2692667193099963, 0.2955242247147529, 0.2955242247147529,
        0.2692667193099963, 0.2190863625159820, 0.1494513491505806,
        0.0666713443086881};
    return v;
}

// log-u sample table of a generating function on the positive real axis,
// optionally with samples along the ray arg u = 3pi/4
struct MellinTable {
    std::vector<double> s, w, g;
    std::vector<cd> gray;
    double s_lo = 0, c0 = 1.0, c_log = 0.0;
    static constexpr double theta = 3.0 * pi / 4.0;

    cd moment(cd xi) const {
        cd acc(0.0);
        for (size_t i = 0; i < s.size(); ++i)
            acc += w[i] * std::exp(xi * s[i]) * g[i];
        // analytic tail below s_lo where G ~ c0 + c_log*(-s)
        cd b = -c_log / xi;
        cd a = (c0 - b) / xi;
        acc += std::exp(xi * s_lo) * (a + b * s_lo);
        return acc;
    }

    bool has_ray() const { return !gray.empty(); }

    cd moment_ray(cd xi) const {
        cd acc(0.0);
        for (size_t i = 0; i < s.size(); ++i)
            acc += w[i] * std::exp(xi * s[i]) * gray[i];
        // G(e^{s + i theta}) ~ c0 + c_log * (-s - i theta) below the table
        cd b = -c_log / xi;
        cd a = (c0 - cd(0, theta) * c_log - b) / xi;
        acc += std::exp(xi * s_lo) * (a + b * s_lo);
        return std::exp(cd(0, theta) * xi) * acc;
    }
};

MellinTable build_table(const std::function<double(double)>& g_of_u,
                        double s_lo, double s_hi_cap, double panel,
                        double c0, double c_log, const char* where) {
    MellinTable t;
    t.s_lo = s_lo;
    t.c0 = c0;
    t.c_log = c_log;
    double s_hi = std::min(s_hi_cap, 12.0);
    // extend until the xi <= 1 weighted tail is negligible
    while (s_hi < s_hi_cap &&
           std::abs(g_of_u(std::exp(s_hi))) * std::exp(s_hi) > 1e-12)
        s_hi += 4.0;
    if (std::abs(g_of_u(std::exp(s_hi))) > 1e-5)
        fail(where, "moment-divergence: G does not decay on the u-axis");
    int n_panels = std::max(8, int((s_hi - s_lo) / panel) + 1);
    double h = (s_hi - s_lo) / n_panels;
    for (int p = 0; p < n_panels; ++p) {
        double c = s_lo + (p + 0.5) * h;
        for (int k = 0; k < 10; ++k) {
            double sk = c + 0.5 * h * gx10()[k];
            t.s.push_back(sk);
            t.w.push_back(0.5 * h * gw10()[k]);
            t.g.push_back(g_of_u(std::exp(sk)));
        }
    }
    return t;
}

// real part of (1/pi) int_0^tcap e^{y(delta+it)} W(delta+it) dt with panel
// widths tracking the local oscillation frequency, trailing-average smoothed.
double line_integral(const std::function<cd(cd)>& W, double y, double delta,
                     double t_cap, double extra_freq, double noise_growth) {
    // Beyond t* the numerically computed W is dominated by roundoff amplified
    // like e^{noise_growth * t}; integrating further only adds noise.
    if (noise_growth > 0) t_cap = std::min(t_cap, 21.0 / noise_growth + 2.0);
    double acc = 0;
    double t = 0;
    std::vector<double> partial;
    int quiet = 0;
    while (t < t_cap) {
        double freq = std::abs(y) + extra_freq + 2.0 * std::log(2.0 + t) + 4.0;
        double h = std::min(pi / freq, t_cap - t);
        double p = 0;
        for (int k = 0; k < 10; ++k) {
            double tk = t + 0.5 * h * (gx10()[k] + 1.0);
            cd xi(delta, tk);
            p += 0.5 * h * gw10()[k] * (std::exp(y * xi) * W(xi)).real();
        }
        acc += p;
        partial.push_back(acc);
        t += h;
        if (std::abs(p) < 1e-12 * (1.0 + std::abs(acc)))
            ++quiet;
        else
            quiet = 0;
        if (quiet > 12) break;
    }
    // average the trailing partial sums to damp a slowly decaying oscillation
    int m = int(partial.size());
    int depth = std::min(10, m - 1);
    if (depth < 1) return acc / pi;
    std::vector<double> row(partial.end() - (depth + 1), partial.end());
    for (int d = 0; d < depth; ++d)
        for (int i = 0; i + 1 < int(row.size()) - d; ++i)
            row[i] = 0.5 * (row[i] + row[i + 1]);
    return row[0] / pi;
}

// adaptive stop for derivative-type series: accumulate up to nmax, keep the
// partial sum at the running-minimum term once terms start growing
struct SeriesAccumulator {
    double sum = 0, best_sum = 0, min_term = 1e300;
    int grow = 0;
    bool done = false;

    bool push(double term) {
        if (done) return false;
        sum += term;
        double a = std::abs(term);
        if (a < min_term) {
            min_term = a;
            best_sum = sum;
            grow = 0;
        } else if (++grow >= 3) {
            done = true;
            return false;
        }
        if (a < 1e-12 * std::max(1.0, std::abs(sum))) {
            best_sum = sum;
            done = true;
            return false;
        }
        return true;
    }
    double value() const { return grow > 0 ? best_sum : sum; }
};

} // namespace

double integrate_oscillatory(const std::function<double(double)>& f, double a,
                             double b, double period) {
    double h0 = std::clamp(period / 2.5, (b - a) * 1e-6, 0.5);
    double acc = 0, t = a;
    while (t < b) {
        double h = std::min(h0, b - t);
        for (int k = 0; k < 10; ++k)
            acc += 0.5 * h * gw10()[k] * f(t + 0.5 * h * (gx10()[k] + 1.0));
        t += h;
    }
    return acc;
}

double bromwich_cdf(const GeneratingFunction& G, double y, double delta, double T) {
    if (delta <= 0) fail("laplace.bromwich_cdf", "requires delta > 0");
    double ey = std::exp(y);
    double period = 2 * pi / std::max(ey, 1e-8);
    auto f = [&](double t) {
        cd u(delta, t);
        return (std::exp(u * ey) * G.eval(u) / u).real();
    };
    double split = std::min(10.0 * delta, T);
    double acc = integrate_oscillatory(f, 0.0, split, delta / 2) / pi;
    acc += integrate_oscillatory(f, split, T, period) / pi;
    // crude tail estimate from the trailing half period
    double tail_probe =
        std::abs(integrate_oscillatory(f, T, T + period / 2, period)) / pi;
    if (tail_probe > 1e-4)
        fail("laplace.bromwich_cdf", "tail-nonconvergence: increase T");
    return acc;
}

namespace {

MellinTable table_for(const GeneratingFunction& G, const char* where,
                      bool want_ray = false) {
    auto g_real = [&](double u) { return G.eval(cd(u)).real(); };
    MellinTable t = build_table(g_real, -40.0, 40.0, 0.5, G.c0, G.c_log, where);
    if (want_ray &&
        G.analyticity == GeneratingFunction::Analyticity::cut_plane) {
        cd dir = std::exp(cd(0, MellinTable::theta));
        t.gray.resize(t.s.size());
        for (size_t i = 0; i < t.s.size(); ++i)
            t.gray[i] = G.eval(std::exp(t.s[i]) * dir);
    }
    return t;
}

} // namespace

double mellin_cdf(const GeneratingFunction& G, double y, double delta) {
    if (delta <= 0) fail("laplace.mellin_cdf", "requires delta > 0");
    MellinTable t = table_for(G, "laplace.mellin_cdf");
    auto W = [&](cd xi) { return t.moment(xi) / specfun::gamma(1.0 + xi); };
    return line_integral(W, y, delta, 220.0, 2.0, pi / 2);
}

double mellin_density(const GeneratingFunction& G, double y, double delta) {
    if (delta <= 0) fail("laplace.mellin_density", "requires delta > 0");
    MellinTable t = table_for(G, "laplace.mellin_density");
    auto W = [&](cd xi) { return t.moment(xi) / specfun::gamma(xi); };
    return line_integral(W, y, delta, 220.0, 2.0, pi / 2);
}

cd fourier_of_cdf(const GeneratingFunction& G, cd xi) {
    MellinTable t = table_for(G, "laplace.fourier_of_cdf");
    return t.moment(xi) / specfun::gamma(1.0 + xi);
}

double boundary_cdf(const GeneratingFunction& G, double y) {
    if (!G.boundary_im)
        fail("laplace.boundary_cdf", "boundary-evaluator-missing");
    // F(y) = 1 - int dw e^{-e^{y-w}} (1/pi) Im G(-e^{-w}+i0)
    auto f = [&](double w) {
        double v = y - w;
        double kern = v > 5.0 ? 0.0 : std::exp(-std::exp(v));
        return kern == 0.0 ? 0.0 : kern * G.boundary_im(w) / pi;
    };
    double acc = 0;
    double lo = y - 6.0, hi = y + 60.0;
    int n_panels = int((hi - lo) / 0.4);
    double h = (hi - lo) / n_panels;
    for (int p = 0; p < n_panels; ++p) {
        double c = lo + (p + 0.5) * h;
        for (int k = 0; k < 10; ++k)
            acc += 0.5 * h * gw10()[k] * f(c + 0.5 * h * gx10()[k]);
    }
    return 1.0 - acc;
}

std::vector<double> recip_gamma_taylor(double nu0, int nmax) {
    Jet lg = specfun::log_gamma_jet(nu0, nmax + 1);
    Jet neg(nmax + 1);
    for (int i = 0; i <= nmax; ++i) neg.c[i] = -lg.c[i];
    Jet r = jet_exp(neg);
    std::vector<double> a(nmax + 1);
    for (int i = 0; i <= nmax; ++i) a[i] = r.c[i].real();
    return a;
}

std::vector<double> recip_gamma_taylor_cauchy(double nu0, int nmax, double radius) {
    int m = 1024;
    std::vector<double> a(nmax + 1, 0.0);
    for (int j = 0; j < m; ++j) {
        double th = 2 * pi * j / m;
        cd z = nu0 + radius * std::exp(cd(0, th));
        cd f = 1.0 / specfun::gamma(z);
        for (int n = 0; n <= nmax; ++n)
            a[n] += (f * std::exp(cd(0, -n * th))).real();
    }
    for (int n = 0; n <= nmax; ++n) a[n] /= m * std::pow(radius, n);
    return a;
}

double deconvolve_gamma(const GeneratingFunction& G, double nu, double y,
                        DeconvMethod method) {
    if (nu <= 0) fail("laplace.deconvolve_gamma", "requires nu > 0");
    const double delta = 0.5;
    if (method == DeconvMethod::fourier) {
        MellinTable t = table_for(G, "laplace.deconvolve_gamma", true);
        double gnu = specfun::gamma(nu);
        double growth = t.has_ray() ? pi / 4 : pi;
        auto W = [&](cd xi) {
            cd m = t.has_ray() ? t.moment_ray(xi) : t.moment(xi);
            return gnu * m /
                   (specfun::gamma(nu + xi) * specfun::gamma(1.0 + xi));
        };
        return line_integral(W, y, delta, 260.0, 3.0, growth);
    }
    if (method == DeconvMethod::series) {
        MellinTable t = table_for(G, "laplace.deconvolve_gamma", true);
        std::vector<double> a = recip_gamma_taylor(nu, 24);
        double gnu = specfun::gamma(nu);
        SeriesAccumulator acc;
        for (int n = 0; n <= 24; ++n) {
            // the xi^n factor amplifies table roundoff polynomially
            double growth = (t.has_ray() ? pi / 4 : pi) + 0.1 * n;
            auto W = [&](cd xi) {
                cd p = std::pow(xi, n);
                cd m = t.has_ray() ? t.moment_ray(xi) : t.moment(xi);
                return p * m / specfun::gamma(1.0 + xi);
            };
            double fn = line_integral(W, y, delta, 260.0, 3.0 + n, growth);
            if (!acc.push(gnu * a[n] * fn)) break;
        }
        if (acc.min_term > 1e-3)
            fail("laplace.deconvolve_gamma", "series-nondecay by n = 24");
        return acc.value();
    }
    // generating-function route: G0(e^v) from derivatives of G(e^v), then a
    // Mellin inversion of G0
    std::vector<double> a = recip_gamma_taylor(nu, 16);
    double gnu = specfun::gamma(nu);
    auto g0 = [&](double u) {
        double v = std::log(u);
        // derivatives of G(e^v) by a Cauchy circle of radius r in v
        const int m = 64, nder = 16;
        const double r = 0.6;
        std::vector<cd> samples(m);
        for (int j = 0; j < m; ++j) {
            double th = 2 * pi * j / m;
            samples[j] = G.eval(std::exp(cd(v) + r * std::exp(cd(0, th))));
        }
        SeriesAccumulator acc;
        double rn = 1, nfact = 1;
        for (int n = 0; n < nder; ++n) {
            cd dn(0.0);
            for (int j = 0; j < m; ++j) {
                double th = 2 * pi * j / m;
                dn += samples[j] * std::exp(cd(0, -n * th));
            }
            // dn/(m r^n) is the n-th Taylor coefficient = G^{(n)}(v)/n!
            dn /= double(m) * rn;
            // chi = -log Gamma(nu) shifts v by +chi, so the inverse operator
            // is Gamma(nu)/Gamma(nu - d/dv): alternating signs in the series
            double sign = (n % 2 == 0) ? 1.0 : -1.0;
            if (!acc.push(sign * gnu * a[n] * nfact * dn.real())) break;
            rn *= r;
            nfact *= n + 1.0;
        }
        double val = acc.value();
        return std::abs(val) < 1e-7 ? 0.0 : val;
    };
    MellinTable t0 = build_table(g0, -40.0, 14.0, 0.5, 1.0, 0.0,
                                 "laplace.deconvolve_gamma");
    auto W = [&](cd xi) { return t0.moment(xi) / specfun::gamma(1.0 + xi); };
    return line_integral(W, y, delta, 220.0, 2.0, pi / 2);
}

// ------------------------------------------------------- hat-G pipeline ----

HatGPipeline::HatGPipeline(const HatGFunction& f, double y_min, double y_max,
                           const PipelineOptions& opt)
    : opt_(opt) {
    // log-u table of hatG on the positive axis; the upper end must cover the
    // heaviest xi-line in use, Re xi = delta_eff
    double delta_eff =
        std::min(opt.delta + 0.3 * (opt.series_nmax + 1), opt.delta_max);
    double s_hi = std::max(y_max + 6.0, 8.0);
    while (s_hi < opt.s_hi &&
           std::abs(f.on_positive_axis(std::exp(s_hi))) *
                   std::exp(delta_eff * s_hi) >
               1e-13)
        s_hi += 4.0;
    s_tail_lo_ = opt.s_lo;
    int np = std::max(8, int((s_hi - opt.s_lo) / opt.panel) + 1);
    double h = (s_hi - opt.s_lo) / np;
    for (int p = 0; p < np; ++p) {
        double c = opt.s_lo + (p + 0.5) * h;
        for (int k = 0; k < 10; ++k) {
            double sk = c + 0.5 * h * gx10()[k];
            s_nodes_.push_back(sk);
            s_weights_.push_back(0.5 * h * gw10()[k]);
            g_values_.push_back(f.on_positive_axis(std::exp(sk)));
        }
    }
    c_log_const_ = g_values_.front() + s_nodes_.front();
    if (f.on_ray) {
        has_ray_ = true;
        gray_values_.resize(s_nodes_.size());
        for (size_t i = 0; i < s_nodes_.size(); ++i)
            gray_values_[i] = f.on_ray(std::exp(s_nodes_[i]));
    }

    // H table (optional boundary route)
    if (f.boundary_weight) {
        double w_lo = y_min - opt.w_pad_lo, w_hi = y_max + opt.w_pad_hi;
        int nw = std::max(8, int((w_hi - w_lo) / opt.w_panel) + 1);
        double hw = (w_hi - w_lo) / nw;
        for (int p = 0; p < nw; ++p) {
            double c = w_lo + (p + 0.5) * hw;
            for (int k = 0; k < 10; ++k) {
                double wk = c + 0.5 * hw * gx10()[k];
                w_nodes_.push_back(wk);
                w_weights_.push_back(0.5 * hw * gw10()[k]);
                h_values_.push_back(f.boundary_weight(wk));
            }
        }
    }
    series_coef_ = recip_gamma_taylor(1.0, opt.series_nmax + 1);
}

cd HatGPipeline::mellin_moment(cd xi) const {
    cd acc(0.0);
    for (size_t i = 0; i < s_nodes_.size(); ++i)
        acc += s_weights_[i] * std::exp(xi * s_nodes_[i]) * g_values_[i];
    // hatG(e^s) ~ -s + c below the table
    cd b = -1.0 / xi;
    cd a = (c_log_const_ - b) / xi;
    acc += std::exp(xi * s_tail_lo_) * (a + b * s_tail_lo_);
    return acc;
}

cd HatGPipeline::mellin_moment_ray(cd xi) const {
    // int u^{xi-1} hatG(u) du rotated to arg u = theta; the e^{i theta xi}
    // prefactor carries the exponential decay in Im xi exactly.
    const double theta = 3.0 * pi / 4.0;
    cd acc(0.0);
    for (size_t i = 0; i < s_nodes_.size(); ++i)
        acc += s_weights_[i] * std::exp(xi * s_nodes_[i]) * gray_values_[i];
    // hatG(e^{s+i theta}) ~ -(s + i theta) + c below the table
    cd c0 = gray_values_.front() + cd(s_nodes_.front(), theta);
    cd b = -1.0 / xi;
    cd a = (c0 - cd(0.0, theta) - b) / xi;
    acc += std::exp(xi * s_tail_lo_) * (a + b * s_tail_lo_);
    return std::exp(cd(0, theta) * xi) * acc;
}

double HatGPipeline::cdf_xi(double y) const {
    if (has_ray_) {
        auto W = [&](cd xi) {
            return mellin_moment_ray(xi) /
                   (specfun::gamma(xi) * specfun::gamma(1.0 + xi));
        };
        return line_integral(W, y, opt_.delta, opt_.t_max, 4.0, pi / 4);
    }
    auto W = [&](cd xi) {
        return mellin_moment(xi) /
               (specfun::gamma(xi) * specfun::gamma(1.0 + xi));
    };
    return line_integral(W, y, opt_.delta, opt_.t_max, 4.0, pi);
}

namespace {

// d^m/dv^m e^{-e^v} = e^{-e^v} sum_k S(m,k) (-e^v)^k
struct StirlingKernel {
    std::vector<std::vector<double>> S;
    explicit StirlingKernel(int mmax) {
        S.assign(mmax + 1, std::vector<double>(mmax + 1, 0.0));
        S[0][0] = 1.0;
        for (int n = 1; n <= mmax; ++n)
            for (int k = 1; k <= n; ++k)
                S[n][k] = k * S[n - 1][k] + S[n - 1][k - 1];
    }
    double eval(int m, double v) const {
        if (v > 6.0) return 0.0;
        double z = std::exp(v);
        double acc = 0, zp = 1.0;
        for (int k = 1; k <= m; ++k) {
            zp *= -z;
            acc += S[m][k] * zp;
        }
        return std::exp(-z) * acc;
    }
    double sup(int m) const {
        double best = 0;
        for (double v = -3.0; v < 4.0; v += 0.1)
            best = std::max(best, std::abs(eval(m, v)));
        return best;
    }
};

const StirlingKernel& stirling_kernel() {
    static StirlingKernel sk(32);
    return sk;
}

} // namespace

double HatGPipeline::fhat_derivative(int m, double y) const {
    // F_hat^(m)(y) = (1/2 pi i) int d xi  xi^m e^{y xi} Mhat(xi) / Gamma(1+xi)
    // The line is shifted right with m (steepest-descent-like placement),
    // which keeps the xi^m hump inside the usable t-range.
    double delta = std::min(opt_.delta + 0.3 * m, opt_.delta_max);
    double growth = (has_ray_ ? pi / 4 : pi) + 0.1 * m;
    if (has_ray_) {
        auto W = [&](cd xi) {
            return std::pow(xi, m) * mellin_moment_ray(xi) /
                   specfun::gamma(1.0 + xi);
        };
        return line_integral(W, y, delta, opt_.t_max, 4.0 + m, growth);
    }
    auto W = [&](cd xi) {
        return std::pow(xi, m) * mellin_moment(xi) / specfun::gamma(1.0 + xi);
    };
    return line_integral(W, y, delta, opt_.t_max, 4.0 + m, growth);
}

double HatGPipeline::cdf_series(double y) const {
    SeriesAccumulator acc;
    for (int n = 0; n <= opt_.series_nmax; ++n) {
        double term = series_coef_[n] * fhat_derivative(n + 1, y);
        if (!acc.push(term)) break;
    }
    if (!acc.done && acc.min_term > 1e-2)
        fail("laplace.cdf_series", "series-divergence: terms fail to decay");
    return acc.value();
}

double HatGPipeline::fhat_derivative_boundary(int m, double y) const {
    if (h_values_.empty())
        fail("laplace.cdf_boundary", "boundary-evaluator-missing");
    const StirlingKernel& sk = stirling_kernel();
    double acc = 0;
    for (size_t i = 0; i < w_nodes_.size(); ++i)
        acc += w_weights_[i] * sk.eval(m, w_nodes_[i] - y) * h_values_[i];
    return (m % 2 == 0) ? acc : -acc; // (-1)^m from d/dy = -d/dv
}

double HatGPipeline::cdf_boundary_series(double y) const {
    const StirlingKernel& sk = stirling_kernel();
    SeriesAccumulator acc;
    for (int n = 0; n <= opt_.series_nmax; ++n) {
        int m = n + 1;
        double term = series_coef_[n] * fhat_derivative_boundary(m, y);
        double noise = 1e-14 * sk.sup(m);
        if (!acc.push(term)) break;
        if (std::abs(term) < noise && n > 4) break;
    }
    return acc.value();
}

} // namespace oy::laplace
