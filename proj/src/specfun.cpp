#include "oy/specfun.hpp"

#include <array>
#include <cmath>

namespace oy::specfun {

namespace {

// Bernoulli numbers B_2..B_16 for asymptotic tails.
constexpr double B2k[8] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30,
                           5.0 / 66, -691.0 / 2730, 7.0 / 6, -3617.0 / 510};

bool gamma_fault = false;

// Lanczos coefficients, g = 7.
std::array<double, 9> lanczos_coef() {
    std::array<double, 9> c = {0.99999999999980993,     676.5203681218851,
                               -1259.1392167224028,     771.32342877765313,
                               -176.61502916214059,     12.507343278686905,
                               -0.13857109526572012,    9.9843695780195716e-6,
                               1.5056327351493116e-7};
    if (gamma_fault) c[2] *= 1.0 + 1e-6;
    return c;
}

bool near_nonpositive_integer(cd z, double tol) {
    double re = z.real();
    if (re > 0.5) return false;
    double r = std::round(re);
    return r <= 0.0 && std::abs(re - r) < tol && std::abs(z.imag()) < tol;
}

// log(sin(pi z)) without overflow for large |Im z|.
cd log_sin_pi(cd z) {
    if (z.imag() >= 0) {
        cd iz = cd(0, 1) * (pi * z);
        // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z})
        return -iz + std::log(1.0 - std::exp(2.0 * iz)) + std::log(cd(0, 0.5));
    }
    return std::conj(log_sin_pi(std::conj(z)));
}

cd log_gamma_stirling(cd z) {
    // requires Re z > 0 and |z| large enough
    cd lz = std::log(z);
    cd s = (z - 0.5) * lz - z + 0.5 * std::log(2 * pi);
    cd zi = 1.0 / z, zp = zi;
    for (int j = 0; j < 8; ++j) {
        int two_j = 2 * (j + 1);
        s += B2k[j] / double(two_j * (two_j - 1)) * zp;
        zp *= zi * zi;
    }
    return s;
}

cd log_gamma_lanczos(cd z) {
    auto c = lanczos_coef();
    cd a = c[0];
    for (int k = 1; k < 9; ++k) a += c[k] / (z - 1.0 + double(k));
    cd t = z + 6.5; // z + g - 0.5
    return 0.5 * std::log(2 * pi) + (z - 0.5) * std::log(t) - t + std::log(a);
}

} // namespace

void set_gamma_fault(bool on) { gamma_fault = on; }

cd log_gamma(cd z) {
    if (near_nonpositive_integer(z, 1e-13))
        fail("specfun.gamma", "pole-at-nonpositive-integer");
    if (z.real() < 0.5)
        return std::log(pi) - log_sin_pi(z) - log_gamma(1.0 - z);
    if (std::abs(z) >= 18.0) return log_gamma_stirling(z);
    return log_gamma_lanczos(z);
}

cd gamma(cd z) { return std::exp(log_gamma(z)); }

double log_gamma(double x) {
    if (x <= 0) fail("specfun.gamma", "log_gamma requires x > 0");
    return log_gamma(cd(x)).real();
}

double gamma(double x) {
    if (x > 0) return std::exp(log_gamma(x));
    return gamma(cd(x)).real();
}

// ------------------------------------------------------------- digamma ----

cd digamma(cd z) {
    if (near_nonpositive_integer(z, 1e-13))
        fail("specfun.digamma", "pole-at-nonpositive-integer");
    if (z.real() < 0) {
        // psi(z) = psi(1-z) - pi cot(pi z)
        cd s = std::sin(pi * z), c = std::cos(pi * z);
        return digamma(1.0 - z) - pi * c / s;
    }
    cd acc(0.0);
    while (z.real() < 18.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    cd lz = std::log(z), zi = 1.0 / z;
    cd s = lz - 0.5 * zi;
    cd zp = zi * zi;
    for (int j = 0; j < 8; ++j) {
        s -= B2k[j] / double(2 * (j + 1)) * zp;
        zp *= zi * zi;
    }
    return acc + s;
}

double digamma(double x) { return digamma(cd(x)).real(); }

double hurwitz_zeta(int s, double x) {
    if (s < 2) fail("specfun.hurwitz_zeta", "requires integer s >= 2");
    if (x <= 0) fail("specfun.hurwitz_zeta", "requires x > 0");
    int K = x >= 20.0 ? 0 : int(std::ceil(20.0 - x));
    double sum = 0;
    for (int k = 0; k < K; ++k) sum += std::pow(x + k, -s);
    double z = x + K;
    sum += std::pow(z, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(z, -double(s));
    // Euler-Maclaurin tail: B_{2j}/(2j)! * rising(s, 2j-1) * z^{-s-2j+1}
    double rising = s;                 // (s)_1
    double fact = 2.0;                 // (2j)!
    double zp = std::pow(z, -double(s) - 1.0);
    for (int j = 1; j <= 8; ++j) {
        sum += B2k[j - 1] / fact * rising * zp;
        // advance to j+1: multiply rising by (s+2j-1)(s+2j), fact by (2j+1)(2j+2)
        rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
        zp /= z * z;
    }
    return sum;
}

double riemann_zeta(int s) { return hurwitz_zeta(s, 1.0); }

double polygamma(int n, double x) {
    if (n < 1) fail("specfun.polygamma", "requires n >= 1");
    if (x <= 0) fail("specfun.polygamma", "requires x > 0");
    double nf = 1;
    for (int k = 2; k <= n; ++k) nf *= k;
    double sign = (n % 2 == 1) ? 1.0 : -1.0;
    return sign * nf * hurwitz_zeta(n + 1, x);
}

Jet log_gamma_jet(double x0, int len) {
    Jet j(len);
    j.c[0] = log_gamma(x0);
    if (len > 1) j.c[1] = digamma(x0);
    for (int k = 2; k < len; ++k) {
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        j.c[k] = sign * hurwitz_zeta(k, x0) / double(k);
    }
    return j;
}

// ---------------------------------------------------- incomplete gamma ----

double gamma_p(double a, double x) {
    if (a <= 0 || x < 0) fail("specfun.gamma_p", "requires a > 0, x >= 0");
    if (x == 0) return 0;
    double lg = log_gamma(a);
    if (x < a + 1.0) {
        // series
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-16) break;
        }
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    // continued fraction for Q, then P = 1 - Q
    double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    double q = std::exp(-x + a * std::log(x) - lg) * h;
    return 1.0 - q;
}

double gamma_q(double a, double x) { return 1.0 - gamma_p(a, x); }

// ---------------------------------------------------------------- airy ----

namespace {

// Rotated-ray representation, reliable for x >= -9:
//   Ai(x)  = (1/pi) Re[ e^{i pi/6} int_0^inf exp(i x s e^{i pi/6} - s^3/3) ds ]
//   Ai'(x) = (1/pi) Re[ e^{i pi/3} int_0^inf i s exp(...) ds ] (same kernel)
void airy_ray(double x, double* ai, double* aip) {
    // find s_max with s^3/3 + x s/2 >= 45 (decay of the integrand modulus)
    auto decay = [&](double s) { return s * s * s / 3.0 + 0.5 * x * s; };
    double lo = 0, hi = std::cbrt(135.0) + (x < 0 ? std::sqrt(-1.5 * x) + 6.0 : 1.0);
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (decay(mid) < 45.0 ? lo : hi) = mid;
    }
    double s_max = hi;
    // oscillation budget sets the node count
    double phase = std::abs(x) * 0.87 * s_max + s_max * s_max * s_max / 3.0;
    int panels = std::max(12, int(phase * 1.2) / 3 + 8);
    static const double gx[6] = {-0.9324695142031521, -0.6612093864662645,
                                 -0.2386191860831969, 0.2386191860831969,
                                 0.6612093864662645,  0.9324695142031521};
    static const double gw[6] = {0.1713244923791704, 0.3607615730481386,
                                 0.4679139345726910, 0.4679139345726910,
                                 0.3607615730481386, 0.1713244923791704};
    const cd rot = std::exp(cd(0, pi / 6));
    cd acc(0.0), accp(0.0);
    double h = s_max / panels;
    for (int p = 0; p < panels; ++p) {
        double a = p * h;
        for (int k = 0; k < 6; ++k) {
            double s = a + 0.5 * h * (gx[k] + 1.0);
            cd e = std::exp(cd(0, 1) * (x * s) * rot - s * s * s / 3.0);
            acc += gw[k] * 0.5 * h * e;
            accp += gw[k] * 0.5 * h * (cd(0, 1) * s * rot) * e;
        }
    }
    if (ai) *ai = (rot * acc).real() / pi;
    if (aip) *aip = (rot * accp).real() / pi;
}

// Asymptotic expansions on the oscillatory side, x <= -9.
void airy_neg_asym(double x, double* ai, double* aip) {
    double z = -x;
    double zeta = 2.0 / 3.0 * std::pow(z, 1.5);
    // u_k and v_k coefficients
    double u[16], v[16];
    u[0] = v[0] = 1.0;
    for (int k = 1; k < 16; ++k) {
        u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
               ((2.0 * k - 1.0) * 216.0 * k);
        v[k] = u[k] * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
    }
    auto alt_sum = [&](const double* c, int parity) {
        // sum over k of (-1)^k c_{2k+parity} / zeta^{2k+parity}, truncated at the
        // smallest term
        double s = 0, prev = 1e300;
        for (int k = 0; k < 8; ++k) {
            int idx = 2 * k + parity;
            double term = c[idx] / std::pow(zeta, idx) * ((k % 2) ? -1.0 : 1.0);
            if (std::abs(term) > prev) break;
            s += term;
            prev = std::abs(term);
        }
        return s;
    };
    double cs = std::cos(zeta - pi / 4), sn = std::sin(zeta - pi / 4);
    double q = std::pow(z, 0.25);
    if (ai) *ai = (cs * alt_sum(u, 0) + sn * alt_sum(u, 1)) / (std::sqrt(pi) * q);
    if (aip) *aip = q / std::sqrt(pi) * (sn * alt_sum(v, 0) - cs * alt_sum(v, 1));
}

void airy_both(double x, double* ai, double* aip) {
    if (x < -9.0)
        airy_neg_asym(x, ai, aip);
    else
        airy_ray(x, ai, aip);
}

} // namespace

double airy_ai(double x) {
    double a;
    airy_both(x, &a, nullptr);
    return a;
}

double airy_ai_prime(double x) {
    double ap;
    airy_both(x, nullptr, &ap);
    return ap;
}

// ------------------------------------------------------------ ai_gamma ----

ContourSpec default_ai_gamma_contour(double omega, double gamma_t) {
    ContourSpec c;
    c.kind = ContourSpec::Kind::ray_pair;
    c.shift = 0.5 * std::min(gamma_t - omega, 1.0);
    c.angle = pi / 6;
    c.n_nodes = 60;
    c.cutoff = 10.0;
    return c;
}

namespace {

// integrate exp(i z xi + i z^3/3) * R(z) over a straight segment [za, zb]
cd ai_gamma_segment(cd za, cd zb, double xi, double omega, double gamma_t,
                    int n_nodes) {
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
    int panels = std::max(2, (n_nodes + 9) / 10);
    cd acc(0.0);
    cd dz = (zb - za) / double(panels);
    for (int p = 0; p < panels; ++p) {
        cd a = za + double(p) * dz;
        for (int k = 0; k < 10; ++k) {
            cd z = a + 0.5 * dz * (gx[k] + 1.0);
            cd Z = (omega - cd(0, 1) * z) / gamma_t;
            cd lr = log_gamma(1.0 - Z) - log_gamma(1.0 + Z);
            cd e = std::exp(cd(0, 1) * z * xi + cd(0, 1) * z * z * z / 3.0 + lr);
            acc += gw[k] * 0.5 * dz * e;
        }
    }
    return acc;
}

} // namespace

double ai_gamma(double xi, double omega, double gamma_t, const ContourSpec& contour) {
    contour.validate("specfun.ai_gamma");
    if (gamma_t <= 0) fail("specfun.ai_gamma", "gamma_t must be > 0");
    double pole = gamma_t - omega;
    if (pole <= 0) fail("specfun.ai_gamma", "pole i(gamma_t-omega) not above the real axis");
    if (contour.kind != ContourSpec::Kind::circle &&
        std::abs(contour.shift - pole) < 1e-6)
        fail("specfun.ai_gamma", "contour-through-pole");
    if (contour.shift >= pole)
        fail("specfun.ai_gamma", "contour must pass below the pole");

    cd total(0.0);
    if (contour.kind == ContourSpec::Kind::horizontal_shift) {
        cd za(-contour.cutoff, contour.shift), zb(contour.cutoff, contour.shift);
        int n = std::max(contour.n_nodes,
                         int((std::abs(xi) + contour.cutoff * contour.cutoff) *
                             contour.cutoff * 0.8));
        total = ai_gamma_segment(za, zb, xi, omega, gamma_t, n);
    } else if (contour.kind == ContourSpec::Kind::ray_pair) {
        double delta = contour.shift;
        double t0 = 2.0 + std::sqrt(std::max(0.0, -xi));
        // ray length: |z|^3 sin(3 angle)/3 must beat |xi| |z| by ~45
        double tr = std::cbrt(3.0 * 45.0) + std::sqrt(std::abs(xi)) + 3.0;
        for (int it = 0; it < 4; ++it)
            tr = std::cbrt(3.0 * (45.0 + std::abs(xi) * tr) /
                           std::max(0.2, std::sin(3.0 * contour.angle)));
        cd jr(t0, delta), jl(-t0, delta);
        cd er = std::exp(cd(0, contour.angle));
        cd el = std::exp(cd(0, pi - contour.angle));
        // ~3 nodes per radian of accumulated phase
        double ph_mid = 2.0 * (t0 * std::abs(xi) + t0 * t0 * t0 / 3.0);
        double ph_ray = tr * (std::abs(xi) + (t0 + tr) * (t0 + tr)) / 2.0;
        int n_mid = std::max(contour.n_nodes, int(3.0 * ph_mid) + 32);
        int n_ray = std::max(contour.n_nodes, int(2.5 * ph_ray) + 32);
        total += ai_gamma_segment(jl, jr, xi, omega, gamma_t, n_mid);
        total += ai_gamma_segment(jr, jr + tr * er, xi, omega, gamma_t, n_ray);
        total += ai_gamma_segment(jl + tr * el, jl, xi, omega, gamma_t, n_ray);
    } else {
        fail("specfun.ai_gamma", "circle contour not applicable");
    }
    total /= 2 * pi;
    return total.real();
}

double ai_gamma(double xi, double omega, double gamma_t) {
    return ai_gamma(xi, omega, gamma_t, default_ai_gamma_contour(omega, gamma_t));
}

// ------------------------------------------------------------- q-series ----

cd q_pochhammer(cd a, double q, long n) {
    if (q < 0 || q >= 1.0) fail("specfun.q_pochhammer", "divergence: requires 0 <= q < 1");
    if (n == 0) return 1.0;
    cd prod(1.0);
    if (n > 0) {
        cd aq = a;
        for (long k = 0; k < n; ++k) {
            prod *= 1.0 - aq;
            aq *= q;
        }
        return prod;
    }
    // infinite product, adaptive truncation
    cd aq = a;
    for (long k = 0; k < 200000000L; ++k) {
        if (std::abs(aq) < 1e-15) break;
        prod *= 1.0 - aq;
        aq *= q;
    }
    return prod;
}

cd log_q_pochhammer_inf(cd a, double q) {
    if (q < 0 || q >= 1.0) fail("specfun.q_pochhammer", "divergence: requires 0 <= q < 1");
    cd s(0.0);
    cd aq = a;
    for (long k = 0; k < 200000000L; ++k) {
        if (std::abs(aq) < 1e-15) break;
        s += std::log(1.0 - aq);
        aq *= q;
    }
    return s;
}

double q_gamma(double x, double q) {
    // (1-q)^{1-x} (q;q)_inf / (q^x;q)_inf
    double lq = std::log(q);
    cd num = log_q_pochhammer_inf(cd(q), q);
    cd den = log_q_pochhammer_inf(cd(std::exp(x * lq)), q);
    return std::exp((1.0 - x) * std::log(1.0 - q) + num.real() - den.real());
}

double q_exp(double x, double q) {
    return 1.0 / q_pochhammer(cd((1.0 - q) * x), q, -1).real();
}

} // namespace oy::specfun
