#pragma once

#include "oy/common.hpp"
#include "oy/jet.hpp"

namespace oy::specfun {

inline constexpr double euler_gamma = 0.577215664901532860606512090082;
inline constexpr double zeta3 = 1.202056903159594285399738161511;

// ---------------------------------------------------------------- gamma ----
// Complex gamma / log-gamma. Lanczos for moderate |z|, Stirling beyond,
// reflection for Re z < 0.5. exp(log_gamma(z)) == gamma(z) exactly as
// functions; the log branch is whatever the formula produces.
cd log_gamma(cd z);
cd gamma(cd z);
double log_gamma(double x); // x > 0
double gamma(double x);

// Test hook: corrupts one Lanczos coefficient so identity checks fail.
void set_gamma_fault(bool on);

// ------------------------------------------------------------- digamma ----
cd digamma(cd z);
double digamma(double x);
// n-th derivative of digamma, n >= 1, real x > 0.
double polygamma(int n, double x);
// Hurwitz zeta for integer s >= 2, real x > 0 (Euler-Maclaurin).
double hurwitz_zeta(int s, double x);
double riemann_zeta(int s);

// log Gamma(x0 + v) as a jet about v = 0; x0 > 0 real, or x0 == 0 handled
// by the caller via Gamma(v) = Gamma(1+v)/v.
Jet log_gamma_jet(double x0, int len);

// Regularized incomplete gamma P(a,x) (lower) and Q(a,x) = 1 - P.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// ---------------------------------------------------------------- airy ----
// Absolute error <= ~1e-10 on [-20, 200].
double airy_ai(double x);
double airy_ai_prime(double x);

// ------------------------------------------------------------- contour ----
struct ContourSpec {
    enum class Kind { horizontal_shift, ray_pair, circle };
    Kind kind = Kind::ray_pair;
    double shift = 0.0;   // height of the horizontal part above the real axis
    double angle = pi / 6; // ray angle measured from the positive real axis
    double radius = 0.0;  // for circle contours
    int n_nodes = 48;     // quadrature nodes per segment
    double cutoff = 8.0;  // parameter range truncation

    void validate(const std::string& where) const {
        if (n_nodes < 8) fail(where, "contour n_nodes must be >= 8");
        if (cutoff <= 0) fail(where, "contour cutoff must be > 0");
    }
};

// Deformed Airy function: (1/2pi) int over a contour below the pole
// i(gamma_t - omega) of exp(i z xi + i z^3/3) * G(1-(omega-iz)/gamma_t)
//                                             / G(1+(omega-iz)/gamma_t).
double ai_gamma(double xi, double omega, double gamma_t, const ContourSpec& contour);
double ai_gamma(double xi, double omega, double gamma_t);
ContourSpec default_ai_gamma_contour(double omega, double gamma_t);

// ------------------------------------------------------------- q-series ----
// (a; q)_n with n >= 0, or n < 0 meaning the infinite product. Infinite
// products truncate adaptively when the running factor is within 1e-15 of 1.
cd q_pochhammer(cd a, double q, long n);
// log of the infinite product (principal-branch sum of log(1 - a q^k)).
cd log_q_pochhammer_inf(cd a, double q);
double q_gamma(double x, double q);
double q_exp(double x, double q);

} // namespace oy::specfun
