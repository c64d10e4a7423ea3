#pragma once

#include "oy/common.hpp"

#include <functional>

namespace oy::laplace {

// Generating function G(u) = <e^{-u e^Y}> of a real random variable Y.
// eval must be callable for Re u > 0; boundary_im, when provided, returns
// Im G(-e^{-w} + i0) on the negative-axis cut.
struct GeneratingFunction {
    std::function<cd(cd)> eval;
    std::function<double(double)> boundary_im; // argument is w
    enum class Analyticity { right_half_plane, cut_plane };
    Analyticity analyticity = Analyticity::right_half_plane;
    std::string name;
    // small-u model G(u) ~ c0 + c_log * (-log u); c_log = 0 for probability laws
    double c0 = 1.0;
    double c_log = 0.0;
};

// --------------------------------------------------------------- routes ----
// (1/2 pi i) int_{delta+i[-T,T]} du/u e^{u e^y} G(u)
double bromwich_cdf(const GeneratingFunction& G, double y, double delta, double T);

// Mellin-moment route; needs G on the positive real axis only.
double mellin_cdf(const GeneratingFunction& G, double y, double delta);
double mellin_density(const GeneratingFunction& G, double y, double delta);
cd fourier_of_cdf(const GeneratingFunction& G, cd xi);

// Gumbel-convolution route from boundary values on the cut.
double boundary_cdf(const GeneratingFunction& G, double y);

// --------------------------------------------------- gamma deconvolution ----
// Y = Y0 + chi with chi ~ -log Gamma(nu); recovers F0(y) = P[Y0 <= y].
enum class DeconvMethod { fourier, series, generating };
double deconvolve_gamma(const GeneratingFunction& G, double nu, double y,
                        DeconvMethod method);

// Taylor coefficients a_n of 1/Gamma(nu0 + x) about x = 0.
std::vector<double> recip_gamma_taylor(double nu0, int nmax);
// Independent Cauchy-integral evaluation of the same coefficients.
std::vector<double> recip_gamma_taylor_cauchy(double nu0, int nmax, double radius);

// ------------------------------------------------------- hat-G pipeline ----
// Shared machinery for distribution functions defined through a hat-G pair:
//   on_positive_axis(u):  hatG(u), u > 0, hatG ~ -log u + const as u -> 0
//   boundary_weight(w):   H(w) = (1/pi) Im hatG(-e^{-w} - i0), H -> 1 (w -> inf)
// Two primary reconstructions, both driven by the Mellin moments of hatG:
//   cdf_xi      the exact 1/(Gamma(xi) Gamma(1+xi)) kernel
//   cdf_series  the reciprocal-gamma derivative series, with F_hat
//               derivatives obtained by xi-multiplication in the Fourier
//               representation (never by numeric differencing)
// The boundary weight, when supplied, gives a third reconstruction through
// the Gumbel-convolution representation of F_hat.
struct HatGFunction {
    std::function<double(double)> on_positive_axis;
    std::function<double(double)> boundary_weight;
    // optional: hatG(r e^{i 3pi/4}) for r > 0; lets the xi-route track the
    // exponential decay of the Mellin moment far beyond the real-axis
    // roundoff floor
    std::function<cd(double)> on_ray;
};

struct PipelineOptions {
    double delta = 0.5;     // xi-line abscissa
    double delta_max = 9.0; // cap when shifting the line for derivatives
    double t_max = 160.0;   // xi-line truncation
    int series_nmax = 24;   // derivative-series cap
    double s_lo = -45.0;    // log-u table range (lower)
    double s_hi = 60.0;     // log-u table range (upper, adaptive probe cap)
    double panel = 0.3;     // log-u table panel width
    double w_pad_lo = 36.0; // H-table reach below min(y)
    double w_pad_hi = 8.0;  // H-table reach above max(y)
    double w_panel = 0.6;
};

class HatGPipeline {
  public:
    HatGPipeline(const HatGFunction& f, double y_min, double y_max,
                 const PipelineOptions& opt = {});

    double cdf_xi(double y) const;      // Mellin route
    double cdf_series(double y) const;  // derivative-series route

    // n-th derivative of F_hat (n >= 1) by xi-multiplication
    double fhat_derivative(int n, double y) const;
    // same quantity from the Gumbel convolution of the boundary weight
    double fhat_derivative_boundary(int n, double y) const;
    bool has_boundary() const { return !h_values_.empty(); }
    // boundary-weight reconstruction (valid when the model satisfies the
    // principal-value/delta split identity)
    double cdf_boundary_series(double y) const;

  private:
    PipelineOptions opt_;
    // log-u table of hatG
    std::vector<double> s_nodes_, s_weights_, g_values_;
    std::vector<cd> gray_values_; // samples along arg u = 3pi/4, if available
    bool has_ray_ = false;
    double c_log_const_ = 0.0; // hatG(e^s) ~ -s + c as s -> -inf
    double s_tail_lo_ = 0.0;
    // H table
    std::vector<double> w_nodes_, w_weights_, h_values_;
    std::vector<double> series_coef_;

    cd mellin_moment(cd xi) const;
    cd mellin_moment_ray(cd xi) const;
};

// Oscillatory helper: integrate f over [a, b] with panels sized by `period`,
// Gauss-Legendre inside each panel.
double integrate_oscillatory(const std::function<double(double)>& f, double a,
                             double b, double period);

} // namespace oy::laplace
