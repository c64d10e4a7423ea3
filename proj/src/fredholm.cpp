#include "oy/fredholm.hpp"

#include <cmath>
#include <limits>

namespace oy::fredholm {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration on P_n, starting from the Chebyshev-like guess
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0, z1;
        do {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            z1 = z;
            z = z1 - p1 / pp;
        } while (std::abs(z - z1) > 1e-15);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

QuadratureGrid build_grid(double lo, double hi, int order) {
    if (!(lo < hi)) fail("fredholm.build_grid", "invalid-range: requires lo < hi");
    if (order < 2) fail("fredholm.build_grid", "invalid-range: order too small");
    std::vector<double> x, w;
    gauss_legendre(order, x, w);
    QuadratureGrid g;
    g.lo = lo;
    g.hi = hi;
    g.order = order;
    g.nodes.resize(order);
    g.weights.resize(order);
    double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    for (int i = 0; i < order; ++i) {
        g.nodes[i] = c + h * x[i];
        g.weights[i] = h * w[i];
    }
    return g;
}

QuadratureGrid build_composite_grid(double lo, double hi, int n_panels,
                                    int nodes_per_panel) {
    if (!(lo < hi)) fail("fredholm.build_grid", "invalid-range: requires lo < hi");
    std::vector<double> x, w;
    gauss_legendre(nodes_per_panel, x, w);
    QuadratureGrid g;
    g.lo = lo;
    g.hi = hi;
    g.order = n_panels * nodes_per_panel;
    g.nodes.reserve(g.order);
    g.weights.reserve(g.order);
    double hp = (hi - lo) / n_panels;
    for (int p = 0; p < n_panels; ++p) {
        double c = lo + (p + 0.5) * hp, h = 0.5 * hp;
        for (int k = 0; k < nodes_per_panel; ++k) {
            g.nodes.push_back(c + h * x[k]);
            g.weights.push_back(h * w[k]);
        }
    }
    return g;
}

cd lu_det(std::vector<cd>& a, int n) {
    cd det(1.0);
    std::vector<int> piv(n);
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(a[size_t(k) * n + k]);
        for (int i = k + 1; i < n; ++i) {
            double v = std::abs(a[size_t(i) * n + k]);
            if (v > best) {
                best = v;
                p = i;
            }
        }
        piv[k] = p;
        if (p != k) {
            for (int j = 0; j < n; ++j)
                std::swap(a[size_t(k) * n + j], a[size_t(p) * n + j]);
            det = -det;
        }
        cd pivot = a[size_t(k) * n + k];
        det *= pivot;
        if (pivot == cd(0.0)) return cd(0.0);
        for (int i = k + 1; i < n; ++i) {
            cd f = a[size_t(i) * n + k] / pivot;
            a[size_t(i) * n + k] = f;
            if (f != cd(0.0))
                for (int j = k + 1; j < n; ++j)
                    a[size_t(i) * n + j] -= f * a[size_t(k) * n + j];
        }
    }
    // stash pivots in implicit form; callers needing solves use lu_solve
    return det;
}

void lu_solve(std::vector<cd> a, int n, std::vector<cd>& b) {
    std::vector<int> piv(n);
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(a[size_t(k) * n + k]);
        for (int i = k + 1; i < n; ++i) {
            double v = std::abs(a[size_t(i) * n + k]);
            if (v > best) {
                best = v;
                p = i;
            }
        }
        piv[k] = p;
        if (p != k)
            for (int j = 0; j < n; ++j)
                std::swap(a[size_t(k) * n + j], a[size_t(p) * n + j]);
        cd pivot = a[size_t(k) * n + k];
        if (std::abs(pivot) < 1e-300)
            fail("fredholm.resolvent_apply", "near-singular: zero pivot");
        for (int i = k + 1; i < n; ++i) {
            cd f = a[size_t(i) * n + k] / pivot;
            a[size_t(i) * n + k] = f;
            for (int j = k + 1; j < n; ++j)
                a[size_t(i) * n + j] -= f * a[size_t(k) * n + j];
        }
    }
    for (int k = 0; k < n; ++k) {
        if (piv[k] != k) std::swap(b[k], b[piv[k]]);
        for (int i = k + 1; i < n; ++i) b[i] -= a[size_t(i) * n + k] * b[k];
    }
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) b[i] -= a[size_t(i) * n + j] * b[j];
        b[i] /= a[size_t(i) * n + i];
    }
}

cd det_raw(std::vector<cd> a, int n) { return lu_det(a, n); }

namespace {

void check_finite(const DiscretizedOperator& op, const char* where) {
    for (const cd& v : op.matrix)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            fail(where, "non-finite-entry in kernel matrix");
    for (const cd& v : op.prefactor)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            fail(where, "non-finite-entry in prefactor");
}

// balanced matrix of 1 - f K: delta_ij - sqrt(w_i) f_i K_ij sqrt(w_j)
std::vector<cd> balanced_one_minus(const DiscretizedOperator& op) {
    int n = op.grid.order;
    std::vector<double> sw(n);
    for (int i = 0; i < n; ++i) sw[i] = std::sqrt(op.grid.weights[i]);
    std::vector<cd> a(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[size_t(i) * n + j] =
                (i == j ? cd(1.0) : cd(0.0)) -
                sw[i] * op.prefactor[i] * op.at(i, j) * sw[j];
    return a;
}

} // namespace

cd fredholm_det_complex(const DiscretizedOperator& op) {
    check_finite(op, "fredholm.fredholm_det");
    std::vector<cd> a = balanced_one_minus(op);
    return lu_det(a, op.grid.order);
}

double fredholm_det(const DiscretizedOperator& op) {
    cd d = fredholm_det_complex(op);
    if (std::abs(d.imag()) > 1e-9 * std::max(1.0, std::abs(d.real())))
        fail("fredholm.fredholm_det", "imaginary residue exceeds 1e-9");
    return d.real();
}

std::vector<cd> resolvent_apply(const DiscretizedOperator& op,
                                const std::vector<cd>& g) {
    check_finite(op, "fredholm.resolvent_apply");
    int n = op.grid.order;
    cd d = fredholm_det_complex(op);
    if (std::abs(d) <= 1e-12)
        fail("fredholm.resolvent_apply", "near-singular: |det| <= 1e-12");
    // (1 - f K D_w) h = g in node space
    std::vector<cd> a(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[size_t(i) * n + j] = (i == j ? cd(1.0) : cd(0.0)) -
                                   op.prefactor[i] * op.at(i, j) * op.grid.weights[j];
    std::vector<cd> h = g;
    lu_solve(std::move(a), n, h);
    return h;
}

std::pair<double, double> det_rank_one_split(const DiscretizedOperator& op,
                                             const std::vector<cd>& w,
                                             const std::vector<cd>& v) {
    int n = op.grid.order;
    cd detA = fredholm_det_complex(op);
    if (std::abs(detA) <= 1e-12)
        fail("fredholm.det_rank_one_split", "near-singular: |det| <= 1e-12");
    std::vector<cd> h = resolvent_apply(op, w);
    cd ip(0.0);
    for (int i = 0; i < n; ++i) ip += v[i] * op.grid.weights[i] * h[i];
    cd bracket = cd(1.0) - ip;
    return {detA.real(), bracket.real()};
}

} // namespace oy::fredholm
