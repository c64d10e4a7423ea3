#pragma once

#include "oy/common.hpp"

namespace oy::fredholm {

struct QuadratureGrid {
    std::vector<double> nodes;   // sorted, strictly inside (lo, hi)
    std::vector<double> weights; // positive, sum to hi - lo
    double lo = 0, hi = 0;
    int order = 0;
};

// Gauss-Legendre rule mapped to [lo, hi].
QuadratureGrid build_grid(double lo, double hi, int order);
// Composite rule: n_panels equal panels, nodes_per_panel-point Gauss each.
QuadratureGrid build_composite_grid(double lo, double hi, int n_panels,
                                    int nodes_per_panel);
// Raw Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

struct DiscretizedOperator {
    QuadratureGrid grid;
    std::vector<cd> matrix;    // row-major order x order, K(x_i, x_j)
    std::vector<cd> prefactor; // f(x_i)

    cd& at(int i, int j) { return matrix[size_t(i) * grid.order + j]; }
    const cd& at(int i, int j) const { return matrix[size_t(i) * grid.order + j]; }
};

// det(1 - f K) by LU of the balanced matrix sqrt(w_i) f_i K_ij sqrt(w_j).
cd fredholm_det_complex(const DiscretizedOperator& op);
double fredholm_det(const DiscretizedOperator& op);

// Solve (1 - f K) h = g on the grid nodes.
std::vector<cd> resolvent_apply(const DiscretizedOperator& op,
                                const std::vector<cd>& g);

// det(1 - A - w (x) v) = det(1 - A) * (1 - <v, (1-A)^{-1} w>).
// Returns both factors; inner products use the grid weights.
std::pair<double, double> det_rank_one_split(const DiscretizedOperator& op,
                                             const std::vector<cd>& w,
                                             const std::vector<cd>& v);

// ------------------------------------------------- dense linear algebra ----
// In-place LU with partial pivoting; returns determinant. n x n row-major.
cd lu_det(std::vector<cd>& a, int n);
// Solve A x = b with LU (A destroyed). Throws on near-singular pivots.
void lu_solve(std::vector<cd> a, int n, std::vector<cd>& b);
cd det_raw(std::vector<cd> a, int n);

} // namespace oy::fredholm
