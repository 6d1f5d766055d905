#pragma once
// Product quadratures on the 2n-point periodic trigonometric grid:
// Kussmaul-Martensen log rule, Hilbert-transform (Cauchy) rule, half-grid
// shifted source rules, Fejer weights, and Alpert endpoint-corrected rules.

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace ebie::quad {

using Eigen::MatrixXd;
using cxd = std::complex<double>;

/// R_j(t) weight of the Kussmaul-Martensen rule for the factor
/// log(4 sin^2((t - tau)/2)); exact on trigonometric polynomials of
/// degree <= n when applied at arbitrary target t against the 2n-grid.
double km_weight(int n, double t_minus_tj);

/// Weight of the principal-value rule for the factor cot((tau - t)/2).
double hilbert_weight(int n, double t_minus_tj);

struct KmWeights {
    int n;
    MatrixXd R; // (2n) x (2n), R(i,j) = R_j(t_i)
};
KmWeights km_weights(int n);

/// (2n) x (2n) matrix H with H(i,j) f(t_j) ~ p.v. int cot((tau-t_i)/2) f(tau) dtau.
MatrixXd hilbert_matrix(int n);

/// Half-grid shifted machinery: interpolation of grid data to t_j + h/2 and
/// product weights evaluated at sources shifted by h/2.
struct ShiftedRules {
    MatrixXd interp;   // (2n) x (2n): values at t_j + h/2 from nodal values
    MatrixXd log_w;    // weights for log(4 sin^2((t_i - tau)/2)) at shifted sources
    MatrixXd cot_w;    // weights for cot((tau - t_i)/2) at shifted sources
    MatrixXd trap_w;   // plain trapezoid at shifted sources (h per point)
};
ShiftedRules hilbert_and_shift_rules(int n);

/// Spectral differentiation d/dt on the 2n periodic grid.
MatrixXd trig_diff_matrix(int n);

/// Trigonometric interpolation from the 2n grid to arbitrary targets.
MatrixXd trig_interp_matrix(int n, const std::vector<double>& targets);

/// Fejer (first kind) weights for nodes cos((2j-1)pi/(2 n_r)) on [-1, 1].
std::vector<double> fejer_weights(int n_r);

struct AlpertRule {
    int order = 0; // 3 or 10
    int a = 0;
    int m = 0;
    std::vector<double> chi;
    std::vector<double> w;
};

/// Load the shipped correction tables (orders 3 and 10); verifies the
/// embedded checksum. `path` defaults to the checked-in data file.
AlpertRule alpert_rule(int order, const std::string& path = "");

/// Composite Alpert value of int_0^{2pi} k(t_i, tau) sigma(tau) dtau for a
/// log-singular kernel; sigma given at the 2n grid nodes, off-grid values
/// by one-sided Lagrange interpolation of order m+3.
cxd apply_alpert(const AlpertRule& rule, const std::function<cxd(double, double)>& kernel,
                 const Eigen::VectorXcd& sigma, int i, int n);

/// Row weights of the composite rule: out(j) such that the rule value is
/// sum_j out(j) k_vals(j) where kernel columns follow sources; used by the
/// operator assembly. `kernel` is evaluated at the off-grid points.
struct AlpertRowExpansion {
    // grid part: column j gets coefficient grid_w(j) * k(t_i, t_j)
    Eigen::VectorXd grid_w;
    // correction part: for each off-grid source s: kernel point tau_s,
    // weight w_s, and the Lagrange stencil (columns, coefficients)
    struct OffGrid {
        double tau;
        double weight;
        std::vector<int> cols;
        std::vector<double> coef;
    };
    std::vector<OffGrid> off;
};
AlpertRowExpansion alpert_row(const AlpertRule& rule, int i, int n);

} // namespace ebie::quad
