#pragma once
// Bessel/Hankel evaluation for real orders 0..L and real or complex
// arguments, plus the Helmholtz fundamental solution phi0 and its
// Kussmaul-Martensen log splitting.

#include <complex>
#include <vector>

namespace ebie::sf {

using cxd = std::complex<double>;

/// J_0..J_L for real x >= 0 (downward recurrence with Neumann-series
/// normalization below the order, upward evaluation otherwise).
std::vector<double> bessel_j_seq(int L, double x);

/// J_0..J_L for complex z (Miller's algorithm).
std::vector<cxd> bessel_j_seq_cx(int L, cxd z);

/// Y_0..Y_L for real x > 0.
std::vector<double> bessel_y_seq(int L, double x);

/// H^(1)_0..H^(1)_L for z != 0, Im z >= 0.  Power series with explicit
/// log term for small |z|, asymptotic expansion for large |z|, orders by
/// forward recurrence.  Throws std::domain_error on z == 0.
std::vector<cxd> hankel1_seq(int L, cxd z);

/// Splitting data H_nu = J_nu + i[(2/pi) ln(z/2) J_nu + G_nu].
/// Fills J[0..maxnu], G[0..maxnu]. Series-based; |z| should be moderate.
void hankel_parts(int maxnu, cxd z, cxd* J, cxd* G);

/// Regime threshold between series and asymptotic evaluation.
double hankel_switch_radius(int L);

struct Phi0Split {
    cxd value;           // phi0(k r) = (i/4) H_0^(1)(k r)
    cxd log_coefficient; // multiplies log(4 sin^2((t-tau)/2))
    cxd smooth;          // remainder, finite on the diagonal
};

/// Split of phi0(k r) in parameter space.  q = r^2 / (4 sin^2((t-tau)/2)),
/// continued by |x'(t)|^2 on the diagonal (where r must be passed as 0).
Phi0Split phi0_split(cxd k, double r, double q);

} // namespace ebie::sf
